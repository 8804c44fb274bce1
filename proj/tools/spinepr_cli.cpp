#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "spinepr/report.hpp"

using namespace spinepr;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Options {
  int two_j = 1;
  std::optional<int> two_j_min;
  std::optional<int> two_j_max;
  std::optional<int> two_m;
  std::string protocol = "special";
  int bits = 256;
  int max_bits = 16384;
  int points = 400;
  int grid = 2048;
  std::optional<double> cos_theta;
  std::optional<double> theta_deg;
  std::optional<double> window_lo;
  std::optional<double> window_hi;
  std::string out = "-";
  std::string format;
  std::string kind = "wigner";
  std::string suite = "all";
  std::string what = "R";
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  file << text;
  if (!file.flush()) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

std::string render(const CsvTable& table, const std::string& format) {
  if (format == "json") {
    return table.to_json().dump(2) + "\n";
  }
  return table.str();
}

// Internal representation is always the cosine; whole multiples of 90
// degrees are exact.
CertifiedReal cosine_from(const Options& o, mpfr_prec_t bits) {
  if (o.theta_deg) {
    const double deg = *o.theta_deg;
    if (!(deg >= 0.0 && deg <= 180.0)) {
      throw std::invalid_argument("--theta-deg must lie in [0, 180]");
    }
    if (deg == 0.0) return CertifiedReal(1, bits);
    if (deg == 90.0) return CertifiedReal(0, bits);
    if (deg == 180.0) return CertifiedReal(-1, bits);
    CertifiedReal theta = CertifiedReal::from_double(deg, bits) * CertifiedReal::pi(bits);
    theta /= 180L;
    return cos(theta);
  }
  const double c = o.cos_theta.value_or(1.0);
  if (!(c >= -1.0 && c <= 1.0)) {
    throw std::invalid_argument("--cos-theta must lie in [-1, 1]");
  }
  return CertifiedReal::from_double(c, bits);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-j EPR-Bohm correlations, Wigner functions and detector-error protocols"};
  app.require_subcommand(1);
  Options o;

  auto add_precision = [&](CLI::App* cmd) {
    cmd->add_option("--bits", o.bits, "Working precision in bits")->check(CLI::Range(64, 1 << 20));
    cmd->add_option("--max-bits", o.max_bits, "Escalation ceiling in bits")->check(CLI::Range(64, 1 << 20));
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output file, '-' for stdout");
    cmd->add_option("--format", o.format, "Output format (figure, table: csv; certify, verify: json)")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_angle = [&](CLI::App* cmd) {
    auto* c = cmd->add_option("--cos-theta", o.cos_theta, "cos(theta) between the axes");
    auto* t = cmd->add_option("--theta-deg", o.theta_deg, "Angle between the axes in degrees");
    c->excludes(t);
  };
  const std::string protocols = "special|trivial|oversufficient|binned";
  auto protocol_check = CLI::IsMember({"special", "trivial", "oversufficient", "binned"});

  auto* figure = app.add_subcommand("figure", "Emit figure data as (x, value, radius)");
  figure->add_option("--kind", o.kind, "wigner|wigner-enlarged|smoothed-wigner|one-axis|h-function")
      ->check(CLI::IsMember({"wigner", "wigner-enlarged", "smoothed-wigner", "one-axis", "h-function"}));
  figure->add_option("--two-j", o.two_j, "2j")->check(CLI::NonNegativeNumber);
  figure->add_option("--two-m", o.two_m, "2m for one-axis and h-function (default 2j)");
  figure->add_option("--points", o.points, "Number of x points")->check(CLI::Range(2, 10000000));
  figure->add_option("--window-lo", o.window_lo, "Lower end of the x window");
  figure->add_option("--window-hi", o.window_hi, "Upper end of the x window");
  add_precision(figure);

  auto* certify = app.add_subcommand("certify", "Positivity certificates across a range of j");
  certify->add_option("--protocol", o.protocol, protocols)->check(protocol_check);
  certify->add_option("--two-j", o.two_j, "Single 2j (ignored when a range is given)")->check(CLI::NonNegativeNumber);
  certify->add_option("--two-j-min", o.two_j_min, "First 2j of the range (default 0)")->check(CLI::NonNegativeNumber);
  certify->add_option("--two-j-max", o.two_j_max, "Last 2j of the range")->check(CLI::NonNegativeNumber);
  add_precision(certify);

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", o.suite, "basis|distributions|wigner|protocols|all")
      ->check(CLI::IsMember({"basis", "distributions", "wigner", "protocols", "all"}));
  verify->add_option("--two-j-max", o.two_j_max, "Largest 2j checked")->check(CLI::PositiveNumber);
  verify->add_option("--grid", o.grid, "Sufficiency scan grid")->check(CLI::Range(100, 1000000));
  add_precision(verify);

  auto* table = app.add_subcommand("table", "Emit R, the joint distribution, or a spectrum");
  table->add_option("--what", o.what, "R|joint|spectrum")->check(CLI::IsMember({"R", "joint", "spectrum"}));
  table->add_option("--protocol", o.protocol, protocols)->check(protocol_check);
  table->add_option("--two-j", o.two_j, "2j")->check(CLI::NonNegativeNumber);
  add_angle(table);
  add_precision(table);

  for (auto* cmd : {figure, certify, verify, table}) {
    add_output(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (o.max_bits < o.bits) {
      o.max_bits = o.bits;
    }
    const PrecisionContext ctx(o.bits, o.max_bits);
    const auto start = std::chrono::steady_clock::now();
    if (o.format.empty()) {
      o.format = (*figure || *table) ? "csv" : "json";
    }

    if (*figure) {
      FigureRequest req{parse_figure_kind(o.kind), o.two_j, o.two_m, o.window_lo, o.window_hi, o.points};
      write_output(o.out, render(figure_table(req, ctx), o.format));
      return 0;
    }
    if (*table) {
      TableRequest req{parse_table_kind(o.what), parse_protocol(o.protocol), o.two_j, cosine_from(o, ctx.bits())};
      write_output(o.out, render(object_table(req, ctx), o.format));
      return 0;
    }
    if (*certify) {
      SpinRange range{o.two_j, o.two_j};
      if (o.two_j_min || o.two_j_max) {
        range.min = o.two_j_min.value_or(0);
        range.max = o.two_j_max.value_or(range.min);
      }
      RunReport report = certify_report(parse_protocol(o.protocol), range, ctx);
      stamp(report, seconds_since(start));
      write_output(o.out, o.format == "csv" ? certify_csv(report).str() : report.dump());
      return report.failed ? kExitViolation : 0;
    }
    if (*verify) {
      RunReport report = verify_report(parse_suite(o.suite), o.two_j_max.value_or(o.two_j), ctx, o.grid);
      stamp(report, seconds_since(start));
      write_output(o.out, o.format == "csv" ? verify_csv(report).str() : report.dump());
      return report.failed ? kExitViolation : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
