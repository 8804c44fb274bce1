#include "spinepr/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "spinepr/epr.hpp"
#include "spinepr/numerics/orthopoly.hpp"
#include "spinepr/protocols.hpp"
#include "spinepr/spin_basis.hpp"
#include "spinepr/wigner.hpp"

namespace spinepr {

namespace {

CertifiedReal exact_one(mpfr_prec_t bits) { return CertifiedReal(1, bits); }

CertifiedReal rational(long n, long d, mpfr_prec_t bits) {
  return CertifiedReal::from_rational(ExactRational(n, d), bits);
}

// One invariant: a stream of ball comparisons or boolean predicates, keeping
// the worst deviation and the first few violations with their locations.
class Invariant {
 public:
  Invariant(std::string suite, std::string name) : suite_(std::move(suite)), name_(std::move(name)) {}

  void compare(const CertifiedReal& got, const CertifiedReal& expected, const Json& where) {
    ++checks_;
    max_deviation_ = std::max(max_deviation_, mid_distance(got, expected));
    max_radius_ = std::max(max_radius_, combined_radius(got, expected));
    if (!overlaps(got, expected)) {
      fail(where);
    }
  }

  void expect(bool ok, const Json& where) {
    ++checks_;
    if (!ok) {
      fail(where);
    }
  }

  bool passed() const { return violations_ == 0; }

  Json to_json() const {
    Json out;
    out["suite"] = suite_;
    out["invariant"] = name_;
    out["checks"] = checks_;
    out["violations"] = violations_;
    out["max_deviation"] = max_deviation_;
    out["max_radius"] = max_radius_;
    out["passed"] = passed();
    out["first_violations"] = first_;
    return out;
  }

 private:
  void fail(const Json& where) {
    ++violations_;
    if (first_.size() < 10) {
      first_.push_back(where);
    }
  }

  std::string suite_;
  std::string name_;
  long checks_ = 0;
  long violations_ = 0;
  double max_deviation_ = 0.0;
  double max_radius_ = 0.0;
  Json first_ = Json::array();
};

Json at(int two_j) { return Json{{"j", format_half(two_j)}}; }

const std::vector<double>& probe_cosines() {
  static const std::vector<double> values{-0.7, 0.1, 0.55};
  return values;
}

void basis_suite(int two_j_max, const PrecisionContext& ctx, std::vector<Invariant>& out) {
  const mpfr_prec_t bits = ctx.bits();
  Invariant ortho("basis", "orthonormality");
  Invariant complete("basis", "completeness");
  Invariant top("basis", "f_l(j) = sqrt(2l+1) aQ/aW");
  Invariant spectral("basis", "F spectral representation");
  Invariant stochastic("basis", "F doubly stochastic");
  for (int two_j = 0; two_j <= two_j_max; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    const auto lad = ladder(spin, ctx);
    const int d = spin.dimension();
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        CertifiedReal over_m(bits);
        CertifiedReal over_l(bits);
        for (int k = 0; k < d; ++k) {
          over_m.add_product(basis.f(a, k), basis.f(b, k));
          over_l.add_product(basis.f(k, a), basis.f(k, b));
        }
        over_m /= static_cast<long>(d);
        over_l /= static_cast<long>(d);
        const CertifiedReal delta(a == b ? 1 : 0, bits);
        ortho.compare(over_m, delta, Json{{"j", format_half(two_j)}, {"l", a}, {"l_prime", b}});
        complete.compare(over_l, delta,
                         Json{{"j", format_half(two_j)}, {"m", format_half(spin.two_m(a))},
                              {"m_prime", format_half(spin.two_m(b))}});
      }
    }
    for (int l = 0; l < d; ++l) {
      CertifiedReal expected = CertifiedReal::signed_sqrt(1, ExactRational(2 * l + 1), bits);
      expected *= CertifiedReal::from_rational(lad.q[l], bits);
      expected /= lad.w[l];
      top.compare(basis.f(l, d - 1), expected, Json{{"j", format_half(two_j)}, {"l", l}});
    }
    for (double c : probe_cosines()) {
      const CertifiedReal x = CertifiedReal::from_double(c, bits);
      const FMatrix direct = f_matrix(spin, x, ctx);
      const FMatrix spec = f_matrix_spectral(basis, x);
      for (int a = 0; a < d; ++a) {
        CertifiedReal row(bits);
        CertifiedReal col(bits);
        for (int b = 0; b < d; ++b) {
          spectral.compare(direct(a, b), spec(a, b),
                           Json{{"j", format_half(two_j)}, {"cos_theta", c}, {"m", format_half(spin.two_m(a))},
                                {"m_prime", format_half(spin.two_m(b))}});
          row += direct(a, b);
          col += direct(b, a);
        }
        stochastic.compare(row, exact_one(bits), Json{{"j", format_half(two_j)}, {"cos_theta", c}, {"row", a}});
        stochastic.compare(col, exact_one(bits), Json{{"j", format_half(two_j)}, {"cos_theta", c}, {"column", a}});
      }
    }
  }
  for (auto* inv : {&ortho, &complete, &top, &spectral, &stochastic}) {
    out.push_back(std::move(*inv));
  }
}

void distributions_suite(int two_j_max, const PrecisionContext& ctx, std::vector<Invariant>& out) {
  const mpfr_prec_t bits = ctx.bits();
  Invariant direct_factorized("distributions", "joint_direct = joint_factorized");
  Invariant direct_quadrature("distributions", "joint_direct = joint_quadrature");
  Invariant normalization("distributions", "normalization and marginals");
  Invariant completeness("distributions", "one-axis completeness");
  Invariant correlation_check("distributions", "correlation = -j(j+1) cos / 3");
  for (int two_j = 0; two_j <= two_j_max; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    const int d = spin.dimension();
    const CertifiedReal inv_d = rational(1, d, bits);
    for (double c : probe_cosines()) {
      const CertifiedReal x = CertifiedReal::from_double(c, bits);
      const auto direct = joint_direct(spin, x, ctx);
      const auto factorized = joint_factorized(basis, x);
      const auto quad = joint_quadrature(basis, x, static_cast<unsigned>(d));
      direct_quadrature.expect(!quad.under_resolved, Json{{"j", format_half(two_j)}, {"cos_theta", c}});
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          const Json where{{"j", format_half(two_j)}, {"cos_theta", c}, {"m1", format_half(spin.two_m(a))},
                           {"m2", format_half(spin.two_m(b))}};
          direct_factorized.compare(direct(a, b), factorized(a, b), where);
          direct_quadrature.compare(direct(a, b), quad.distribution(a, b), where);
        }
        normalization.compare(factorized.first_marginal(a), inv_d, Json{{"j", format_half(two_j)}, {"m1", a}});
        normalization.compare(factorized.second_marginal(a), inv_d, Json{{"j", format_half(two_j)}, {"m2", a}});
      }
      normalization.compare(direct.total(), exact_one(bits), Json{{"j", format_half(two_j)}, {"cos_theta", c}});
      const CertifiedReal expected =
          -CertifiedReal::from_rational(ExactRational(long{two_j} * (two_j + 2), 12), bits) * x;
      correlation_check.compare(correlation(direct, nullptr), expected, Json{{"j", format_half(two_j)}, {"cos_theta", c}});
    }
    for (int i = 0; i < 11; ++i) {
      const double c = (2 * i - 10) / 10.0;
      CertifiedReal sum(bits);
      for (const auto& v : one_axis_all(basis, CertifiedReal::from_double(c, bits))) {
        sum += v;
      }
      completeness.compare(sum, exact_one(bits), Json{{"j", format_half(two_j)}, {"cos_alpha", c}});
    }
  }
  for (auto* inv : {&direct_factorized, &direct_quadrature, &normalization, &completeness, &correlation_check}) {
    out.push_back(std::move(*inv));
  }
}

void wigner_suite(int two_j_max, const PrecisionContext& ctx, std::vector<Invariant>& out) {
  const mpfr_prec_t bits = ctx.bits();
  Invariant closed("wigner", "closed form = series");
  Invariant smoothed("wigner", "special smoothing = closed form");
  Invariant normalization("wigner", "8 pi^2 integral = 1");
  Invariant negativity("wigner", "unsmoothed W has a negative lobe");
  Invariant agnostic("wigner", "detector smoothing = Wigner smoothing");
  const int grid = 200;
  for (int two_j = 0; two_j <= two_j_max; ++two_j) {
    const SpinQuantum spin(two_j);
    const Spectrum special = spectrum_special(spin);
    bool negative = false;
    for (int i = 0; i < grid; ++i) {
      const double xv = -1.0 + 2.0 * i / (grid - 1);
      const CertifiedReal x = CertifiedReal::from_double(xv, bits);
      const auto series = wigner_series(spin, x, nullptr, ctx);
      negative = negative || series.certainly_negative();
      closed.compare(wigner_closed(spin, x, ctx), series, Json{{"j", format_half(two_j)}, {"x", xv}});
      smoothed.compare(wigner_smoothed_special(spin, x, ctx), wigner_series(spin, x, &special, ctx),
                       Json{{"j", format_half(two_j)}, {"x", xv}});
    }
    if (two_j >= 2) {
      negativity.expect(negative, at(two_j));
    }
    const auto nodes = gauss_legendre(static_cast<unsigned>(spin.dimension()), ctx);
    CertifiedReal integral(bits);
    for (const auto& n : nodes) {
      integral.add_product(n.weight, wigner_series(spin, n.node, &special, ctx));
    }
    const CertifiedReal pi = CertifiedReal::pi(bits);
    integral *= pi * pi * 8L;
    normalization.compare(integral, exact_one(bits), at(two_j));

    const ChebyshevBasis basis(spin, ctx);
    const CertifiedReal c = CertifiedReal::from_double(0.3, bits);
    const auto state_side = reconstruct_joint(basis, c, &special);
    const auto detector_side = smooth_joint(joint_direct(spin, c, ctx), build_R(special, basis, Protocol::special));
    for (int a = 0; a < spin.dimension(); ++a) {
      for (int b = 0; b < spin.dimension(); ++b) {
        agnostic.compare(state_side(a, b), detector_side(a, b),
                         Json{{"j", format_half(two_j)}, {"m1", format_half(spin.two_m(a))},
                              {"m2", format_half(spin.two_m(b))}});
      }
    }
  }
  for (auto* inv : {&closed, &smoothed, &normalization, &negativity, &agnostic}) {
    out.push_back(std::move(*inv));
  }
}

void protocols_suite(int two_j_max, const PrecisionContext& ctx, int grid_n, std::vector<Invariant>& out) {
  const mpfr_prec_t bits = ctx.bits();
  Invariant stochastic("protocols", "row and column sums = 1");
  Invariant positivity("protocols", "special protocol certified positive");
  Invariant minimal("protocols", "special protocol minimally sufficient");
  Invariant over("protocols", "oversufficient protocol sufficient");
  Invariant agnostic("protocols", "agnostic classification");
  Invariant reduction("protocols", "correlation reduced by c_1^2");
  for (int two_j = 0; two_j <= two_j_max; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    for (Protocol p : {Protocol::special, Protocol::trivial, Protocol::oversufficient, Protocol::binned}) {
      const auto r = build_protocol(p, basis);
      for (int k = 0; k < spin.dimension(); ++k) {
        const Json where{{"j", format_half(two_j)}, {"protocol", to_string(p)}, {"index", k}};
        stochastic.compare(r.row_sum(k), exact_one(bits), where);
        stochastic.compare(r.column_sum(k), exact_one(bits), where);
      }
      const auto report = check_agnostic(r, basis, 1e-30);
      const bool expected = p != Protocol::binned || two_j <= 2;
      agnostic.expect(report.agnostic == expected, Json{{"j", format_half(two_j)}, {"protocol", to_string(p)}});
    }
    const auto special = build_protocol(Protocol::special, basis);
    positivity.expect(certify_positivity(special, ctx).verdict == PositivityVerdict::positive, at(two_j));
    if (two_j == 0) {
      continue;
    }
    const auto scan = sufficiency_scan(special, basis, grid_n);
    minimal.expect(scan.verdict == SufficiencyVerdict::minimally_sufficient && scan.minimum.value.is_exact_zero(),
                   at(two_j));
    const auto over_scan = sufficiency_scan(build_protocol(Protocol::oversufficient, basis), basis, grid_n);
    over.expect(over_scan.verdict == SufficiencyVerdict::sufficient, at(two_j));
    const CertifiedReal c = CertifiedReal::from_double(0.4, bits);
    const auto plain = correlation(spin, c, nullptr, ctx);
    const auto smoothed = correlation(spin, c, &special, ctx);
    reduction.compare(smoothed / plain, rational(two_j, two_j + 2, bits), at(two_j));
  }
  for (auto* inv : {&stochastic, &positivity, &minimal, &over, &agnostic, &reduction}) {
    out.push_back(std::move(*inv));
  }
}

Json context_json(const PrecisionContext& ctx) { return Json{{"bits", ctx.bits()}, {"max_bits", ctx.max_bits()}}; }

}  // namespace

std::string CsvTable::str() const {
  std::ostringstream os;
  auto cell = [&](const std::string& c) {
    if (c.find_first_of(",\"\n") == std::string::npos) {
      os << c;
      return;
    }
    os << '"';
    for (char ch : c) {
      os << (ch == '"' ? "\"\"" : std::string(1, ch));
    }
    os << '"';
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "," : "");
      cell(cells[i]);
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) {
    line(r);
  }
  return os.str();
}

Json CsvTable::to_json() const {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json obj;
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
      obj[header[i]] = r[i];
    }
    out.push_back(std::move(obj));
  }
  return out;
}

std::string format_value(const CertifiedReal& x, const PrecisionContext& ctx) {
  return x.mid_string(ctx.decimal_digits());
}

std::string format_radius(const CertifiedReal& x) { return x.rad_string(3); }

std::string format_half(int twice) {
  if (twice % 2 == 0) {
    return std::to_string(twice / 2);
  }
  return std::to_string(twice) + "/2";
}

FigureKind parse_figure_kind(std::string_view name) {
  if (name == "wigner") return FigureKind::wigner;
  if (name == "wigner-enlarged") return FigureKind::wigner_enlarged;
  if (name == "smoothed-wigner") return FigureKind::smoothed_wigner;
  if (name == "one-axis") return FigureKind::one_axis;
  if (name == "h-function") return FigureKind::h_function;
  throw std::invalid_argument("unknown figure kind '" + std::string(name) + "'");
}

std::string_view to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::wigner: return "wigner";
    case FigureKind::wigner_enlarged: return "wigner-enlarged";
    case FigureKind::smoothed_wigner: return "smoothed-wigner";
    case FigureKind::one_axis: return "one-axis";
    case FigureKind::h_function: return "h-function";
  }
  return "wigner";
}

CsvTable figure_table(const FigureRequest& request, const PrecisionContext& ctx) {
  if (request.points < 2) {
    throw std::invalid_argument("a figure needs at least 2 points");
  }
  const bool enlarged = request.kind == FigureKind::wigner_enlarged;
  const double lo = request.window_lo.value_or(enlarged ? 0.9 : -1.0);
  const double hi = request.window_hi.value_or(1.0);
  if (!(lo >= -1.0 && hi <= 1.0 && lo < hi)) {
    throw std::invalid_argument("window must satisfy -1 <= lo < hi <= 1");
  }
  const SpinQuantum spin(request.two_j);
  const mpfr_prec_t bits = ctx.bits();
  const bool needs_basis = request.kind == FigureKind::one_axis || request.kind == FigureKind::h_function;
  const int two_m = request.two_m.value_or(request.two_j);
  std::optional<ChebyshevBasis> basis;
  if (needs_basis) {
    spin.index_of(two_m);
    basis.emplace(spin, ctx);
  }

  CsvTable table{{"x", "value", "radius"}, {}};
  for (int i = 0; i < request.points; ++i) {
    const double xv = (i == request.points - 1) ? hi : lo + (hi - lo) * i / (request.points - 1);
    const CertifiedReal x = CertifiedReal::from_double(xv, bits);
    CertifiedReal value(bits);
    switch (request.kind) {
      case FigureKind::wigner:
      case FigureKind::wigner_enlarged: value = wigner_closed(spin, x, ctx); break;
      case FigureKind::smoothed_wigner: value = wigner_smoothed_special(spin, x, ctx); break;
      case FigureKind::one_axis: value = one_axis(*basis, two_m, x); break;
      case FigureKind::h_function: value = h_function(*basis, two_m, x); break;
    }
    table.rows.push_back({format_value(x, ctx), format_value(value, ctx), format_radius(value)});
  }
  return table;
}

TableKind parse_table_kind(std::string_view name) {
  if (name == "R") return TableKind::R;
  if (name == "joint") return TableKind::joint;
  if (name == "spectrum") return TableKind::spectrum;
  throw std::invalid_argument("unknown table '" + std::string(name) + "'");
}

CsvTable object_table(const TableRequest& request, const PrecisionContext& ctx) {
  const SpinQuantum spin(request.two_j);
  const int d = spin.dimension();
  switch (request.what) {
    case TableKind::R: {
      const ChebyshevBasis basis(spin, ctx);
      const auto r = build_protocol(request.protocol, basis);
      CsvTable t{{"m", "m_prime", "value", "radius"}, {}};
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          t.rows.push_back({format_half(spin.two_m(a)), format_half(spin.two_m(b)), format_value(r(a, b), ctx),
                            format_radius(r(a, b))});
        }
      }
      return t;
    }
    case TableKind::joint: {
      const auto p = joint_direct(spin, request.cos_theta, ctx);
      CsvTable t{{"m1", "m2", "value", "radius"}, {}};
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          t.rows.push_back({format_half(spin.two_m(a)), format_half(spin.two_m(b)), format_value(p(a, b), ctx),
                            format_radius(p(a, b))});
        }
      }
      return t;
    }
    case TableKind::spectrum: {
      if (request.protocol == Protocol::binned) {
        throw std::invalid_argument("the binned protocol is not agnostic and has no spectrum");
      }
      const Spectrum s = spectrum_for(request.protocol, spin);
      CsvTable t{{"l", "value", "radius"}, {}};
      for (int l = 0; l < d; ++l) {
        const CertifiedReal c = s.value(l, ctx.bits());
        t.rows.push_back({std::to_string(l), format_value(c, ctx), format_radius(c)});
      }
      return t;
    }
  }
  throw std::invalid_argument("unknown table");
}

Json RunReport::to_json() const {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["header"] = header.is_null() ? Json::object() : header;
  for (const auto& [key, value] : body.items()) {
    out[key] = value;
  }
  return out;
}

RunReport certify_report(Protocol protocol, SpinRange range, const PrecisionContext& ctx) {
  if (range.min < 0 || range.max < range.min) {
    throw std::invalid_argument("invalid 2j range");
  }
  RunReport report;
  report.body["command"] = "certify";
  report.body["parameters"] = Json{{"protocol", to_string(protocol)},
                                   {"two_j_min", range.min},
                                   {"two_j_max", range.max},
                                   {"precision", context_json(ctx)}};
  Json results = Json::array();
  int counts[3] = {0, 0, 0};
  for (int two_j = range.min; two_j <= range.max; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    const auto cert = certify_positivity(build_protocol(protocol, basis), ctx);
    ++counts[static_cast<int>(cert.verdict)];
    results.push_back(Json{{"two_j", two_j},
                           {"j", format_half(two_j)},
                           {"d", spin.dimension()},
                           {"verdict", to_string(cert.verdict)},
                           {"bits_used", cert.bits_used},
                           {"min_entry",
                            Json{{"m", format_half(spin.two_m(cert.min_row))},
                                 {"m_prime", format_half(spin.two_m(cert.min_col))},
                                 {"estimate", cert.min_entry.mid_string(20)},
                                 {"radius", format_radius(cert.min_entry)}}},
                           {"negative_entries", cert.negative_entries},
                           {"indeterminate_entries", cert.indeterminate_entries},
                           {"entries", cert.entries}});
  }
  report.body["results"] = std::move(results);
  report.body["summary"] = Json{{"positive", counts[static_cast<int>(PositivityVerdict::positive)]},
                                {"negative", counts[static_cast<int>(PositivityVerdict::negative)]},
                                {"indeterminate", counts[static_cast<int>(PositivityVerdict::indeterminate)]}};
  report.failed = counts[static_cast<int>(PositivityVerdict::negative)] > 0;
  return report;
}

Suite parse_suite(std::string_view name) {
  if (name == "basis") return Suite::basis;
  if (name == "distributions") return Suite::distributions;
  if (name == "wigner") return Suite::wigner;
  if (name == "protocols") return Suite::protocols;
  if (name == "all") return Suite::all;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::basis: return "basis";
    case Suite::distributions: return "distributions";
    case Suite::wigner: return "wigner";
    case Suite::protocols: return "protocols";
    case Suite::all: return "all";
  }
  return "all";
}

RunReport verify_report(Suite suite, int two_j_max, const PrecisionContext& ctx, int grid_n) {
  if (two_j_max < 1) {
    throw std::invalid_argument("--two-j-max must be at least 1");
  }
  std::vector<Invariant> invariants;
  if (suite == Suite::basis || suite == Suite::all) basis_suite(two_j_max, ctx, invariants);
  if (suite == Suite::distributions || suite == Suite::all) distributions_suite(two_j_max, ctx, invariants);
  if (suite == Suite::wigner || suite == Suite::all) wigner_suite(two_j_max, ctx, invariants);
  if (suite == Suite::protocols || suite == Suite::all) protocols_suite(two_j_max, ctx, grid_n, invariants);

  RunReport report;
  report.body["command"] = "verify";
  report.body["parameters"] = Json{{"suite", to_string(suite)},
                                   {"two_j_max", two_j_max},
                                   {"grid", grid_n},
                                   {"precision", context_json(ctx)}};
  Json results = Json::array();
  int failed = 0;
  for (const auto& inv : invariants) {
    results.push_back(inv.to_json());
    failed += inv.passed() ? 0 : 1;
  }
  report.body["results"] = std::move(results);
  report.body["summary"] = Json{{"invariants", invariants.size()}, {"failed", failed}, {"passed", failed == 0}};
  report.failed = failed > 0;
  return report;
}

void stamp(RunReport& report, double wall_seconds) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  report.header = Json{{"generated_at", buf}, {"wall_time_seconds", wall_seconds}};
}

CsvTable certify_csv(const RunReport& report) {
  CsvTable t{{"two_j", "verdict", "bits_used", "min_m", "min_m_prime", "min_estimate", "min_radius",
              "negative_entries", "indeterminate_entries"},
             {}};
  for (const auto& r : report.body.at("results")) {
    t.rows.push_back({std::to_string(r.at("two_j").get<int>()), r.at("verdict").get<std::string>(),
                      std::to_string(r.at("bits_used").get<int>()), r.at("min_entry").at("m").get<std::string>(),
                      r.at("min_entry").at("m_prime").get<std::string>(),
                      r.at("min_entry").at("estimate").get<std::string>(),
                      r.at("min_entry").at("radius").get<std::string>(),
                      std::to_string(r.at("negative_entries").get<int>()),
                      std::to_string(r.at("indeterminate_entries").get<int>())});
  }
  return t;
}

CsvTable verify_csv(const RunReport& report) {
  CsvTable t{{"suite", "invariant", "checks", "violations", "max_deviation", "max_radius", "passed"}, {}};
  for (const auto& r : report.body.at("results")) {
    std::ostringstream dev;
    std::ostringstream rad;
    dev.precision(3);
    rad.precision(3);
    dev << std::scientific << r.at("max_deviation").get<double>();
    rad << std::scientific << r.at("max_radius").get<double>();
    t.rows.push_back({r.at("suite").get<std::string>(), r.at("invariant").get<std::string>(),
                      std::to_string(r.at("checks").get<long>()), std::to_string(r.at("violations").get<long>()),
                      dev.str(), rad.str(), r.at("passed").get<bool>() ? "true" : "false"});
  }
  return t;
}

}  // namespace spinepr
