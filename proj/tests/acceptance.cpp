// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "spinepr/epr.hpp"
#include "spinepr/protocols.hpp"
#include "spinepr/report.hpp"
#include "spinepr/spin_basis.hpp"
#include "spinepr/wigner.hpp"

using namespace spinepr;

namespace {

const PrecisionContext kCtx(256);
constexpr unsigned kBits = 256;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      detail << "first failure: " << what << "; ";
    }
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    o.require(false, "runtime " + std::to_string(secs) + " s over budget");
  }
  failures += o.pass ? 0 : 1;
  std::printf("AC%d %s: %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", name, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

std::string tag(int two_j) { return "2j=" + std::to_string(two_j); }

CertifiedReal rational(long num, long den) { return CertifiedReal::from_rational(ExactRational(num, den), kBits); }

}  // namespace

int main() {
  criterion(1, "joint distributions: direct = factorized = quadrature", 120.0, [](Outcome& o) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (int two_j = 0; two_j <= 30; ++two_j) {
      const SpinQuantum spin(two_j);
      const ChebyshevBasis basis(spin, kCtx);
      for (int k = 0; k < 10; ++k) {
        const CertifiedReal c = CertifiedReal::from_double(uni(rng), kBits);
        const JointDistribution direct = joint_direct(spin, c, kCtx);
        const JointDistribution fact = joint_factorized(basis, c);
        const QuadratureResult quad = joint_quadrature(basis, c, spin.dimension());
        o.require(!quad.under_resolved, tag(two_j) + " quadrature under-resolved");
        for (int a = 0; a < spin.dimension(); ++a) {
          for (int b = 0; b < spin.dimension(); ++b) {
            const auto& q = quad.distribution(a, b);
            o.require(overlaps(direct(a, b), fact(a, b)) && overlaps(direct(a, b), q),
                      tag(two_j) + " entries disjoint");
            const double d = std::max(max_distance(direct(a, b), fact(a, b)), max_distance(direct(a, b), q));
            worst = std::max(worst, d);
          }
        }
      }
    }
    o.require(worst < 1e-20, "disagreement above 1e-20");
    o.detail << "max disagreement " << worst;
  });

  criterion(2, "j=1/2 special off-diagonal error rate", 0, [](Outcome& o) {
    const SpinQuantum spin(1);
    const ChebyshevBasis basis(spin, kCtx);
    const ErrorMatrix r = build_protocol(Protocol::special, basis);
    const CertifiedReal expected = (CertifiedReal(1, kBits) - sqrt(rational(1, 3))) / 2L;
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const double dist = max_distance(r(a, b), expected);
      o.require(dist < std::ldexp(1.0, -245), "off-diagonal differs by " + std::to_string(dist));
    }
    const double percent = std::round(r(0, 1).estimate() * 1000.0) / 10.0;
    o.require(percent == 21.1, "rounds to " + std::to_string(percent) + "%");
    o.detail << "R[-1/2][1/2] = " << r(0, 1).mid_string(40) << " +- " << r(0, 1).rad_string() << ", " << percent
             << "%";
  });

  criterion(3, "special protocol positivity for d <= 40", 600.0, [](Outcome& o) {
    const PrecisionContext ctx(256, 16384);
    int max_bits_used = 0;
    double smallest = 1.0;
    for (int two_j = 0; two_j <= 39; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), ctx);
      const PositivityCertificate cert = certify_positivity(build_protocol(Protocol::special, basis), ctx);
      o.require(cert.verdict == PositivityVerdict::positive, tag(two_j) + " verdict " +
                                                                 std::string(to_string(cert.verdict)));
      o.require(cert.indeterminate_entries == 0 && cert.negative_entries == 0, tag(two_j) + " unresolved entries");
      max_bits_used = std::max(max_bits_used, cert.bits_used);
      smallest = std::min(smallest, cert.min_entry.estimate());
    }
    o.detail << "smallest entry " << smallest << ", max bits used " << max_bits_used;
  });

  criterion(4, "special protocol minimally sufficient for 2j <= 40", 0, [](Outcome& o) {
    for (int two_j = 0; two_j <= 40; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), kCtx);
      const SufficiencyReport rep = sufficiency_scan(build_protocol(Protocol::special, basis), basis, 2048);
      o.require(rep.negative_points == 0, tag(two_j) + " certified negative value");
      if (two_j == 0) {
        // A single outcome: pbar = 1 everywhere, so the bound 0 cannot be attained.
        o.require(rep.verdict == SufficiencyVerdict::sufficient && rep.minimum.value.estimate() == 1.0,
                  "2j=0 should be the constant 1");
        continue;
      }
      o.require(rep.verdict == SufficiencyVerdict::minimally_sufficient, tag(two_j) + " verdict " +
                                                                              std::string(to_string(rep.verdict)));
      o.require(rep.minimum.value.is_exact_zero() && std::abs(rep.minimum.cos_alpha) == 1.0,
                tag(two_j) + " minimum not an exact zero at cos = +-1");
      bool only_endpoints = !rep.exact_zeros.empty();
      for (const auto& z : rep.exact_zeros) {
        only_endpoints = only_endpoints && std::abs(z.second) == 1.0;
      }
      o.require(only_endpoints, tag(two_j) + " exact zeros away from the endpoints");
    }
    o.detail << "minimum 0 at cos = +-1 for 2j = 1..40 (2j=0 is the constant 1)";
  });

  criterion(5, "correlation reduced by j/(j+1)", 0, [](Outcome& o) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst_ratio = 0.0;
    double worst_magnitude = 0.0;
    for (int two_j = 1; two_j <= 30; ++two_j) {
      const SpinQuantum spin(two_j);
      const ChebyshevBasis basis(spin, kCtx);
      const ErrorMatrix r = build_protocol(Protocol::special, basis);
      const CertifiedReal j = CertifiedReal::from_rational(spin.j(), kBits);
      const CertifiedReal expected_ratio = j / (j + CertifiedReal(1, kBits));
      for (int k = 0; k < 3; ++k) {
        double cv = uni(rng);
        if (std::abs(cv) < 0.05) cv = 0.5;
        const CertifiedReal c = CertifiedReal::from_double(cv, kBits);
        const JointDistribution joint = joint_direct(spin, c, kCtx);
        const CertifiedReal bare = correlation(joint, nullptr);
        const CertifiedReal smoothed = correlation(joint, &r);
        const double dr = max_distance(smoothed / bare, expected_ratio);
        const CertifiedReal magnitude = j * j * abs(c) / 3L;
        const double dm = max_distance(abs(smoothed), magnitude);
        worst_ratio = std::max(worst_ratio, dr);
        worst_magnitude = std::max(worst_magnitude, dm);
        o.require(dr < 1e-20, tag(two_j) + " ratio off by " + std::to_string(dr));
        o.require(dm < 1e-20, tag(two_j) + " smoothed magnitude off by " + std::to_string(dm));
      }
    }
    o.detail << "max ratio deviation " << worst_ratio << ", max magnitude deviation " << worst_magnitude;
  });

  criterion(6, "Wigner profiles for 2j in {10, 19, 100}", 0, [](Outcome& o) {
    const CertifiedReal four_pi_sq = CertifiedReal::pi(kBits) * CertifiedReal::pi(kBits) * 16L;
    double most_negative_10 = 0.0;
    double most_negative_100 = 0.0;
    for (int two_j : {10, 19, 100}) {
      const SpinQuantum spin(two_j);
      const int points = 400;
      bool negative_lobe = false;
      CertifiedReal lowest(kBits);
      for (int i = 0; i < points; ++i) {
        const CertifiedReal x = rational(2L * i - (points - 1), points - 1);
        const CertifiedReal closed = wigner_closed(spin, x, kCtx);
        const CertifiedReal series = wigner_series(spin, x, nullptr, kCtx);
        o.require(overlaps(closed, series), tag(two_j) + " closed form disagrees with series");
        if (closed.certainly_negative()) {
          negative_lobe = true;
          if (closed.estimate() < lowest.estimate()) lowest = closed;
        }
        if (i == points - 1) {
          const long d = spin.dimension();
          const CertifiedReal peak = CertifiedReal(d * d, kBits) / four_pi_sq;
          o.require(overlaps(closed, peak) && overlaps(series, peak), tag(two_j) + " value at x=1");
        }
      }
      o.require(negative_lobe, tag(two_j) + " no certified negative lobe");
      // Upper end of the ball, so the comparison below is certified.
      const double upper = lowest.estimate() + lowest.radius();
      const double lower = lowest.estimate() - lowest.radius();
      if (two_j == 10) most_negative_10 = lower;
      if (two_j == 100) most_negative_100 = upper;
      o.detail << tag(two_j) << " min " << lowest.estimate() << "; ";
    }
    o.require(most_negative_100 < most_negative_10, "2j=100 not deeper than 2j=10");
  });

  criterion(7, "protocol taxonomy", 0, [](Outcome& o) {
    for (int two_j = 0; two_j <= 12; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), kCtx);
      for (Protocol p : {Protocol::special, Protocol::trivial, Protocol::oversufficient}) {
        o.require(check_agnostic(build_protocol(p, basis), basis, 1e-60).agnostic,
                  tag(two_j) + " " + std::string(to_string(p)) + " not agnostic");
      }
    }
    for (int two_j = 3; two_j <= 5; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), kCtx);
      o.require(!check_agnostic(build_protocol(Protocol::binned, basis), basis, 1e-60).agnostic,
                tag(two_j) + " binned reported agnostic");
    }
    int insufficient_at = -1;
    for (int two_j = 1; two_j <= 5 && insufficient_at < 0; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), kCtx);
      const SufficiencyReport rep = sufficiency_scan(build_protocol(Protocol::binned, basis), basis, 2048);
      if (rep.verdict == SufficiencyVerdict::insufficient && rep.minimum.value.certainly_negative()) {
        insufficient_at = two_j;
      }
    }
    o.require(insufficient_at > 0, "binned never insufficient for 2j <= 5");
    double lowest_over = 1.0;
    for (int two_j = 1; two_j <= 20; ++two_j) {
      const ChebyshevBasis basis(SpinQuantum(two_j), kCtx);
      const SufficiencyReport rep = sufficiency_scan(build_protocol(Protocol::oversufficient, basis), basis, 2048);
      o.require(rep.verdict == SufficiencyVerdict::sufficient && rep.minimum.value.certainly_positive(),
                tag(two_j) + " oversufficient verdict " + std::string(to_string(rep.verdict)));
      lowest_over = std::min(lowest_over, rep.minimum.value.estimate());
    }
    o.detail << "binned insufficient at 2j=" << insufficient_at << ", oversufficient minimum " << lowest_over;
  });

  criterion(8, "basis identities for 2j <= 40", 0, [](Outcome& o) {
    const RunReport rep = verify_report(Suite::basis, 40, kCtx);
    long checks = 0;
    for (const auto& inv : rep.body.at("results")) {
      checks += inv.at("checks").get<long>();
      o.require(inv.at("passed").get<bool>(), inv.at("invariant").get<std::string>());
    }
    o.require(!rep.failed, "basis suite failed");
    o.detail << checks << " certified checks";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
