#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "spinepr/numerics/certified_real.hpp"
#include "spinepr/numerics/exact_rational.hpp"
#include "spinepr/numerics/orthopoly.hpp"
#include "spinepr/numerics/precision.hpp"

using namespace spinepr;

TEST_CASE("precision context invariants") {
  CHECK_THROWS_AS(PrecisionContext(32), std::invalid_argument);
  CHECK_THROWS_AS(PrecisionContext(128, 64), std::invalid_argument);

  PrecisionContext ctx(64, 300);
  CHECK(ctx.escalated().bits() == 128);
  CHECK(ctx.escalated().escalated().bits() == 256);
  CHECK(ctx.escalated().escalated().escalated().bits() == 300);
  CHECK_FALSE(ctx.escalated().escalated().escalated().can_escalate());
  CHECK_THROWS_AS(PrecisionContext(64).escalated(), std::logic_error);
  CHECK(PrecisionContext(256).decimal_digits() == 77);
}

TEST_CASE("exact rationals stay in lowest terms") {
  ExactRational q(6, -8);
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 4);
  CHECK(ExactRational(1, 3) + ExactRational(1, 6) == ExactRational(1, 2));
  CHECK_THROWS_AS(ExactRational(1, 0), std::domain_error);
  CHECK_THROWS_AS(ExactRational(1) / ExactRational(0), std::domain_error);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(4, 2) == ExactRational(6));
  for (long two_j = 0; two_j <= 12; ++two_j) {
    CHECK(binomial(two_j, two_j) == ExactRational(1));
  }
  CHECK(binomial(10, -1) == ExactRational(0));
  CHECK(binomial(10, 11) == ExactRational(0));
  CHECK(binomial(60, 30).numerator() == mpz_class("118264581564861424"));
}

TEST_CASE("ball operations enclose known values") {
  const mpfr_prec_t bits = 128;
  const auto third = CertifiedReal::from_rational(ExactRational(1, 3), bits);
  CHECK_FALSE(third.is_exact());
  const auto one = third * 3L;
  CHECK(overlaps(one, CertifiedReal(1, bits)));

  const auto root2 = sqrt(CertifiedReal(2, bits));
  CHECK(overlaps(root2 * root2, CertifiedReal(2, bits)));
  CHECK(root2.radius() < 1e-37);

  // A ball straddling zero has its root enclosed in [0, sqrt(m + r)].
  const auto straddle = sqrt(CertifiedReal::with_radius(0.0, 1e-10, bits));
  CHECK(straddle.estimate() > 0);
  CHECK(straddle.radius() >= straddle.estimate());
  CHECK_THROWS_AS(sqrt(CertifiedReal(-1, bits)), std::domain_error);

  CHECK_THROWS_AS(CertifiedReal(1, bits) / CertifiedReal::with_radius(0.0, 1e-30, bits),
                  std::domain_error);
  CHECK((CertifiedReal(1, bits) / 4L).is_exact());

  const auto pi = CertifiedReal::pi(bits);
  CHECK(overlaps(cos(pi), CertifiedReal(-1, bits)));
  CHECK(std::abs(sin(pi).estimate()) < 1e-37);

  CHECK(pow(CertifiedReal(3, bits), 5).estimate() == 243.0);
  CHECK(pow(CertifiedReal(3, bits), 0).estimate() == 1.0);
}

TEST_CASE("sign predicates") {
  const mpfr_prec_t bits = 64;
  CHECK(CertifiedReal::with_radius(1.0, 0.5, bits).certainly_positive());
  CHECK(CertifiedReal::with_radius(-1.0, 0.5, bits).certainly_negative());
  CHECK(CertifiedReal::with_radius(1.0, 2.0, bits).contains_zero());
  CHECK(CertifiedReal(0, bits).is_exact_zero());
}

namespace {

// Random expression tree evaluated at a chosen precision; same seed -> same tree.
CertifiedReal random_expression(std::mt19937_64& rng, int depth, mpfr_prec_t bits) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  const int choice = pick(rng);
  if (choice <= 1) {
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 17);
    const long n = num(rng);
    const long d = den(rng);
    return choice == 0 ? CertifiedReal::from_rational(ExactRational(n, d), bits)
                       : CertifiedReal::pi(bits) * n / d;
  }
  CertifiedReal a = random_expression(rng, depth - 1, bits);
  CertifiedReal b = random_expression(rng, depth - 1, bits);
  switch (choice) {
    case 2: return a + b;
    case 3: return a - b;
    case 4: return a * b;
    case 5: {
      // Keep the divisor away from zero so the tree is well defined.
      CertifiedReal shifted = abs(b) + CertifiedReal(1, bits);
      return a / shifted;
    }
    case 6: return sqrt(abs(a) + CertifiedReal::from_rational(ExactRational(1, 7), bits));
    case 7: return cos(a) + sin(b);
    default: return a * CertifiedReal::from_rational(ExactRational(3, 11), bits) - b;
  }
}

}  // namespace

TEST_CASE("interval soundness on random expression trees") {
  for (const unsigned bits : {64U, 100U}) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      std::mt19937_64 rng_low(seed);
      std::mt19937_64 rng_high(seed);
      const CertifiedReal low = random_expression(rng_low, 6, bits);
      const CertifiedReal high = random_expression(rng_high, 6, 4 * bits);
      INFO("seed " << seed << " low " << low.mid_string(20) << " +- " << low.rad_string());
      // The high-precision ball is ~2^(-3 bits) narrower; its midpoint must fall
      // inside the low-precision ball.
      CHECK(mid_distance(low, high) <= combined_radius(low, high));
      CHECK(high.radius() <= low.radius() + 1e-300);
      ++checked;
    }
    CHECK(checked == 1000);
  }
}

namespace {

double explicit_legendre(unsigned l, double x) {
  switch (l) {
    case 0: return 1;
    case 1: return x;
    case 2: return (3 * x * x - 1) / 2;
    case 3: return (5 * x * x * x - 3 * x) / 2;
    case 4: return (35 * std::pow(x, 4) - 30 * x * x + 3) / 8;
    case 5: return (63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8;
    case 6: return (231 * std::pow(x, 6) - 315 * std::pow(x, 4) + 105 * x * x - 5) / 16;
    default: throw std::logic_error("no explicit form");
  }
}

}  // namespace

TEST_CASE("legendre examples") {
  const PrecisionContext ctx(128);
  CHECK(legendre(0, 0.37, ctx).estimate() == 1.0);
  CHECK(legendre(1, 0.5, ctx).estimate() == 0.5);
  const auto p5 = legendre(5, 1.0, ctx);
  CHECK(p5.estimate() == 1.0);
  CHECK(p5.is_exact());
  CHECK_THROWS_AS(legendre(3, 1.5, ctx), std::domain_error);
  CHECK_THROWS_AS(legendre(3, -1.0001, ctx), std::domain_error);
}

TEST_CASE("legendre recurrence matches explicit polynomials") {
  const PrecisionContext ctx(256);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = dist(rng);
    const auto xb = CertifiedReal::from_double(x, ctx.bits());
    const auto seq = legendre_sequence(6, xb);
    for (unsigned l = 0; l <= 6; ++l) {
      // Double-precision explicit form: allow its own rounding on top of the radius.
      CHECK(std::abs(seq[l].estimate() - explicit_legendre(l, x)) <= seq[l].radius() + 1e-14);
      CHECK(overlaps(seq[l], legendre(l, xb)));
    }
    // Exact rational evaluation of P_4 at the (exact) double x.
    mpq_class q(x);
    const mpq_class q2 = q * q;
    const mpq_class exact = (35 * q2 * q2 - 30 * q2 + 3) / 8;
    CHECK(overlaps(seq[4], CertifiedReal::from_rational(ExactRational(exact), 512)));
  }
}

TEST_CASE("gauss-legendre small rules") {
  const PrecisionContext ctx(256);
  const auto one = gauss_legendre(1, ctx);
  REQUIRE(one.size() == 1);
  CHECK(one[0].node.is_exact_zero());
  CHECK(one[0].weight.estimate() == 2.0);

  const auto two = gauss_legendre(2, ctx);
  REQUIRE(two.size() == 2);
  const auto inv_root3 = CertifiedReal(1, 256) / sqrt(CertifiedReal(3, 256));
  CHECK(overlaps(two[0].node, -inv_root3));
  CHECK(overlaps(two[1].node, inv_root3));
  CHECK(two[1].node.radius() < 1e-60);
  CHECK(overlaps(two[0].weight, CertifiedReal(1, 256)));
  CHECK_THROWS_AS(gauss_legendre(0, ctx), std::invalid_argument);
}

TEST_CASE("gauss-legendre exactness for polynomials up to degree 2n-1") {
  const PrecisionContext ctx(192);
  for (unsigned n = 1; n <= 20; ++n) {
    const auto rule = gauss_legendre(n, ctx);
    CertifiedReal total(ctx.bits());
    for (std::size_t i = 0; i < rule.size(); ++i) {
      CHECK(rule[i].weight.certainly_positive());
      CHECK(std::abs(rule[i].node.estimate()) < 1.0);
      if (i > 0) {
        CHECK(rule[i].node.estimate() > rule[i - 1].node.estimate());
      }
      total += rule[i].weight;
    }
    CHECK(overlaps(total, CertifiedReal(2, ctx.bits())));
    for (unsigned k = 0; k <= 2 * n - 1; ++k) {
      CertifiedReal integral(ctx.bits());
      for (const auto& [x, w] : rule) {
        integral.add_product(w, pow(x, k));
      }
      const ExactRational exact = (k % 2 == 1) ? ExactRational(0) : ExactRational(2, k + 1);
      INFO("n=" << n << " k=" << k << " got " << integral.mid_string(30));
      CHECK(overlaps(integral, CertifiedReal::from_rational(exact, ctx.bits())));
      CHECK(integral.radius() < 1e-45);
    }
  }
}
