#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinepr/numerics/orthopoly.hpp"
#include "spinepr/spin_basis.hpp"

using namespace spinepr;

namespace {

CertifiedReal exact(const ExactRational& q, mpfr_prec_t bits) { return CertifiedReal::from_rational(q, bits); }

// Classical Gram-Schmidt on the monomials 1, m, m^2, ... over the grid,
// producing monic orthogonal polynomials. Independent of the recurrence.
std::vector<std::vector<ExactRational>> gram_schmidt_monic(const SpinQuantum& spin) {
  const int d = spin.dimension();
  std::vector<std::vector<ExactRational>> basis;
  for (int l = 0; l < d; ++l) {
    std::vector<ExactRational> v(d);
    for (int k = 0; k < d; ++k) {
      ExactRational power(1);
      for (int e = 0; e < l; ++e) {
        power *= spin.m(k);
      }
      v[k] = power;
    }
    for (const auto& u : basis) {
      ExactRational num(0), den(0);
      for (int k = 0; k < d; ++k) {
        num += v[k] * u[k];
        den += u[k] * u[k];
      }
      const ExactRational coeff = num / den;
      for (int k = 0; k < d; ++k) {
        v[k] -= coeff * u[k];
      }
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

TEST_CASE("spin quantum indexing") {
  const SpinQuantum spin(3);
  CHECK(spin.dimension() == 4);
  CHECK(spin.two_m(0) == -3);
  CHECK(spin.two_m(3) == 3);
  CHECK(spin.index_of(1) == 2);
  CHECK_THROWS_AS(spin.index_of(2), std::domain_error);
  CHECK_THROWS_AS(spin.index_of(5), std::domain_error);
  CHECK_THROWS_AS(spin.two_m(4), std::domain_error);
  CHECK_THROWS_AS(SpinQuantum(-1), std::domain_error);
  CHECK(SpinQuantum(0).dimension() == 1);
}

TEST_CASE("coefficient ladder") {
  const PrecisionContext ctx(256);
  for (int two_j = 0; two_j <= 12; ++two_j) {
    const auto lad = ladder(SpinQuantum(two_j), ctx);
    CHECK(lad.q[0] == ExactRational(1));
    CHECK(lad.p[0] == ExactRational(1));
    CHECK(lad.w[0].estimate() == 1.0);
    for (int l = 0; l <= two_j; ++l) {
      CHECK(lad.q[l].sign() > 0);
      CHECK(lad.w_square[l] == lad.p[l] * lad.q[l]);
      CHECK(overlaps(lad.w[l] * lad.w[l], exact(lad.w_square[l], 256)));
    }
  }
  const auto half = ladder(SpinQuantum(1), ctx);
  CHECK(half.q[1] == ExactRational(1, 2));
  CHECK(half.p[1] == ExactRational(3, 2));
  CHECK(overlaps(half.w[1], sqrt(CertifiedReal(3, 256)) / 2L));
}

TEST_CASE("monic recurrence reproduces Gram-Schmidt exactly") {
  const PrecisionContext ctx(128);
  for (int two_j = 0; two_j <= 9; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    const auto reference = gram_schmidt_monic(spin);
    for (int l = 0; l <= two_j; ++l) {
      for (int k = 0; k <= two_j; ++k) {
        CHECK(basis.core(l, k) == reference[l][k]);
      }
      // norm_l = d * prod_{k<=l} beta_k
      ExactRational expected(spin.dimension());
      for (long k = 1; k <= l; ++k) {
        const long d = spin.dimension();
        expected *= ExactRational(k * k * (d * d - k * k), 4 * (4 * k * k - 1));
      }
      CHECK(basis.norm_square(l) == expected);
    }
  }
}

TEST_CASE("chebyshev basis closed-form rows") {
  const PrecisionContext ctx(256);
  for (int two_j = 1; two_j <= 20; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    const ExactRational j = spin.j();
    const CertifiedReal f1_scale = sqrt(exact(ExactRational(3) / (j * (j + ExactRational(1))), 256));
    for (int k = 0; k <= two_j; ++k) {
      CHECK(basis.f(0, k).estimate() == 1.0);
      CHECK(basis.f(0, k).is_exact());
      CHECK(overlaps(basis.f(1, k), f1_scale * exact(spin.m(k), 256)));
    }
    for (int l = 0; l <= two_j; ++l) {
      CHECK(basis.f(l, two_j).certainly_positive());
    }
  }
}

TEST_CASE("orthonormality, completeness and the f_l(j) identity for 2j <= 40") {
  const PrecisionContext ctx(256);
  for (int two_j = 0; two_j <= 40; ++two_j) {
    const SpinQuantum spin(two_j);
    const int d = spin.dimension();
    const ChebyshevBasis basis(spin, ctx);
    double worst_radius = 0;
    for (int l = 0; l < d; ++l) {
      for (int lp = l; lp < d; ++lp) {
        CertifiedReal sum(256);
        ExactRational exact_sum(0);
        for (int k = 0; k < d; ++k) {
          sum.add_product(basis.f(l, k), basis.f(lp, k));
          if (l == lp) {
            exact_sum += basis.product(l, k, k);
          }
        }
        sum /= static_cast<long>(d);
        CHECK(overlaps(sum, CertifiedReal(l == lp ? 1 : 0, 256)));
        worst_radius = std::max(worst_radius, sum.radius());
        if (l == lp) {
          CHECK(exact_sum == ExactRational(d));
        }
      }
    }
    for (int k = 0; k < d; ++k) {
      for (int kp = k; kp < d; ++kp) {
        CertifiedReal sum(256);
        ExactRational exact_sum(0);
        for (int l = 0; l < d; ++l) {
          sum.add_product(basis.f(l, k), basis.f(l, kp));
          exact_sum += basis.product(l, k, kp);
        }
        sum /= static_cast<long>(d);
        CHECK(overlaps(sum, CertifiedReal(k == kp ? 1 : 0, 256)));
        CHECK(exact_sum == ExactRational(k == kp ? d : 0));
        worst_radius = std::max(worst_radius, sum.radius());
      }
    }
    CHECK(worst_radius < 1e-20);

    const auto lad = ladder(spin, ctx);
    for (int l = 0; l < d; ++l) {
      const CertifiedReal rhs = sqrt(CertifiedReal(2 * l + 1, 256)) * exact(lad.q[l], 256) / lad.w[l];
      CHECK(overlaps(basis.f(l, two_j), rhs));
      // Squared form is exact: f_l(j)^2 = (2l + 1) a^Q / a^P.
      CHECK(basis.product(l, two_j, two_j) == ExactRational(2 * l + 1) * lad.q[l] / lad.p[l]);
    }
  }
}

TEST_CASE("F matrix examples") {
  const PrecisionContext ctx(256);
  SUBCASE("theta = 0 is the identity") {
    for (int two_j = 0; two_j <= 6; ++two_j) {
      const auto F = f_matrix_at_angle(SpinQuantum(two_j), 0.0, ctx);
      for (int a = 0; a <= two_j; ++a) {
        for (int b = 0; b <= two_j; ++b) {
          CHECK(F(a, b).is_exact());
          CHECK(F(a, b).estimate() == (a == b ? 1.0 : 0.0));
        }
      }
    }
  }
  SUBCASE("theta = pi is the flip") {
    const auto F = f_matrix(SpinQuantum(5), CertifiedReal(-1, 256), ctx);
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) {
        CHECK(F(a, b).estimate() == (a + b == 5 ? 1.0 : 0.0));
      }
    }
    const auto S = f_matrix_spectral(ChebyshevBasis(SpinQuantum(5), ctx), CertifiedReal(-1, 256));
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; b <= 5; ++b) {
        CHECK(overlaps(S(a, b), CertifiedReal(a + b == 5 ? 1 : 0, 256)));
      }
    }
  }
  SUBCASE("spin one half") {
    for (const double theta : {0.3, 1.1, 2.0, 3.0}) {
      const auto F = f_matrix_at_angle(SpinQuantum(1), theta, ctx);
      const auto half = CertifiedReal::from_double(theta, 256) / 2L;
      const auto c2 = cos(half) * cos(half);
      const auto s2 = sin(half) * sin(half);
      CHECK(overlaps(F(0, 0), c2));
      CHECK(overlaps(F(1, 1), c2));
      CHECK(overlaps(F(0, 1), s2));
      CHECK(overlaps(F(1, 0), s2));
    }
  }
  SUBCASE("row m' = j is binomial") {
    for (int two_j = 1; two_j <= 12; ++two_j) {
      const SpinQuantum spin(two_j);
      const auto c = CertifiedReal::from_rational(ExactRational(-3, 7), 256);
      const auto F = f_matrix(spin, c, ctx);
      const auto plus = (CertifiedReal(1, 256) + c) / 2L;
      const auto minus = (CertifiedReal(1, 256) - c) / 2L;
      for (int k = 0; k <= two_j; ++k) {
        // j + m = k, j - m = 2j - k
        const auto expected = exact(binomial(two_j, two_j - k), 256) * pow(plus, k) * pow(minus, two_j - k);
        CHECK(overlaps(F(k, two_j), expected));
      }
    }
  }
  SUBCASE("j = 2 at pi/3 agrees with the spectral form") {
    const SpinQuantum spin(4);
    const auto c = CertifiedReal::from_rational(ExactRational(1, 2), 256);
    const auto direct = f_matrix(spin, c, ctx);
    const auto spectral = f_matrix_spectral(ChebyshevBasis(spin, ctx), c);
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        CHECK(overlaps(direct(a, b), spectral(a, b)));
        CHECK(max_distance(direct(a, b), spectral(a, b)) < 1e-60);
      }
    }
  }
  CHECK_THROWS_AS(f_matrix_at_angle(SpinQuantum(2), -0.1, ctx), std::domain_error);
  CHECK_THROWS_AS(f_matrix(SpinQuantum(2), CertifiedReal(2, 256), ctx), std::domain_error);
}

TEST_CASE("F is doubly stochastic, symmetric and in [0, 1]") {
  const PrecisionContext ctx(192);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int two_j = 0; two_j <= 30; ++two_j) {
    const int d = two_j + 1;
    for (int trial = 0; trial < 20; ++trial) {
      const auto F = f_matrix_at_angle(SpinQuantum(two_j), angle(rng), ctx);
      for (int a = 0; a < d; ++a) {
        CertifiedReal row(192), col(192);
        for (int b = 0; b < d; ++b) {
          row += F(a, b);
          col += F(b, a);
          CHECK(F(a, b).estimate() >= -F(a, b).radius());
          CHECK(F(a, b).estimate() <= 1.0 + F(a, b).radius());
          CHECK(mpfr_equal_p(F(a, b).mid(), F(b, a).mid()));
        }
        CHECK(overlaps(row, CertifiedReal(1, 192)));
        CHECK(overlaps(col, CertifiedReal(1, 192)));
      }
    }
  }
}

TEST_CASE("spectral representation agrees with the d-matrix route for 2j <= 30") {
  const PrecisionContext ctx(256);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  for (int two_j = 0; two_j <= 30; ++two_j) {
    const SpinQuantum spin(two_j);
    const ChebyshevBasis basis(spin, ctx);
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = CertifiedReal::from_double(cosine(rng), 256);
      const auto direct = f_matrix(spin, c, ctx);
      const auto spectral = f_matrix_spectral(basis, c);
      for (int a = 0; a <= two_j; ++a) {
        for (int b = 0; b <= two_j; ++b) {
          CHECK(overlaps(direct(a, b), spectral(a, b)));
          CHECK(max_distance(direct(a, b), spectral(a, b)) < 1e-20);
        }
      }
    }
  }
}
