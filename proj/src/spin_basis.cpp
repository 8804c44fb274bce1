#include "spinepr/spin_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "spinepr/numerics/orthopoly.hpp"

namespace spinepr {

SpinQuantum::SpinQuantum(int two_j) : two_j_(two_j) {
  if (two_j < 0) {
    throw std::domain_error("2j must be nonnegative, got " + std::to_string(two_j));
  }
}

int SpinQuantum::two_m(int index) const {
  if (index < 0 || index > two_j_) {
    throw std::domain_error("m index " + std::to_string(index) + " outside 0.." + std::to_string(two_j_));
  }
  return 2 * index - two_j_;
}

int SpinQuantum::index_of(int two_m) const {
  if (two_m < -two_j_ || two_m > two_j_ || (two_m + two_j_) % 2 != 0) {
    throw std::domain_error("2m = " + std::to_string(two_m) + " is not a valid projection for 2j = " +
                            std::to_string(two_j_));
  }
  return (two_m + two_j_) / 2;
}

CoefficientLadder ladder(SpinQuantum spin, const PrecisionContext& ctx) {
  CoefficientLadder out{spin, {}, {}, {}, {}};
  const int two_j = spin.two_j();
  ExactRational q(1);
  ExactRational p(1);
  for (int l = 0; l <= two_j; ++l) {
    if (l > 0) {
      // a^Q_l / a^Q_{l-1} = j + 1/2 - l/2,  a^P_l / a^P_{l-1} = j + 1/2 + l/2
      q *= ExactRational(two_j + 1 - l, 2);
      p *= ExactRational(two_j + 1 + l, 2);
    }
    out.q.push_back(q);
    out.p.push_back(p);
    out.w_square.push_back(q * p);
    out.w.push_back(CertifiedReal::signed_sqrt(1, q * p, ctx.bits()));
  }
  return out;
}

ChebyshevBasis::ChebyshevBasis(SpinQuantum spin, const PrecisionContext& ctx) : spin_(spin), ctx_(ctx) {
  const int d = spin.dimension();
  std::vector<ExactRational> grid;
  grid.reserve(d);
  for (int k = 0; k < d; ++k) {
    grid.push_back(spin.m(k));
  }

  // Monic recurrence on the symmetric unit grid: the diagonal coefficient
  // vanishes and beta_l = l^2 (d^2 - l^2) / (4 (4 l^2 - 1)).
  cores_.assign(1, std::vector<ExactRational>(d, ExactRational(1)));
  for (int l = 0; l < spin.two_j(); ++l) {
    std::vector<ExactRational> next(d);
    for (int k = 0; k < d; ++k) {
      next[k] = grid[k] * cores_[l][k];
    }
    if (l > 0) {
      const long ll = l;
      const ExactRational beta(ll * ll * (long{d} * d - ll * ll), 4 * (4 * ll * ll - 1));
      for (int k = 0; k < d; ++k) {
        next[k] -= beta * cores_[l - 1][k];
      }
    }
    cores_.push_back(std::move(next));
  }

  values_.resize(d);
  for (int l = 0; l < d; ++l) {
    ExactRational norm(0);
    for (const auto& t : cores_[l]) {
      norm += t * t;
    }
    norms_.push_back(norm);
    scales_.push_back(ExactRational(d) / norm);
    const CertifiedReal scale = CertifiedReal::signed_sqrt(1, scales_.back(), ctx.bits());
    values_[l].reserve(d);
    for (int k = 0; k < d; ++k) {
      values_[l].push_back(scale * CertifiedReal::from_rational(cores_[l][k], ctx.bits()));
    }
  }
}

ExactRational ChebyshevBasis::product(int l, int index, int other_index) const {
  return scales_[l] * cores_[l][index] * cores_[l][other_index];
}

ChebyshevBasis chebyshev_basis(SpinQuantum spin, const PrecisionContext& ctx) {
  return ChebyshevBasis(spin, ctx);
}

namespace {

void check_cosine(const CertifiedReal& c) {
  const CertifiedReal one(1, c.precision());
  if ((c - one).certainly_positive() || (c + one).certainly_negative()) {
    throw std::domain_error("cos(theta) outside [-1, 1]: " + c.mid_string(17));
  }
}

bool is_exactly(const CertifiedReal& x, long value) {
  return x.is_exact() && mpfr_cmp_si(x.mid(), value) == 0;
}

FMatrix permutation_matrix(SpinQuantum spin, const CertifiedReal& cos_theta, bool flip, mpfr_prec_t bits) {
  const int d = spin.dimension();
  FMatrix out{spin, cos_theta, std::vector<std::vector<CertifiedReal>>(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)))};
  for (int k = 0; k < d; ++k) {
    out.entries[k][flip ? d - 1 - k : k] = CertifiedReal(1, bits);
  }
  return out;
}

}  // namespace

FMatrix f_matrix(SpinQuantum spin, const CertifiedReal& cos_theta, const PrecisionContext& ctx) {
  check_cosine(cos_theta);
  const mpfr_prec_t bits = ctx.bits();
  if (is_exactly(cos_theta, 1)) {
    return permutation_matrix(spin, cos_theta, false, bits);
  }
  if (is_exactly(cos_theta, -1)) {
    return permutation_matrix(spin, cos_theta, true, bits);
  }

  const int two_j = spin.two_j();
  const int d = spin.dimension();
  // Alternating sums cancel; carry guard bits proportional to 2j.
  const mpfr_prec_t wide = bits + 2 * two_j + 16;
  const CertifiedReal c_theta = cos_theta.rounded(std::max(wide, cos_theta.precision()));
  CertifiedReal cos_half_sq = (CertifiedReal(1, wide) + c_theta) / 2L;
  CertifiedReal sin_half_sq = (CertifiedReal(1, wide) - c_theta) / 2L;
  std::vector<CertifiedReal> cpow{CertifiedReal(1, wide)};
  std::vector<CertifiedReal> spow{CertifiedReal(1, wide)};
  for (int e = 1; e <= two_j; ++e) {
    cpow.push_back(cpow.back() * cos_half_sq);
    spow.push_back(spow.back() * sin_half_sq);
  }

  std::vector<mpz_class> fact(two_j + 1);
  for (int n = 0; n <= two_j; ++n) {
    fact[n] = factorial(static_cast<unsigned long>(n));
  }

  FMatrix out{spin, cos_theta, std::vector<std::vector<CertifiedReal>>(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)))};
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      // |d^j_{m' m}|^2 with A = j + m, B = j - m, C = j + m', D = j - m'.
      const int A = a, B = two_j - a, C = b, D = two_j - b;
      const int s_min = std::max(0, A - C);
      const int s_max = std::min(A, D);
      CertifiedReal sum(wide);
      for (int s = s_min; s <= s_max; ++s) {
        const mpz_class denom = fact[A - s] * fact[s] * fact[C - A + s] * fact[D - s];
        ExactRational coeff(mpz_class((s % 2 == 0) ? 1 : -1), denom);
        CertifiedReal term = CertifiedReal::from_rational(coeff, wide);
        term *= cpow[s_max - s];
        term *= spow[s - s_min];
        sum += term;
      }
      const ExactRational prefactor(fact[A] * fact[B] * fact[C] * fact[D], mpz_class(1));
      CertifiedReal value = sum * sum;
      value *= CertifiedReal::from_rational(prefactor, wide);
      value *= cpow[A + D - 2 * s_max];
      value *= spow[C - A + 2 * s_min];
      out.entries[a][b] = value.rounded(bits);
      out.entries[b][a] = out.entries[a][b];
    }
  }
  return out;
}

FMatrix f_matrix_at_angle(SpinQuantum spin, double theta, const PrecisionContext& ctx) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::domain_error("theta must lie in [0, pi]");
  }
  if (theta == 0.0) {
    return f_matrix(spin, CertifiedReal(1, ctx.bits()), ctx);
  }
  if (theta == std::numbers::pi) {
    return f_matrix(spin, CertifiedReal(-1, ctx.bits()), ctx);
  }
  return f_matrix(spin, cos(CertifiedReal::from_double(theta, ctx.bits())), ctx);
}

FMatrix f_matrix_spectral(const ChebyshevBasis& basis, const CertifiedReal& cos_theta) {
  check_cosine(cos_theta);
  const SpinQuantum spin = basis.spin();
  const int d = spin.dimension();
  const mpfr_prec_t bits = basis.context().bits();
  const auto legendre_values = legendre_sequence(spin.two_j(), cos_theta.rounded(std::max(bits, cos_theta.precision())));

  FMatrix out{spin, cos_theta, std::vector<std::vector<CertifiedReal>>(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)))};
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      CertifiedReal sum(bits);
      for (int l = 0; l < d; ++l) {
        sum.add_product(CertifiedReal::from_rational(basis.product(l, a, b), bits), legendre_values[l]);
      }
      sum /= static_cast<long>(d);
      out.entries[a][b] = sum;
      out.entries[b][a] = std::move(sum);
    }
  }
  return out;
}

}  // namespace spinepr
