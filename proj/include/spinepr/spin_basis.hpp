#pragma once

#include <vector>

#include "spinepr/numerics/certified_real.hpp"
#include "spinepr/numerics/exact_rational.hpp"
#include "spinepr/numerics/precision.hpp"

namespace spinepr {

/// Spin quantum number j held exactly as the integer 2j.
///
/// Magnetic quantum numbers are addressed by index k = 0..2j, with
/// 2m = 2k - 2j, so index 0 is m = -j and index 2j is m = +j.
class SpinQuantum {
 public:
  explicit SpinQuantum(int two_j);

  int two_j() const noexcept { return two_j_; }
  /// d_j = 2j + 1
  int dimension() const noexcept { return two_j_ + 1; }
  ExactRational j() const { return ExactRational(two_j_, 2); }
  double j_value() const noexcept { return two_j_ / 2.0; }

  int two_m(int index) const;
  /// Index of the state with the given 2m; throws std::domain_error if 2m is
  /// out of range or has the wrong parity.
  int index_of(int two_m) const;
  ExactRational m(int index) const { return ExactRational(two_m(index), 2); }

  friend bool operator==(const SpinQuantum&, const SpinQuantum&) = default;

 private:
  int two_j_;
};

/// Q, P and Weyl symbol coefficients a^{Q,P,W}_{j l} for l = 0..2j.
struct CoefficientLadder {
  SpinQuantum spin;
  std::vector<ExactRational> q;         // a^Q
  std::vector<ExactRational> p;         // a^P
  std::vector<ExactRational> w_square;  // (a^W)^2 = a^P a^Q
  std::vector<CertifiedReal> w;         // a^W

  int l_max() const noexcept { return spin.two_j(); }
};

CoefficientLadder ladder(SpinQuantum spin, const PrecisionContext& ctx);

/// Orthonormal discrete Chebyshev basis f^j_l(m) on the grid m = -j..j.
///
/// Each f_l = scale_l * t_l where t_l is the monic orthogonal polynomial
/// evaluated exactly on the grid and scale_l^2 = d_j / sum_m t_l(m)^2 is
/// rational, so f_l(m) f_l(m') is an exact rational for every l, m, m'.
/// Normalization: d_j^{-1} sum_m f_l(m) f_l'(m) = delta_{l l'}, and
/// f_l(j) > 0.
class ChebyshevBasis {
 public:
  ChebyshevBasis(SpinQuantum spin, const PrecisionContext& ctx);

  const SpinQuantum& spin() const noexcept { return spin_; }
  int dimension() const noexcept { return spin_.dimension(); }
  const PrecisionContext& context() const noexcept { return ctx_; }

  const CertifiedReal& f(int l, int index) const { return values_[l][index]; }
  const ExactRational& core(int l, int index) const { return cores_[l][index]; }
  const ExactRational& norm_square(int l) const { return norms_[l]; }
  const ExactRational& scale_square(int l) const { return scales_[l]; }

  /// f_l(m) f_l(m') as an exact rational.
  ExactRational product(int l, int index, int other_index) const;

 private:
  SpinQuantum spin_;
  PrecisionContext ctx_;
  std::vector<std::vector<ExactRational>> cores_;
  std::vector<ExactRational> norms_;
  std::vector<ExactRational> scales_;
  std::vector<std::vector<CertifiedReal>> values_;
};

ChebyshevBasis chebyshev_basis(SpinQuantum spin, const PrecisionContext& ctx);

/// F_{m m'}(theta) = |d^j_{m m'}(theta)|^2, addressed by index pairs.
struct FMatrix {
  SpinQuantum spin;
  CertifiedReal cos_theta;
  std::vector<std::vector<CertifiedReal>> entries;

  const CertifiedReal& operator()(int row, int col) const { return entries[row][col]; }
};

/// F(theta) from Wigner's single-sum formula for d^j, written as a polynomial
/// in cos^2(theta/2) and sin^2(theta/2) with exact rational coefficients.
/// cos(theta) = +-1 yields the exact identity or flip permutation.
FMatrix f_matrix(SpinQuantum spin, const CertifiedReal& cos_theta, const PrecisionContext& ctx);
/// Angle form; theta in [0, pi].
FMatrix f_matrix_at_angle(SpinQuantum spin, double theta, const PrecisionContext& ctx);

/// F(theta) = d_j^{-1} sum_l f_l(m) f_l(m') P_l(cos theta).
FMatrix f_matrix_spectral(const ChebyshevBasis& basis, const CertifiedReal& cos_theta);

}  // namespace spinepr
