#pragma once

#include <optional>
#include <vector>

#include "spinepr/error_matrix.hpp"
#include "spinepr/numerics/certified_real.hpp"
#include "spinepr/spin_basis.hpp"

namespace spinepr {

/// Joint outcome table p[m1][m2] for the singlet measured along two axes
/// with inner product cos_theta12, addressed by index pairs.
struct JointDistribution {
  SpinQuantum spin;
  CertifiedReal cos_theta12;
  std::vector<std::vector<CertifiedReal>> table;

  const CertifiedReal& operator()(int i1, int i2) const { return table[i1][i2]; }
  CertifiedReal total() const;
  CertifiedReal first_marginal(int i1) const;
  CertifiedReal second_marginal(int i2) const;
};

/// p_a(m | n) = d^{-1} sum_l sqrt(2l+1) f_l(m) P_l(cos alpha). May be negative.
/// Throws std::domain_error for an invalid 2m or a cosine outside [-1, 1].
CertifiedReal one_axis(const ChebyshevBasis& basis, int two_m, const CertifiedReal& cos_alpha);
/// All 2j+1 values, by index.
std::vector<CertifiedReal> one_axis_all(const ChebyshevBasis& basis, const CertifiedReal& cos_alpha);

/// p[m1][m2] = d^{-1} F_{-m1, m2}(theta12).
JointDistribution joint_direct(SpinQuantum spin, const CertifiedReal& cos_theta12, const PrecisionContext& ctx);

/// p[m1][m2] = d^{-2} sum_l f_l(m1) f_l(m2) P_l(-cos theta12).
JointDistribution joint_factorized(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12);

struct QuadratureResult {
  JointDistribution distribution;
  unsigned polar_nodes;
  unsigned azimuth_nodes;
  /// Some entry certainly disagrees with joint_factorized.
  bool under_resolved;
  /// max |quadrature - analytic| over entries, upper bound.
  double max_deviation;
};

/// Numeric sphere integral of p_a1(m1|n) p_a2(m2|-n) with a1 on the pole:
/// Gauss-Legendre in the polar cosine, 2(2j+1) uniform azimuth nodes.
/// Exact within radii once polar_nodes >= 2j+1; fewer nodes are evaluated
/// anyway and reported as under-resolved when the result disagrees.
QuadratureResult joint_quadrature(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12,
                                  unsigned polar_nodes);

/// <(J1.a)(J2.b)> = sum m1 m2 pbar[m1][m2], pbar = R p R^T when R is given.
CertifiedReal correlation(SpinQuantum spin, const CertifiedReal& cos_ab, const ErrorMatrix* smoothing,
                          const PrecisionContext& ctx);
/// Same, for an already computed joint table.
CertifiedReal correlation(const JointDistribution& joint, const ErrorMatrix* smoothing);

/// pbar = R p R^T.
JointDistribution smooth_joint(const JointDistribution& joint, const ErrorMatrix& smoothing);

}  // namespace spinepr
