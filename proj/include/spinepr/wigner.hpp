#pragma once

#include "spinepr/epr.hpp"
#include "spinepr/error_matrix.hpp"

namespace spinepr {

/// Singlet Wigner function as a function of x = -n1.n2:
/// W(x) = (4 pi)^{-2} sum_l (2l+1) c_l^2 P_l(x), with c_l = 1 when no
/// spectrum is given. Throws std::domain_error on a spectrum of the wrong
/// length or |x| > 1.
CertifiedReal wigner_series(SpinQuantum spin, const CertifiedReal& x, const Spectrum* spectrum,
                            const PrecisionContext& ctx);

/// Closed form (4 pi)^{-2} d/(1-x) [P_{2j}(x) - P_{2j+1}(x)]. Below
/// |1-x| < 2^{-bits/2} the limit d^2/(4 pi)^2 is returned with the radius
/// widened by a derivative bound times |1-x|.
CertifiedReal wigner_closed(SpinQuantum spin, const CertifiedReal& x, const PrecisionContext& ctx);

/// Wigner function smoothed by the special protocol: d/(4 pi)^2 ((1+x)/2)^{2j}.
CertifiedReal wigner_smoothed_special(SpinQuantum spin, const CertifiedReal& x, const PrecisionContext& ctx);

/// Weyl symbol of the projector |m><m| along a; identical to one_axis.
CertifiedReal projector_symbol(const ChebyshevBasis& basis, int two_m, const CertifiedReal& cos_alpha);

/// Joint distribution from the phase-space integral of the Wigner function
/// against two projector symbols:
/// p[m1][m2] = d^{-2} sum_l c_l^2 f_l(m1) f_l(m2) P_l(-cos theta12).
JointDistribution reconstruct_joint(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12,
                                    const Spectrum* spectrum);

}  // namespace spinepr
