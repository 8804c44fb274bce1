#pragma once

#include <vector>

#include "spinepr/numerics/certified_real.hpp"

namespace spinepr {

/// P_l(x) by the three-term recurrence. Throws std::domain_error when x lies
/// certainly outside [-1, 1].
CertifiedReal legendre(unsigned l, const CertifiedReal& x);
CertifiedReal legendre(unsigned l, double x, const PrecisionContext& ctx);

/// P_0(x), ..., P_lmax(x) in one recurrence sweep.
std::vector<CertifiedReal> legendre_sequence(unsigned lmax, const CertifiedReal& x);

struct QuadratureNode {
  CertifiedReal node;
  CertifiedReal weight;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
///
/// Each node radius is the a posteriori bound n |P_n(x)| / |P_n'(x)|, which
/// encloses a root of P_n for any degree-n polynomial; weights are evaluated
/// in ball arithmetic over the node balls.
std::vector<QuadratureNode> gauss_legendre(unsigned n, const PrecisionContext& ctx);

}  // namespace spinepr
