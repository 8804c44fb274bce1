#include "spinepr/epr.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "spinepr/numerics/orthopoly.hpp"

namespace spinepr {

namespace {

using Table = std::vector<std::vector<CertifiedReal>>;

Table zero_table(int d, mpfr_prec_t bits) {
  return Table(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)));
}

CertifiedReal at_precision(const CertifiedReal& x, mpfr_prec_t bits) {
  return x.rounded(std::max(bits, x.precision()));
}

// Precomputed g[l][k] = sqrt(2l+1) f_l(k) / d for the lower half of the grid;
// the upper half follows from f_l(-m) = (-1)^l f_l(m).
class OneAxisEvaluator {
 public:
  explicit OneAxisEvaluator(const ChebyshevBasis& basis)
      : two_j_(basis.spin().two_j()), d_(basis.dimension()), bits_(basis.context().bits()) {
    const int half = (d_ + 1) / 2;
    weights_.resize(d_);
    for (int l = 0; l < d_; ++l) {
      const CertifiedReal root = CertifiedReal::signed_sqrt(1, ExactRational(2 * l + 1), bits_);
      for (int k = 0; k < half; ++k) {
        CertifiedReal g = root * basis.f(l, k);
        g /= static_cast<long>(d_);
        weights_[l].push_back(std::move(g));
      }
    }
  }

  std::vector<CertifiedReal> operator()(const CertifiedReal& x) const {
    const auto p = legendre_sequence(static_cast<unsigned>(two_j_), at_precision(x, bits_));
    const int half = (d_ + 1) / 2;
    std::vector<CertifiedReal> out(d_, CertifiedReal(bits_));
    for (int k = 0; k < half; ++k) {
      CertifiedReal even(bits_);
      CertifiedReal odd(bits_);
      for (int l = 0; l < d_; l += 2) {
        even.add_product(weights_[l][k], p[l]);
      }
      for (int l = 1; l < d_; l += 2) {
        odd.add_product(weights_[l][k], p[l]);
      }
      const int mirror = d_ - 1 - k;
      if (mirror == k) {
        out[k] = even + odd;
      } else {
        out[k] = even + odd;
        out[mirror] = even - odd;
      }
    }
    return out;
  }

 private:
  int two_j_;
  int d_;
  mpfr_prec_t bits_;
  std::vector<std::vector<CertifiedReal>> weights_;
};

}  // namespace

CertifiedReal JointDistribution::total() const {
  CertifiedReal sum(table.front().front().precision());
  for (const auto& row : table) {
    for (const auto& v : row) {
      sum += v;
    }
  }
  return sum;
}

CertifiedReal JointDistribution::first_marginal(int i1) const {
  CertifiedReal sum(table.at(i1).front().precision());
  for (const auto& v : table.at(i1)) {
    sum += v;
  }
  return sum;
}

CertifiedReal JointDistribution::second_marginal(int i2) const {
  CertifiedReal sum(table.front().at(i2).precision());
  for (const auto& row : table) {
    sum += row.at(i2);
  }
  return sum;
}

CertifiedReal one_axis(const ChebyshevBasis& basis, int two_m, const CertifiedReal& cos_alpha) {
  const int index = basis.spin().index_of(two_m);
  return one_axis_all(basis, cos_alpha)[index];
}

std::vector<CertifiedReal> one_axis_all(const ChebyshevBasis& basis, const CertifiedReal& cos_alpha) {
  return OneAxisEvaluator(basis)(cos_alpha);
}

JointDistribution joint_direct(SpinQuantum spin, const CertifiedReal& cos_theta12, const PrecisionContext& ctx) {
  const FMatrix f = f_matrix(spin, cos_theta12, ctx);
  const int d = spin.dimension();
  JointDistribution out{spin, cos_theta12, zero_table(d, ctx.bits())};
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      out.table[i1][i2] = f(d - 1 - i1, i2) / static_cast<long>(d);
    }
  }
  return out;
}

JointDistribution joint_factorized(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12) {
  const SpinQuantum spin = basis.spin();
  const int d = spin.dimension();
  const mpfr_prec_t bits = basis.context().bits();
  const auto p = legendre_sequence(static_cast<unsigned>(spin.two_j()), -at_precision(cos_theta12, bits));
  const long d2 = static_cast<long>(d) * d;

  JointDistribution out{spin, cos_theta12, zero_table(d, bits)};
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = i1; i2 < d; ++i2) {
      CertifiedReal sum(bits);
      for (int l = 0; l < d; ++l) {
        sum.add_product(CertifiedReal::from_rational(basis.product(l, i1, i2), bits), p[l]);
      }
      sum /= d2;
      out.table[i1][i2] = sum;
      out.table[i2][i1] = std::move(sum);
    }
  }
  return out;
}

QuadratureResult joint_quadrature(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12,
                                  unsigned polar_nodes) {
  if (polar_nodes == 0) {
    throw std::domain_error("quadrature needs at least one polar node");
  }
  const SpinQuantum spin = basis.spin();
  const int d = spin.dimension();
  const mpfr_prec_t bits = basis.context().bits();
  const PrecisionContext& ctx = basis.context();
  const OneAxisEvaluator evaluate(basis);

  const CertifiedReal c12 = at_precision(cos_theta12, bits);
  const CertifiedReal one(1, bits);
  const CertifiedReal s12 = sqrt(one - c12 * c12);

  // cos(phi_k) = cos(phi_{N-k}): evaluate k = 0..N/2 once with multiplicity.
  const unsigned n_phi = 2 * static_cast<unsigned>(d);
  const CertifiedReal two_pi = CertifiedReal::pi(bits) * 2L;
  std::vector<std::pair<CertifiedReal, long>> azimuths;
  for (unsigned k = 0; k <= n_phi / 2; ++k) {
    CertifiedReal c(bits);
    if (k == 0) {
      c = one;
    } else if (2 * k == n_phi) {
      c = -one;
    } else {
      c = cos(two_pi * static_cast<long>(k) / static_cast<long>(n_phi));
    }
    const long multiplicity = (k == 0 || 2 * k == n_phi) ? 1 : 2;
    azimuths.emplace_back(std::move(c), multiplicity);
  }

  Table acc = zero_table(d, bits);
  for (const auto& node : gauss_legendre(polar_nodes, ctx)) {
    const CertifiedReal& u = node.node;
    const auto first = evaluate(u);
    const CertifiedReal sin_u = sqrt(one - u * u);
    const CertifiedReal radial = s12 * sin_u;
    const CertifiedReal axial = c12 * u;

    // Azimuthal mean of p_a2(m2 | -n).
    std::vector<CertifiedReal> second(d, CertifiedReal(bits));
    for (const auto& [cos_phi, multiplicity] : azimuths) {
      CertifiedReal arg = radial * cos_phi;
      arg += axial;
      const auto values = evaluate(-arg);
      for (int i2 = 0; i2 < d; ++i2) {
        second[i2] += values[i2] * multiplicity;
      }
    }
    // d^2 n / 4 pi = (du / 2)(d phi / 2 pi)
    CertifiedReal scale = node.weight / 2L;
    scale /= static_cast<long>(n_phi);
    for (auto& v : second) {
      v *= scale;
    }
    for (int i1 = 0; i1 < d; ++i1) {
      for (int i2 = 0; i2 < d; ++i2) {
        acc[i1][i2].add_product(first[i1], second[i2]);
      }
    }
  }

  QuadratureResult out{JointDistribution{spin, cos_theta12, std::move(acc)}, polar_nodes, n_phi, false, 0.0};
  const JointDistribution analytic = joint_factorized(basis, cos_theta12);
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      const auto& q = out.distribution(i1, i2);
      const auto& a = analytic(i1, i2);
      out.max_deviation = std::max(out.max_deviation, mid_distance(q, a));
      if (!overlaps(q, a)) {
        out.under_resolved = true;
      }
    }
  }
  return out;
}

JointDistribution smooth_joint(const JointDistribution& joint, const ErrorMatrix& smoothing) {
  const int d = joint.spin.dimension();
  if (smoothing.dimension() != d) {
    throw std::domain_error("error matrix dimension does not match the joint distribution");
  }
  const mpfr_prec_t bits = joint.table.front().front().precision();
  // (R p)[a][m2], then (R p R^T)[a][b]
  Table left = zero_table(d, bits);
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < d; ++k) {
      for (int i2 = 0; i2 < d; ++i2) {
        left[a][i2].add_product(smoothing(a, k), joint(k, i2));
      }
    }
  }
  JointDistribution out{joint.spin, joint.cos_theta12, zero_table(d, bits)};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int k = 0; k < d; ++k) {
        out.table[a][b].add_product(left[a][k], smoothing(b, k));
      }
    }
  }
  return out;
}

CertifiedReal correlation(const JointDistribution& joint, const ErrorMatrix* smoothing) {
  const JointDistribution used = smoothing ? smooth_joint(joint, *smoothing) : joint;
  const SpinQuantum spin = joint.spin;
  const int d = spin.dimension();
  CertifiedReal sum(used.table.front().front().precision());
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = 0; i2 < d; ++i2) {
      sum += used(i1, i2) * (static_cast<long>(spin.two_m(i1)) * spin.two_m(i2));
    }
  }
  return sum / 4L;
}

CertifiedReal correlation(SpinQuantum spin, const CertifiedReal& cos_ab, const ErrorMatrix* smoothing,
                          const PrecisionContext& ctx) {
  return correlation(joint_direct(spin, cos_ab, ctx), smoothing);
}

}  // namespace spinepr
