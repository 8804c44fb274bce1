#include "spinepr/wigner.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "spinepr/numerics/orthopoly.hpp"

namespace spinepr {

namespace {

void check_spectrum(SpinQuantum spin, const Spectrum* spectrum) {
  if (spectrum && spectrum->spin() != spin) {
    throw std::domain_error("spectrum length " + std::to_string(spectrum->size()) + " does not match 2j + 1 = " +
                            std::to_string(spin.dimension()));
  }
}

CertifiedReal squared_coefficient(const Spectrum* spectrum, int l, mpfr_prec_t bits) {
  if (!spectrum) {
    return CertifiedReal(1, bits);
  }
  return spectrum->square(l, bits);
}

CertifiedReal four_pi_squared(mpfr_prec_t bits) {
  const CertifiedReal four_pi = CertifiedReal::pi(bits) * 4L;
  return four_pi * four_pi;
}

CertifiedReal widened(const CertifiedReal& x, mpfr_prec_t bits) { return x.rounded(std::max(bits, x.precision())); }

}  // namespace

CertifiedReal wigner_series(SpinQuantum spin, const CertifiedReal& x, const Spectrum* spectrum,
                            const PrecisionContext& ctx) {
  check_spectrum(spin, spectrum);
  const mpfr_prec_t bits = ctx.bits();
  const auto p = legendre_sequence(static_cast<unsigned>(spin.two_j()), widened(x, bits));
  CertifiedReal sum(bits);
  for (int l = 0; l < spin.dimension(); ++l) {
    CertifiedReal term = squared_coefficient(spectrum, l, bits);
    term *= static_cast<long>(2 * l + 1);
    sum.add_product(term, p[l]);
  }
  return sum / four_pi_squared(bits);
}

CertifiedReal wigner_closed(SpinQuantum spin, const CertifiedReal& x, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  const long d = spin.dimension();
  const CertifiedReal one(1, bits);
  const CertifiedReal gap = one - widened(x, bits);

  // Upper bound on |1 - x| from the ball.
  mpfr_t bound;
  mpfr_init2(bound, 64);
  mpfr_abs(bound, gap.mid(), MPFR_RNDU);
  mpfr_add(bound, bound, gap.rad(), MPFR_RNDU);
  const bool near_one = mpfr_cmp_si_2exp(bound, 1, -static_cast<long>(bits / 2)) < 0;

  if (near_one) {
    // |W'| <= (4 pi)^{-2} sum_l (2l+1) l(l+1)/2 on [-1, 1].
    long slope = 0;
    for (long l = 0; l < d; ++l) {
      slope += (2 * l + 1) * l * (l + 1) / 2;
    }
    mpfr_mul_si(bound, bound, slope, MPFR_RNDU);
    CertifiedReal limit = CertifiedReal(d * d, bits) / four_pi_squared(bits);
    limit.inflate(bound);
    mpfr_clear(bound);
    return limit;
  }
  mpfr_clear(bound);

  // The bracket cancels to O(1 - x); carry extra bits through the division.
  const mpfr_prec_t wide = bits + bits / 2 + 32;
  const CertifiedReal xw = widened(x, wide);
  const auto p = legendre_sequence(static_cast<unsigned>(spin.two_j() + 1), xw);
  CertifiedReal bracket = p[spin.two_j()] - p[spin.two_j() + 1];
  bracket *= d;
  bracket /= CertifiedReal(1, wide) - xw;
  bracket /= four_pi_squared(wide);
  return bracket.rounded(bits);
}

CertifiedReal wigner_smoothed_special(SpinQuantum spin, const CertifiedReal& x, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  const CertifiedReal half_sum = (CertifiedReal(1, bits) + widened(x, bits)) / 2L;
  CertifiedReal value = pow(half_sum, static_cast<unsigned long>(spin.two_j()));
  value *= static_cast<long>(spin.dimension());
  return value / four_pi_squared(bits);
}

CertifiedReal projector_symbol(const ChebyshevBasis& basis, int two_m, const CertifiedReal& cos_alpha) {
  return one_axis(basis, two_m, cos_alpha);
}

JointDistribution reconstruct_joint(const ChebyshevBasis& basis, const CertifiedReal& cos_theta12,
                                    const Spectrum* spectrum) {
  const SpinQuantum spin = basis.spin();
  check_spectrum(spin, spectrum);
  const int d = spin.dimension();
  const mpfr_prec_t bits = basis.context().bits();
  const auto p = legendre_sequence(static_cast<unsigned>(spin.two_j()), -widened(cos_theta12, bits));
  std::vector<CertifiedReal> weighted;
  weighted.reserve(d);
  for (int l = 0; l < d; ++l) {
    weighted.push_back(squared_coefficient(spectrum, l, bits) * p[l]);
  }
  const long d2 = static_cast<long>(d) * d;

  JointDistribution out{spin, cos_theta12,
                        std::vector<std::vector<CertifiedReal>>(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)))};
  for (int i1 = 0; i1 < d; ++i1) {
    for (int i2 = i1; i2 < d; ++i2) {
      CertifiedReal sum(bits);
      for (int l = 0; l < d; ++l) {
        sum.add_product(CertifiedReal::from_rational(basis.product(l, i1, i2), bits), weighted[l]);
      }
      sum /= d2;
      out.table[i1][i2] = sum;
      out.table[i2][i1] = std::move(sum);
    }
  }
  return out;
}

}  // namespace spinepr
