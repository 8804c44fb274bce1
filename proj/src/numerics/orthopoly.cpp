#include "spinepr/numerics/orthopoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinepr {
namespace {

void check_unit_interval(const CertifiedReal& x) {
  const CertifiedReal one(1, x.precision());
  if ((x - one).certainly_positive() || (x + one).certainly_negative()) {
    throw std::domain_error("Legendre argument outside [-1, 1]: " + x.mid_string(17));
  }
}

// Ball radii in the raw recurrence grow like (1 + sqrt 2)^l even though the
// recurrence itself is stable on [-1, 1]. The sequence is therefore evaluated
// at the exact midpoint with enough guard bits to absorb that growth, and the
// input radius enters through the Markov bound |P_l'| <= l (l + 1) / 2.
std::vector<CertifiedReal> guarded_sequence(unsigned lmax, const CertifiedReal& x) {
  const mpfr_prec_t bits = x.precision();
  const mpfr_prec_t guard = static_cast<mpfr_prec_t>(lmax) * 13 / 10 + 16;
  const CertifiedReal point = x.midpoint(bits + guard);

  std::vector<CertifiedReal> wide;
  wide.reserve(lmax + 1);
  wide.emplace_back(1, bits + guard);
  if (lmax >= 1) {
    wide.push_back(point);
  }
  for (unsigned k = 1; k < lmax; ++k) {
    CertifiedReal next = point * wide[k];
    next *= static_cast<long>(2 * k + 1);
    next -= wide[k - 1] * static_cast<long>(k);
    next /= static_cast<long>(k + 1);
    wide.push_back(std::move(next));
  }

  std::vector<CertifiedReal> out;
  out.reserve(lmax + 1);
  mpfr_t spread;
  mpfr_init2(spread, CertifiedReal::kRadiusBits);
  for (unsigned l = 0; l <= lmax; ++l) {
    CertifiedReal value = wide[l].rounded(bits);
    if (l > 0 && !x.is_exact()) {
      mpfr_mul_ui(spread, x.rad(), static_cast<unsigned long>(l) * (l + 1) / 2, MPFR_RNDU);
      value.inflate(spread);
    }
    out.push_back(std::move(value));
  }
  mpfr_clear(spread);
  return out;
}

// (P_n(x), P_{n-1}(x)) for n >= 1.
std::pair<CertifiedReal, CertifiedReal> legendre_pair(unsigned n, const CertifiedReal& x) {
  auto seq = guarded_sequence(n, x);
  return {std::move(seq[n]), std::move(seq[n - 1])};
}

// Newton refinement of a Legendre root in plain MPFR.
void refine_root(unsigned n, mpfr_t x, mpfr_prec_t bits) {
  mpfr_t p0, p1, p2, dp, step, tmp;
  mpfr_inits2(bits, p0, p1, p2, dp, step, tmp, static_cast<mpfr_ptr>(nullptr));
  for (int iter = 0; iter < 200; ++iter) {
    mpfr_set_ui(p0, 1, MPFR_RNDN);
    mpfr_set(p1, x, MPFR_RNDN);
    for (unsigned k = 1; k < n; ++k) {
      // p2 = ((2k+1) x p1 - k p0) / (k+1)
      mpfr_mul(p2, x, p1, MPFR_RNDN);
      mpfr_mul_ui(p2, p2, 2 * k + 1, MPFR_RNDN);
      mpfr_mul_ui(tmp, p0, k, MPFR_RNDN);
      mpfr_sub(p2, p2, tmp, MPFR_RNDN);
      mpfr_div_ui(p2, p2, k + 1, MPFR_RNDN);
      mpfr_swap(p0, p1);
      mpfr_swap(p1, p2);
    }
    // dp = n (x p1 - p0) / (x^2 - 1)
    mpfr_mul(dp, x, p1, MPFR_RNDN);
    mpfr_sub(dp, dp, p0, MPFR_RNDN);
    mpfr_mul_ui(dp, dp, n, MPFR_RNDN);
    mpfr_sqr(tmp, x, MPFR_RNDN);
    mpfr_sub_ui(tmp, tmp, 1, MPFR_RNDN);
    mpfr_div(dp, dp, tmp, MPFR_RNDN);
    mpfr_div(step, p1, dp, MPFR_RNDN);
    mpfr_sub(x, x, step, MPFR_RNDN);
    if (mpfr_zero_p(step) || mpfr_get_exp(step) < mpfr_get_exp(x) - static_cast<mpfr_exp_t>(bits)) {
      break;
    }
  }
  mpfr_clears(p0, p1, p2, dp, step, tmp, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

CertifiedReal legendre(unsigned l, const CertifiedReal& x) {
  check_unit_interval(x);
  if (l == 0) {
    return CertifiedReal(1, x.precision());
  }
  return legendre_pair(l, x).first;
}

CertifiedReal legendre(unsigned l, double x, const PrecisionContext& ctx) {
  return legendre(l, CertifiedReal::from_double(x, ctx.bits()));
}

std::vector<CertifiedReal> legendre_sequence(unsigned lmax, const CertifiedReal& x) {
  check_unit_interval(x);
  return guarded_sequence(lmax, x);
}

std::vector<QuadratureNode> gauss_legendre(unsigned n, const PrecisionContext& ctx) {
  if (n == 0) {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  const mpfr_prec_t bits = ctx.bits();
  std::vector<QuadratureNode> nodes;
  nodes.reserve(n);

  mpfr_t root;
  mpfr_init2(root, bits + 32);
  for (unsigned i = 0; i < n; ++i) {
    CertifiedReal x(bits);
    if (2 * i + 1 == n) {
      x = CertifiedReal(0, bits);  // odd n: P_n(0) = 0 exactly
    } else if (2 * i + 1 > n) {
      x = -nodes[n - 1 - i].node;  // mirror of an already certified node
    } else {
      // i-th node from the left is the negative of the i-th largest root.
      mpfr_set_d(root, -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), MPFR_RNDN);
      refine_root(n, root, bits + 32);
      // Take the rounded root as an exact point, then bound its distance to
      // the true root.
      mpfr_t rounded;
      mpfr_init2(rounded, bits);
      mpfr_set(rounded, root, MPFR_RNDN);
      x = CertifiedReal::from_mpfr(rounded, bits);
      mpfr_clear(rounded);
      auto [pn, pn1] = legendre_pair(n, x);
      CertifiedReal derivative = x * pn - pn1;
      derivative *= static_cast<long>(n);
      derivative /= x * x - CertifiedReal(1, bits);
      CertifiedReal bound = abs(pn) / abs(derivative);
      bound *= static_cast<long>(n);
      mpfr_t upper;
      mpfr_init2(upper, CertifiedReal::kRadiusBits);
      mpfr_add(upper, bound.mid(), bound.rad(), MPFR_RNDU);
      x.inflate(upper);
      mpfr_clear(upper);
    }
    nodes.push_back(QuadratureNode{x, CertifiedReal(bits)});
  }
  mpfr_clear(root);

  for (auto& [x, weight] : nodes) {
    if (n == 1) {
      weight = CertifiedReal(2, bits);
      continue;
    }
    // w = 2 (1 - x^2) / (n P_{n-1}(x))^2
    CertifiedReal denom = legendre_pair(n, x).second * static_cast<long>(n);
    denom *= denom;
    weight = (CertifiedReal(1, bits) - x * x) * 2L;
    weight /= denom;
  }
  return nodes;
}

}  // namespace spinepr
