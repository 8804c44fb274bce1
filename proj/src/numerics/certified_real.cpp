#include "spinepr/numerics/certified_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace spinepr {
namespace {

// Per-thread 64-bit temporaries for radius bookkeeping.
struct RadiusScratch {
  mpfr_t a, b, c;
  RadiusScratch() {
    mpfr_inits2(CertifiedReal::kRadiusBits, a, b, c, static_cast<mpfr_ptr>(nullptr));
  }
  ~RadiusScratch() { mpfr_clears(a, b, c, static_cast<mpfr_ptr>(nullptr)); }
  RadiusScratch(const RadiusScratch&) = delete;
  RadiusScratch& operator=(const RadiusScratch&) = delete;
};

RadiusScratch& scratch() {
  thread_local RadiusScratch s;
  return s;
}

std::string format_mpfr(const char* fmt, int digits, mpfr_srcptr value) {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, fmt, digits, value) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

CertifiedReal::CertifiedReal(mpfr_prec_t bits) {
  mpfr_init2(mid_, bits);
  mpfr_init2(rad_, kRadiusBits);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

CertifiedReal::CertifiedReal(long value, mpfr_prec_t bits) : CertifiedReal(bits) {
  add_rounding_error(mpfr_set_si(mid_, value, MPFR_RNDN));
}

CertifiedReal CertifiedReal::from_rational(const ExactRational& q, mpfr_prec_t bits) {
  CertifiedReal out(bits);
  out.add_rounding_error(mpfr_set_q(out.mid_, q.get().get_mpq_t(), MPFR_RNDN));
  return out;
}

CertifiedReal CertifiedReal::from_double(double value, mpfr_prec_t bits) {
  CertifiedReal out(std::max<mpfr_prec_t>(bits, 53));
  mpfr_set_d(out.mid_, value, MPFR_RNDN);
  return out;
}

CertifiedReal CertifiedReal::with_radius(double value, double radius, mpfr_prec_t bits) {
  if (!(radius >= 0)) {
    throw std::invalid_argument("radius must be nonnegative");
  }
  CertifiedReal out = from_double(value, bits);
  mpfr_set_d(out.rad_, radius, MPFR_RNDU);
  return out;
}

CertifiedReal CertifiedReal::from_mpfr(mpfr_srcptr value, mpfr_prec_t bits) {
  CertifiedReal out(bits);
  out.add_rounding_error(mpfr_set(out.mid_, value, MPFR_RNDN));
  return out;
}

CertifiedReal CertifiedReal::pi(mpfr_prec_t bits) {
  CertifiedReal out(bits);
  out.add_rounding_error(mpfr_const_pi(out.mid_, MPFR_RNDN));
  return out;
}

CertifiedReal CertifiedReal::signed_sqrt(int sign, const ExactRational& radicand, mpfr_prec_t bits) {
  if (radicand.sign() < 0) {
    throw std::domain_error("square root of a negative rational");
  }
  CertifiedReal root = sqrt(from_rational(radicand, bits));
  return sign < 0 ? -root : root;
}

CertifiedReal::CertifiedReal(const CertifiedReal& other) {
  mpfr_init2(mid_, other.precision());
  mpfr_init2(rad_, kRadiusBits);
  mpfr_set(mid_, other.mid_, MPFR_RNDN);
  mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept {
  mpfr_init2(mid_, MPFR_PREC_MIN);
  mpfr_init2(rad_, MPFR_PREC_MIN);
  mpfr_swap(mid_, other.mid_);
  mpfr_swap(rad_, other.rad_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
  if (this != &other) {
    mpfr_set_prec(mid_, other.precision());
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
  }
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
  mpfr_swap(mid_, other.mid_);
  mpfr_swap(rad_, other.rad_);
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

CertifiedReal CertifiedReal::midpoint(mpfr_prec_t bits) const {
  CertifiedReal out(std::max(bits, precision()));
  mpfr_set(out.mid_, mid_, MPFR_RNDN);
  return out;
}

CertifiedReal CertifiedReal::rounded(mpfr_prec_t bits) const {
  CertifiedReal out(bits);
  mpfr_set(out.rad_, rad_, MPFR_RNDU);
  out.add_rounding_error(mpfr_set(out.mid_, mid_, MPFR_RNDN));
  return out;
}

void CertifiedReal::add_rounding_error(int ternary) {
  if (ternary == 0 || mpfr_zero_p(mid_)) {
    return;
  }
  // Round-to-nearest error is at most half an ulp: 2^(exp - prec - 1).
  auto& s = scratch();
  mpfr_set_ui_2exp(s.a, 1, mpfr_get_exp(mid_) - precision() - 1, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.a, MPFR_RNDU);
}

void CertifiedReal::set_precision_at_least(mpfr_prec_t bits) {
  if (bits > precision()) {
    mpfr_prec_round(mid_, bits, MPFR_RNDN);  // widening is exact
  }
}

bool CertifiedReal::certainly_positive() const { return mpfr_cmp(mid_, rad_) > 0; }

bool CertifiedReal::certainly_negative() const {
  return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

std::string CertifiedReal::mid_string(int digits) const {
  return format_mpfr("%.*Re", std::max(digits - 1, 0), mid_);
}

std::string CertifiedReal::rad_string(int digits) const {
  return format_mpfr("%.*RUe", std::max(digits - 1, 0), rad_);
}

CertifiedReal& CertifiedReal::operator+=(const CertifiedReal& rhs) {
  set_precision_at_least(rhs.precision());
  mpfr_add(rad_, rad_, rhs.rad_, MPFR_RNDU);
  add_rounding_error(mpfr_add(mid_, mid_, rhs.mid_, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::operator-=(const CertifiedReal& rhs) {
  set_precision_at_least(rhs.precision());
  mpfr_add(rad_, rad_, rhs.rad_, MPFR_RNDU);
  add_rounding_error(mpfr_sub(mid_, mid_, rhs.mid_, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::operator*=(const CertifiedReal& rhs) {
  set_precision_at_least(rhs.precision());
  auto& s = scratch();
  // |a|rb + |b|ra + ra*rb
  mpfr_abs(s.a, mid_, MPFR_RNDU);
  mpfr_mul(s.a, s.a, rhs.rad_, MPFR_RNDU);
  mpfr_abs(s.b, rhs.mid_, MPFR_RNDU);
  mpfr_mul(s.b, s.b, rad_, MPFR_RNDU);
  mpfr_mul(s.c, rad_, rhs.rad_, MPFR_RNDU);
  mpfr_add(rad_, s.a, s.b, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.c, MPFR_RNDU);
  add_rounding_error(mpfr_mul(mid_, mid_, rhs.mid_, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::add_product(const CertifiedReal& a, const CertifiedReal& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) {
    return *this;
  }
  // Fused path: one rounding of the midpoint instead of two.
  set_precision_at_least(std::max(a.precision(), b.precision()));
  auto& s = scratch();
  mpfr_abs(s.a, a.mid_, MPFR_RNDU);
  mpfr_mul(s.a, s.a, b.rad_, MPFR_RNDU);
  mpfr_abs(s.b, b.mid_, MPFR_RNDU);
  mpfr_mul(s.b, s.b, a.rad_, MPFR_RNDU);
  mpfr_mul(s.c, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.a, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.b, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.c, MPFR_RNDU);
  add_rounding_error(mpfr_fma(mid_, a.mid_, b.mid_, mid_, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::operator/=(const CertifiedReal& rhs) {
  set_precision_at_least(rhs.precision());
  auto& s = scratch();
  // Lower bound on |b| over the divisor ball.
  mpfr_abs(s.a, rhs.mid_, MPFR_RNDD);
  mpfr_sub(s.a, s.a, rhs.rad_, MPFR_RNDD);
  if (mpfr_sgn(s.a) <= 0) {
    throw std::domain_error("division by a ball containing zero");
  }
  mpfr_t quotient;
  mpfr_init2(quotient, precision());
  const int ternary = mpfr_div(quotient, mid_, rhs.mid_, MPFR_RNDN);
  // Rounding error of the quotient midpoint.
  mpfr_set_zero(s.c, 1);
  if (ternary != 0 && !mpfr_zero_p(quotient)) {
    mpfr_set_ui_2exp(s.c, 1, mpfr_get_exp(quotient) - precision() - 1, MPFR_RNDU);
  }
  // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
  mpfr_abs(s.b, quotient, MPFR_RNDU);
  mpfr_add(s.b, s.b, s.c, MPFR_RNDU);
  mpfr_mul(s.b, s.b, rhs.rad_, MPFR_RNDU);
  mpfr_add(s.b, s.b, rad_, MPFR_RNDU);
  mpfr_div(rad_, s.b, s.a, MPFR_RNDU);
  mpfr_add(rad_, rad_, s.c, MPFR_RNDU);
  mpfr_swap(mid_, quotient);
  mpfr_clear(quotient);
  return *this;
}

CertifiedReal& CertifiedReal::operator*=(long rhs) {
  mpfr_mul_ui(rad_, rad_, static_cast<unsigned long>(std::labs(rhs)), MPFR_RNDU);
  add_rounding_error(mpfr_mul_si(mid_, mid_, rhs, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::operator/=(long rhs) {
  if (rhs == 0) {
    throw std::domain_error("division by zero");
  }
  mpfr_div_ui(rad_, rad_, static_cast<unsigned long>(std::labs(rhs)), MPFR_RNDU);
  add_rounding_error(mpfr_div_si(mid_, mid_, rhs, MPFR_RNDN));
  return *this;
}

CertifiedReal& CertifiedReal::inflate(mpfr_srcptr extra) {
  mpfr_add(rad_, rad_, extra, MPFR_RNDU);
  return *this;
}

CertifiedReal& CertifiedReal::inflate(double extra) {
  if (!(extra >= 0)) {
    throw std::invalid_argument("radius inflation must be nonnegative");
  }
  mpfr_add_d(rad_, rad_, extra, MPFR_RNDU);
  return *this;
}

CertifiedReal operator-(CertifiedReal a) {
  mpfr_neg(a.mid_, a.mid_, MPFR_RNDN);
  return a;
}

CertifiedReal abs(const CertifiedReal& x) {
  CertifiedReal out(x);
  mpfr_abs(out.mid_, out.mid_, MPFR_RNDN);
  return out;
}

CertifiedReal sqrt(const CertifiedReal& x) {
  CertifiedReal out(x.precision());
  if (x.is_exact_zero()) {
    return out;
  }
  auto& s = scratch();
  mpfr_sub(s.a, x.mid_, x.rad_, MPFR_RNDD);
  if (mpfr_sgn(s.a) > 0) {
    // |sqrt(y) - sqrt(m)| = |y - m| / (sqrt(y) + sqrt(m)) <= r / sqrt(m)
    mpfr_sqrt(s.b, x.mid_, MPFR_RNDD);
    mpfr_div(out.rad_, x.rad_, s.b, MPFR_RNDU);
    out.add_rounding_error(mpfr_sqrt(out.mid_, x.mid_, MPFR_RNDN));
    return out;
  }
  mpfr_add(s.b, x.mid_, x.rad_, MPFR_RNDU);
  if (mpfr_sgn(s.b) < 0) {
    throw std::domain_error("square root of a negative ball");
  }
  // Ball straddles zero; the argument is a nonnegative quantity, so the
  // root lies in [0, sqrt(m + r)].
  mpfr_sqrt(s.b, s.b, MPFR_RNDU);
  mpfr_div_2ui(s.b, s.b, 1, MPFR_RNDU);
  mpfr_set(out.mid_, s.b, MPFR_RNDN);
  mpfr_set(out.rad_, s.b, MPFR_RNDU);
  return out;
}

CertifiedReal cos(const CertifiedReal& x) {
  CertifiedReal out(x.precision());
  mpfr_set(out.rad_, x.rad_, MPFR_RNDU);
  out.add_rounding_error(mpfr_cos(out.mid_, x.mid_, MPFR_RNDN));
  return out;
}

CertifiedReal sin(const CertifiedReal& x) {
  CertifiedReal out(x.precision());
  mpfr_set(out.rad_, x.rad_, MPFR_RNDU);
  out.add_rounding_error(mpfr_sin(out.mid_, x.mid_, MPFR_RNDN));
  return out;
}

CertifiedReal pow(const CertifiedReal& base, unsigned long exponent) {
  CertifiedReal result(1, base.precision());
  CertifiedReal square(base);
  while (exponent != 0) {
    if ((exponent & 1UL) != 0) {
      result *= square;
    }
    exponent >>= 1;
    if (exponent != 0) {
      square *= square;
    }
  }
  return result;
}

bool overlaps(const CertifiedReal& a, const CertifiedReal& b) {
  mpfr_t gap, reach;
  mpfr_init2(gap, CertifiedReal::kRadiusBits);
  mpfr_init2(reach, CertifiedReal::kRadiusBits);
  mpfr_sub(gap, a.mid(), b.mid(), MPFR_RNDZ);
  mpfr_abs(gap, gap, MPFR_RNDZ);
  mpfr_add(reach, a.rad(), b.rad(), MPFR_RNDU);
  const bool result = mpfr_lessequal_p(gap, reach) != 0;
  mpfr_clears(gap, reach, static_cast<mpfr_ptr>(nullptr));
  return result;
}

double mid_distance(const CertifiedReal& a, const CertifiedReal& b) {
  mpfr_t gap;
  mpfr_init2(gap, CertifiedReal::kRadiusBits);
  mpfr_sub(gap, a.mid(), b.mid(), MPFR_RNDA);
  const double out = mpfr_get_d(gap, MPFR_RNDA);
  mpfr_clear(gap);
  return out < 0 ? -out : out;
}

double combined_radius(const CertifiedReal& a, const CertifiedReal& b) {
  mpfr_t reach;
  mpfr_init2(reach, CertifiedReal::kRadiusBits);
  mpfr_add(reach, a.rad(), b.rad(), MPFR_RNDU);
  const double out = mpfr_get_d(reach, MPFR_RNDU);
  mpfr_clear(reach);
  return out;
}

double max_distance(const CertifiedReal& a, const CertifiedReal& b) {
  mpfr_t gap;
  mpfr_init2(gap, CertifiedReal::kRadiusBits);
  mpfr_sub(gap, a.mid(), b.mid(), MPFR_RNDA);
  mpfr_abs(gap, gap, MPFR_RNDU);
  mpfr_add(gap, gap, a.rad(), MPFR_RNDU);
  mpfr_add(gap, gap, b.rad(), MPFR_RNDU);
  const double out = mpfr_get_d(gap, MPFR_RNDU);
  mpfr_clear(gap);
  return out;
}

}  // namespace spinepr
