#pragma once

#include <string>

#include <mpfr.h>

#include "spinepr/numerics/exact_rational.hpp"
#include "spinepr/numerics/precision.hpp"

namespace spinepr {

/// Ball arithmetic over MPFR: a midpoint at working precision plus a radius
/// that bounds |midpoint - true value|.
///
/// Every operation accounts for the rounding of the midpoint and propagates
/// input radii with the first-order-exact bounds of the operation, so the
/// result ball always encloses the exact result of the exact inputs. Radii are
/// stored at 64 bits and only ever rounded upward. Mixed-precision operands
/// produce a result at the larger precision.
class CertifiedReal {
 public:
  static constexpr mpfr_prec_t kRadiusBits = 64;

  /// Exact zero.
  explicit CertifiedReal(mpfr_prec_t bits = PrecisionContext::kMinBits);
  CertifiedReal(long value, mpfr_prec_t bits);
  CertifiedReal(long value, const PrecisionContext& ctx) : CertifiedReal(value, ctx.bits()) {}

  static CertifiedReal from_rational(const ExactRational& q, mpfr_prec_t bits);
  static CertifiedReal from_rational(const ExactRational& q, const PrecisionContext& ctx) {
    return from_rational(q, ctx.bits());
  }
  /// The double is taken as exact.
  static CertifiedReal from_double(double value, mpfr_prec_t bits);
  /// Midpoint `value` with an explicit radius (rounded up to the radius precision).
  static CertifiedReal with_radius(double value, double radius, mpfr_prec_t bits);
  /// Rounds an MPFR value to `bits`, tracking the rounding error.
  static CertifiedReal from_mpfr(mpfr_srcptr value, mpfr_prec_t bits);
  static CertifiedReal pi(mpfr_prec_t bits);
  /// sign * sqrt(radicand) with the radicand kept exact until the final root.
  static CertifiedReal signed_sqrt(int sign, const ExactRational& radicand, mpfr_prec_t bits);

  CertifiedReal(const CertifiedReal& other);
  CertifiedReal(CertifiedReal&& other) noexcept;
  CertifiedReal& operator=(const CertifiedReal& other);
  CertifiedReal& operator=(CertifiedReal&& other) noexcept;
  ~CertifiedReal();

  /// Exact ball at this midpoint, widened to `bits` (radius dropped).
  CertifiedReal midpoint(mpfr_prec_t bits) const;
  /// Same ball re-rounded to `bits`; the rounding error joins the radius.
  CertifiedReal rounded(mpfr_prec_t bits) const;

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(mid_); }
  mpfr_srcptr mid() const noexcept { return mid_; }
  mpfr_srcptr rad() const noexcept { return rad_; }

  /// Midpoint rounded to nearest double.
  double estimate() const { return mpfr_get_d(mid_, MPFR_RNDN); }
  /// Radius rounded up to a double (never rounds a nonzero radius to zero).
  double radius() const { return mpfr_get_d(rad_, MPFR_RNDU); }
  bool is_exact() const { return mpfr_zero_p(rad_) != 0; }

  bool certainly_positive() const;
  bool certainly_negative() const;
  bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }
  /// Exact zero: zero midpoint and zero radius.
  bool is_exact_zero() const { return is_exact() && mpfr_zero_p(mid_) != 0; }

  /// Scientific notation with `digits` significant digits for the midpoint.
  std::string mid_string(int digits) const;
  /// Radius in scientific notation, rounded up.
  std::string rad_string(int digits = 3) const;

  CertifiedReal& operator+=(const CertifiedReal& rhs);
  CertifiedReal& operator-=(const CertifiedReal& rhs);
  CertifiedReal& operator*=(const CertifiedReal& rhs);
  CertifiedReal& operator/=(const CertifiedReal& rhs);
  CertifiedReal& operator*=(long rhs);
  CertifiedReal& operator/=(long rhs);
  /// this += a * b
  CertifiedReal& add_product(const CertifiedReal& a, const CertifiedReal& b);

  /// Grows the radius by `extra` (an upper bound on additional error).
  CertifiedReal& inflate(mpfr_srcptr extra);
  CertifiedReal& inflate(double extra);

  friend CertifiedReal operator+(CertifiedReal a, const CertifiedReal& b) { return a += b; }
  friend CertifiedReal operator-(CertifiedReal a, const CertifiedReal& b) { return a -= b; }
  friend CertifiedReal operator*(CertifiedReal a, const CertifiedReal& b) { return a *= b; }
  friend CertifiedReal operator/(CertifiedReal a, const CertifiedReal& b) { return a /= b; }
  friend CertifiedReal operator*(CertifiedReal a, long b) { return a *= b; }
  friend CertifiedReal operator*(long b, CertifiedReal a) { return a *= b; }
  friend CertifiedReal operator/(CertifiedReal a, long b) { return a /= b; }
  friend CertifiedReal operator-(CertifiedReal a);

  friend CertifiedReal sqrt(const CertifiedReal& x);
  friend CertifiedReal cos(const CertifiedReal& x);
  friend CertifiedReal sin(const CertifiedReal& x);
  friend CertifiedReal abs(const CertifiedReal& x);

 private:
  // Adds the rounding error of a just-computed midpoint to the radius.
  void add_rounding_error(int ternary);
  void set_precision_at_least(mpfr_prec_t bits);

  mpfr_t mid_;
  mpfr_t rad_;
};

CertifiedReal pow(const CertifiedReal& base, unsigned long exponent);

/// True when the two balls intersect.
bool overlaps(const CertifiedReal& a, const CertifiedReal& b);
/// Upper bound on |a.mid - b.mid|, as a double.
double mid_distance(const CertifiedReal& a, const CertifiedReal& b);
/// Upper bound on a.rad + b.rad, as a double.
double combined_radius(const CertifiedReal& a, const CertifiedReal& b);
/// Upper bound on |x - y| for any x in a, y in b.
double max_distance(const CertifiedReal& a, const CertifiedReal& b);

}  // namespace spinepr
