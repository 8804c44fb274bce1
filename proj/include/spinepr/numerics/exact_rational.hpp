#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace spinepr {

/// Arbitrary-size rational kept in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  ExactRational(long numerator, long denominator);
  ExactRational(const mpz_class& numerator, const mpz_class& denominator);
  explicit ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& get() const noexcept { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  double to_double() const { return value_.get_d(); }
  std::string to_string() const { return value_.get_str(); }

  ExactRational& operator+=(const ExactRational& rhs) { value_ += rhs.value_; return *this; }
  ExactRational& operator-=(const ExactRational& rhs) { value_ -= rhs.value_; return *this; }
  ExactRational& operator*=(const ExactRational& rhs) { value_ *= rhs.value_; return *this; }
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
  friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
  friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
  friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
  friend ExactRational operator-(const ExactRational& v) { return ExactRational(mpq_class(-v.value_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// Exact binomial coefficient; zero when k < 0 or k > n.
ExactRational binomial(long n, long k);

/// n! as an exact integer.
mpz_class factorial(unsigned long n);

}  // namespace spinepr
