#include "spinepr/numerics/exact_rational.hpp"

#include <stdexcept>

namespace spinepr {

ExactRational::ExactRational(long numerator, long denominator)
    : ExactRational(mpz_class(numerator), mpz_class(denominator)) {}

ExactRational::ExactRational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("rational division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

ExactRational binomial(long n, long k) {
  if (n < 0) {
    throw std::domain_error("binomial requires n >= 0");
  }
  if (k < 0 || k > n) {
    return ExactRational(0);
  }
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return ExactRational(result, mpz_class(1));
}

mpz_class factorial(unsigned long n) {
  mpz_class result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

}  // namespace spinepr
