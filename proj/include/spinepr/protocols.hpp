#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "spinepr/error_matrix.hpp"
#include "spinepr/spin_basis.hpp"

namespace spinepr {

/// c_l = prod_{k=1}^{l} sqrt((d-k)/(d+k)), radicands exact.
Spectrum spectrum_special(SpinQuantum spin);
/// c_l = delta_{l0}.
Spectrum spectrum_trivial(SpinQuantum spin);
/// c_l = (special c_l)^2, rational.
Spectrum spectrum_oversufficient(SpinQuantum spin);
/// Spectrum of a named agnostic protocol; binned has none and throws.
Spectrum spectrum_for(Protocol protocol, SpinQuantum spin);

/// R[m][m'] = d^{-1} sum_l c_l f_l(m) f_l(m'). Throws std::domain_error
/// unless c_0 = 1. Exact spectra yield matrices that can be re-evaluated at
/// higher precision.
ErrorMatrix build_R(const Spectrum& spectrum, const ChebyshevBasis& basis, Protocol tag = Protocol::custom);
/// One entry of build_R without assembling the whole matrix.
CertifiedReal error_matrix_entry(const Spectrum& spectrum, const ChebyshevBasis& basis, int row, int col,
                                 mpfr_prec_t bits);

/// Binned protocol: R[m][m'] = (d/2) int over [(2m-1)/d, (2m+1)/d] of
/// F_{j m'}, integrated exactly.
std::vector<std::vector<ExactRational>> binned_entries(SpinQuantum spin);
ErrorMatrix build_R_binned(SpinQuantum spin, const PrecisionContext& ctx);

/// Any of special, trivial, oversufficient, binned.
ErrorMatrix build_protocol(Protocol protocol, const ChebyshevBasis& basis);

/// (1 - lambda) R_binned + lambda R_trivial.
ErrorMatrix build_R_admixed(SpinQuantum spin, const ExactRational& lambda, const PrecisionContext& ctx);

/// p_bar(m | n) for the special protocol in closed form:
/// binom(2j, j-m) ((1+x)/2)^{j+m} ((1-x)/2)^{j-m}; exact for exact x.
CertifiedReal special_one_axis_closed(SpinQuantum spin, int two_m, const CertifiedReal& cos_alpha);

/// Evaluates p_bar(m | n) = sum_m' R[m][m'] p(m' | n) for every m through the
/// precomputed Legendre coefficients M = R G.
class SmoothedOneAxis {
 public:
  SmoothedOneAxis(const ErrorMatrix& r, const ChebyshevBasis& basis);

  std::vector<CertifiedReal> operator()(const CertifiedReal& cos_alpha) const;
  const SpinQuantum& spin() const noexcept { return spin_; }

 private:
  SpinQuantum spin_;
  Protocol protocol_;
  mpfr_prec_t bits_;
  std::vector<std::vector<CertifiedReal>> coefficients_;  // [m][l]
};

CertifiedReal smoothed_one_axis(const ErrorMatrix& r, const ChebyshevBasis& basis, int two_m,
                                const CertifiedReal& cos_alpha);

enum class PositivityVerdict { positive, negative, indeterminate };
std::string_view to_string(PositivityVerdict verdict);

struct PositivityCertificate {
  PositivityVerdict verdict = PositivityVerdict::indeterminate;
  int min_row = 0;  // index of m
  int min_col = 0;  // index of m'
  CertifiedReal min_entry;
  int bits_used = 0;
  int negative_entries = 0;
  int indeterminate_entries = 0;
  int entries = 0;
};

/// Resolves the sign of every entry, doubling precision from ctx.bits() up
/// to ctx.max_bits() when R can be re-evaluated.
PositivityCertificate certify_positivity(const ErrorMatrix& r, const PrecisionContext& ctx);

enum class SufficiencyVerdict { sufficient, minimally_sufficient, insufficient, indeterminate };
std::string_view to_string(SufficiencyVerdict verdict);

struct ScanPoint {
  int two_m = 0;
  double cos_alpha = 0.0;
  CertifiedReal value;
};

struct SufficiencyReport {
  SufficiencyVerdict verdict = SufficiencyVerdict::indeterminate;
  ScanPoint minimum;
  int grid_n = 0;
  long evaluations = 0;
  /// Points where p_bar is an exact zero.
  std::vector<std::pair<int, double>> exact_zeros;
  /// Number of certified negative values seen.
  long negative_points = 0;
};

/// Scans every m over an evenly spaced cos(alpha) grid that includes +-1,
/// then refines around the three lowest grid points by golden section.
/// Throws std::domain_error for grid_n < 100.
SufficiencyReport sufficiency_scan(const ErrorMatrix& r, const ChebyshevBasis& basis, int grid_n = 2048);

struct AgnosticReport {
  bool agnostic = false;
  /// Rayleigh quotients d^{-1} f_l . R f_l.
  Spectrum spectrum;
  /// max_l sup_m |(R f_l)(m) - c_l f_l(m)|, upper bound.
  double max_residual = 0.0;
  int worst_l = 0;
};

AgnosticReport check_agnostic(const ErrorMatrix& r, const ChebyshevBasis& basis, double tol);

/// Smallest lambda in [0, 1] making the admixed binned protocol sufficient on
/// a scan grid, by bisection on cached grid values.
struct AdmixtureSearch {
  double lambda = 0.0;
  double binned_minimum = 0.0;
  SufficiencyReport report;  // scan of R(lambda) with lambda rounded up
};
AdmixtureSearch minimal_admixture(const ChebyshevBasis& basis, int grid_n = 2048, double tolerance = 1e-9);

/// Width readings for the Gaussian approximation of the special protocol.
enum class SigmaReading { printed, scaled };
std::string_view to_string(SigmaReading reading);

/// (1 / (j sqrt(2 pi sigma^2))) exp(-(x_m - x_m')^2 / (2 sigma^2)), x_m = m/j.
/// printed: sigma^2 = 1 - x_m'^2 / 2j;  scaled: sigma^2 = (1 - x_m'^2) / 2j.
/// Throws std::domain_error for j = 0 or sigma^2 <= 0.
double gaussian_approx(SpinQuantum spin, int two_m, int two_m_prime, SigmaReading reading);

/// h_m(x) = d^{-1} sum_l sqrt(2l+1) f_l(m) P_l(x).
CertifiedReal h_function(const ChebyshevBasis& basis, int two_m, const CertifiedReal& x);

}  // namespace spinepr
