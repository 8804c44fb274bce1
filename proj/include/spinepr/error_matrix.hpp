#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinepr/numerics/certified_real.hpp"
#include "spinepr/spin_basis.hpp"

namespace spinepr {

enum class Protocol { special, trivial, oversufficient, binned, admixed, custom };

std::string_view to_string(Protocol protocol);
/// Accepts special, trivial, oversufficient, binned.
Protocol parse_protocol(std::string_view name);

/// One spectral value c_l = sign * sqrt(radicand), held exactly.
struct SpectrumTerm {
  int sign = 1;
  ExactRational radicand;
};

/// Eigenvalues c_0..c_{2j} of an agnostic error matrix on the f_l basis.
///
/// Exact spectra can be re-evaluated at any precision; measured spectra (for
/// example Rayleigh quotients of an arbitrary matrix) carry fixed balls.
/// c_0 = 1 is required wherever stochasticity matters and is checked at
/// those use sites.
class Spectrum {
 public:
  static Spectrum exact(SpinQuantum spin, std::vector<SpectrumTerm> terms);
  static Spectrum rational(SpinQuantum spin, const std::vector<ExactRational>& values);
  static Spectrum measured(SpinQuantum spin, std::vector<CertifiedReal> values);

  const SpinQuantum& spin() const noexcept { return spin_; }
  int size() const noexcept { return spin_.dimension(); }
  bool is_exact() const noexcept { return measured_.empty(); }

  CertifiedReal value(int l, mpfr_prec_t bits) const;
  std::vector<CertifiedReal> values(const PrecisionContext& ctx) const;
  /// c_l^2, exact when the spectrum is.
  std::optional<ExactRational> exact_square(int l) const;
  CertifiedReal square(int l, mpfr_prec_t bits) const;
  const SpectrumTerm& term(int l) const { return terms_.at(l); }

  /// c_0 = 1 exactly (exact spectra) or within radius (measured spectra).
  bool has_unit_leading_term() const;

 private:
  Spectrum(SpinQuantum spin, std::vector<SpectrumTerm> terms, std::vector<CertifiedReal> measured);

  SpinQuantum spin_;
  std::vector<SpectrumTerm> terms_;
  std::vector<CertifiedReal> measured_;
};

using MatrixEntries = std::vector<std::vector<CertifiedReal>>;

/// Doubly stochastic detector error matrix: R(row, col) is the probability
/// that spin m' = col is registered in the bin for m = row.
class ErrorMatrix {
 public:
  /// Rebuilds the entries from exact data at a requested precision.
  using Recipe = std::function<MatrixEntries(const PrecisionContext&)>;

  ErrorMatrix(SpinQuantum spin, Protocol protocol, const PrecisionContext& ctx, Recipe recipe,
              std::optional<Spectrum> spectrum = std::nullopt);
  /// Fixed entries with no way to re-evaluate them.
  ErrorMatrix(SpinQuantum spin, Protocol protocol, MatrixEntries entries, const PrecisionContext& ctx);

  const SpinQuantum& spin() const noexcept { return spin_; }
  int dimension() const noexcept { return spin_.dimension(); }
  Protocol protocol() const noexcept { return protocol_; }
  const PrecisionContext& context() const noexcept { return ctx_; }
  const std::optional<Spectrum>& spectrum() const noexcept { return spectrum_; }
  const MatrixEntries& entries() const noexcept { return entries_; }
  const CertifiedReal& operator()(int row, int col) const { return entries_[row][col]; }

  bool can_reevaluate() const noexcept { return static_cast<bool>(recipe_); }
  ErrorMatrix at_precision(const PrecisionContext& ctx) const;

  CertifiedReal row_sum(int row) const;
  CertifiedReal column_sum(int col) const;

 private:
  SpinQuantum spin_;
  Protocol protocol_;
  PrecisionContext ctx_;
  Recipe recipe_;
  std::optional<Spectrum> spectrum_;
  MatrixEntries entries_;
};

}  // namespace spinepr
