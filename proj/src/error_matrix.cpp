#include "spinepr/error_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace spinepr {

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::special: return "special";
    case Protocol::trivial: return "trivial";
    case Protocol::oversufficient: return "oversufficient";
    case Protocol::binned: return "binned";
    case Protocol::admixed: return "admixed";
    case Protocol::custom: return "custom";
  }
  return "custom";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "special") return Protocol::special;
  if (name == "trivial") return Protocol::trivial;
  if (name == "oversufficient") return Protocol::oversufficient;
  if (name == "binned") return Protocol::binned;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

Spectrum::Spectrum(SpinQuantum spin, std::vector<SpectrumTerm> terms, std::vector<CertifiedReal> measured)
    : spin_(spin), terms_(std::move(terms)), measured_(std::move(measured)) {
  const auto expected = static_cast<std::size_t>(spin_.dimension());
  const std::size_t got = measured_.empty() ? terms_.size() : measured_.size();
  if (got != expected) {
    throw std::domain_error("spectrum length " + std::to_string(got) + " does not match 2j + 1 = " +
                            std::to_string(expected));
  }
  for (const auto& t : terms_) {
    if (t.radicand.sign() < 0) {
      throw std::domain_error("spectrum radicand must be nonnegative");
    }
  }
}

Spectrum Spectrum::exact(SpinQuantum spin, std::vector<SpectrumTerm> terms) {
  return Spectrum(spin, std::move(terms), {});
}

Spectrum Spectrum::rational(SpinQuantum spin, const std::vector<ExactRational>& values) {
  std::vector<SpectrumTerm> terms;
  terms.reserve(values.size());
  for (const auto& v : values) {
    terms.push_back(SpectrumTerm{v.sign() < 0 ? -1 : 1, v * v});
  }
  return Spectrum(spin, std::move(terms), {});
}

Spectrum Spectrum::measured(SpinQuantum spin, std::vector<CertifiedReal> values) {
  if (values.empty()) {
    throw std::domain_error("measured spectrum cannot be empty");
  }
  return Spectrum(spin, {}, std::move(values));
}

CertifiedReal Spectrum::value(int l, mpfr_prec_t bits) const {
  if (!measured_.empty()) {
    return measured_.at(l);
  }
  const auto& t = terms_.at(l);
  return CertifiedReal::signed_sqrt(t.sign, t.radicand, bits);
}

std::vector<CertifiedReal> Spectrum::values(const PrecisionContext& ctx) const {
  std::vector<CertifiedReal> out;
  out.reserve(size());
  for (int l = 0; l < size(); ++l) {
    out.push_back(value(l, ctx.bits()));
  }
  return out;
}

std::optional<ExactRational> Spectrum::exact_square(int l) const {
  if (!measured_.empty()) {
    return std::nullopt;
  }
  return terms_.at(l).radicand;
}

CertifiedReal Spectrum::square(int l, mpfr_prec_t bits) const {
  if (auto q = exact_square(l)) {
    return CertifiedReal::from_rational(*q, bits);
  }
  return measured_.at(l) * measured_.at(l);
}

bool Spectrum::has_unit_leading_term() const {
  if (!measured_.empty()) {
    return overlaps(measured_.front(), CertifiedReal(1, measured_.front().precision()));
  }
  return terms_.front().sign > 0 && terms_.front().radicand == ExactRational(1);
}

ErrorMatrix::ErrorMatrix(SpinQuantum spin, Protocol protocol, const PrecisionContext& ctx, Recipe recipe,
                         std::optional<Spectrum> spectrum)
    : spin_(spin), protocol_(protocol), ctx_(ctx), recipe_(std::move(recipe)), spectrum_(std::move(spectrum)) {
  entries_ = recipe_(ctx_);
}

ErrorMatrix::ErrorMatrix(SpinQuantum spin, Protocol protocol, MatrixEntries entries, const PrecisionContext& ctx)
    : spin_(spin), protocol_(protocol), ctx_(ctx), entries_(std::move(entries)) {
  const auto d = static_cast<std::size_t>(spin_.dimension());
  if (entries_.size() != d) {
    throw std::domain_error("error matrix must be (2j+1) x (2j+1)");
  }
  for (const auto& row : entries_) {
    if (row.size() != d) {
      throw std::domain_error("error matrix must be (2j+1) x (2j+1)");
    }
  }
}

ErrorMatrix ErrorMatrix::at_precision(const PrecisionContext& ctx) const {
  if (!recipe_) {
    throw std::logic_error("error matrix has no recipe to re-evaluate at a new precision");
  }
  return ErrorMatrix(spin_, protocol_, ctx, recipe_, spectrum_);
}

CertifiedReal ErrorMatrix::row_sum(int row) const {
  CertifiedReal sum(ctx_.bits());
  for (const auto& v : entries_.at(row)) {
    sum += v;
  }
  return sum;
}

CertifiedReal ErrorMatrix::column_sum(int col) const {
  CertifiedReal sum(ctx_.bits());
  for (const auto& row : entries_) {
    sum += row.at(col);
  }
  return sum;
}

}  // namespace spinepr
