#include "spinepr/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spinepr/epr.hpp"
#include "spinepr/numerics/orthopoly.hpp"

namespace spinepr {

namespace {

bool is_exactly(const CertifiedReal& x, long value) { return x.is_exact() && mpfr_cmp_si(x.mid(), value) == 0; }

MatrixEntries rational_matrix(const std::vector<std::vector<ExactRational>>& q, mpfr_prec_t bits) {
  MatrixEntries out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i].reserve(q[i].size());
    for (const auto& v : q[i]) {
      out[i].push_back(CertifiedReal::from_rational(v, bits));
    }
  }
  return out;
}

MatrixEntries spectral_matrix(const Spectrum& spectrum, const ChebyshevBasis& basis, mpfr_prec_t bits) {
  const int d = basis.dimension();
  std::vector<CertifiedReal> c;
  c.reserve(d);
  for (int l = 0; l < d; ++l) {
    c.push_back(spectrum.value(l, bits));
  }
  MatrixEntries out(d, std::vector<CertifiedReal>(d, CertifiedReal(bits)));
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      CertifiedReal sum(bits);
      for (int l = 0; l < d; ++l) {
        if (c[l].is_exact_zero()) {
          continue;
        }
        sum.add_product(CertifiedReal::from_rational(basis.product(l, a, b), bits), c[l]);
      }
      sum /= static_cast<long>(d);
      out[a][b] = sum;
      out[b][a] = std::move(sum);
    }
  }
  return out;
}

// Ordering key for scan minima: certified negatives by value, balls that
// straddle zero as zero, and exact values preferred on ties.
struct Rank {
  double key;
  int inexact;
  bool operator<(const Rank& o) const { return key != o.key ? key < o.key : inexact < o.inexact; }
};

Rank rank_of(const CertifiedReal& v) {
  if (v.certainly_negative() || v.certainly_positive()) {
    return Rank{v.estimate(), v.is_exact() ? 0 : 1};
  }
  return Rank{0.0, v.is_exact() ? 0 : 1};
}

}  // namespace

Spectrum spectrum_special(SpinQuantum spin) {
  const int d = spin.dimension();
  std::vector<SpectrumTerm> terms;
  ExactRational square(1);
  for (int l = 0; l < d; ++l) {
    if (l > 0) {
      square *= ExactRational(d - l, d + l);
    }
    terms.push_back(SpectrumTerm{1, square});
  }
  return Spectrum::exact(spin, std::move(terms));
}

Spectrum spectrum_trivial(SpinQuantum spin) {
  std::vector<ExactRational> values(spin.dimension(), ExactRational(0));
  values[0] = ExactRational(1);
  return Spectrum::rational(spin, values);
}

Spectrum spectrum_oversufficient(SpinQuantum spin) {
  const Spectrum special = spectrum_special(spin);
  std::vector<ExactRational> values;
  for (int l = 0; l < spin.dimension(); ++l) {
    values.push_back(*special.exact_square(l));
  }
  return Spectrum::rational(spin, values);
}

Spectrum spectrum_for(Protocol protocol, SpinQuantum spin) {
  switch (protocol) {
    case Protocol::special: return spectrum_special(spin);
    case Protocol::trivial: return spectrum_trivial(spin);
    case Protocol::oversufficient: return spectrum_oversufficient(spin);
    default: break;
  }
  throw std::domain_error("protocol '" + std::string(to_string(protocol)) + "' has no spectrum");
}

ErrorMatrix build_R(const Spectrum& spectrum, const ChebyshevBasis& basis, Protocol tag) {
  if (spectrum.spin() != basis.spin()) {
    throw std::domain_error("spectrum and basis have different spins");
  }
  if (!spectrum.has_unit_leading_term()) {
    throw std::domain_error("c_0 must equal 1 for a stochastic error matrix");
  }
  if (!spectrum.is_exact()) {
    return ErrorMatrix(basis.spin(), tag, spectral_matrix(spectrum, basis, basis.context().bits()),
                       basis.context());
  }
  auto shared = std::make_shared<const ChebyshevBasis>(basis);
  ErrorMatrix::Recipe recipe = [shared, spectrum](const PrecisionContext& ctx) {
    return spectral_matrix(spectrum, *shared, ctx.bits());
  };
  return ErrorMatrix(basis.spin(), tag, basis.context(), std::move(recipe), spectrum);
}

CertifiedReal error_matrix_entry(const Spectrum& spectrum, const ChebyshevBasis& basis, int row, int col,
                                 mpfr_prec_t bits) {
  CertifiedReal sum(bits);
  for (int l = 0; l < basis.dimension(); ++l) {
    sum.add_product(CertifiedReal::from_rational(basis.product(l, row, col), bits), spectrum.value(l, bits));
  }
  return sum / static_cast<long>(basis.dimension());
}

std::vector<std::vector<ExactRational>> binned_entries(SpinQuantum spin) {
  const int two_j = spin.two_j();
  const int d = spin.dimension();
  std::vector<std::vector<ExactRational>> out(d, std::vector<ExactRational>(d));
  for (int col = 0; col < d; ++col) {
    // F_{j m'}(x) = binom(2j, a) ((1+x)/2)^a ((1-x)/2)^b, a = j + m'.
    const int a = col;
    const int b = two_j - col;
    std::vector<ExactRational> poly(two_j + 1, ExactRational(0));
    for (int i = 0; i <= a; ++i) {
      for (int t = 0; t <= b; ++t) {
        ExactRational term = binomial(a, i) * binomial(b, t);
        poly[i + t] += (t % 2 == 0) ? term : -term;
      }
    }
    // binom(2j, a) 2^{-2j} d / 2
    const ExactRational scale =
        binomial(two_j, a) * ExactRational(mpz_class(d), mpz_class(1) << (two_j + 1));
    for (int row = 0; row < d; ++row) {
      const ExactRational lo(spin.two_m(row) - 1, d);
      const ExactRational hi(spin.two_m(row) + 1, d);
      ExactRational integral(0);
      ExactRational lo_pow = lo;
      ExactRational hi_pow = hi;
      for (int k = 0; k <= two_j; ++k) {
        integral += poly[k] * (hi_pow - lo_pow) / ExactRational(k + 1);
        lo_pow *= lo;
        hi_pow *= hi;
      }
      out[row][col] = scale * integral;
    }
  }
  return out;
}

ErrorMatrix build_R_binned(SpinQuantum spin, const PrecisionContext& ctx) {
  auto exact = std::make_shared<const std::vector<std::vector<ExactRational>>>(binned_entries(spin));
  ErrorMatrix::Recipe recipe = [exact](const PrecisionContext& c) { return rational_matrix(*exact, c.bits()); };
  return ErrorMatrix(spin, Protocol::binned, ctx, std::move(recipe));
}

ErrorMatrix build_protocol(Protocol protocol, const ChebyshevBasis& basis) {
  if (protocol == Protocol::binned) {
    return build_R_binned(basis.spin(), basis.context());
  }
  return build_R(spectrum_for(protocol, basis.spin()), basis, protocol);
}

ErrorMatrix build_R_admixed(SpinQuantum spin, const ExactRational& lambda, const PrecisionContext& ctx) {
  if (lambda < ExactRational(0) || lambda > ExactRational(1)) {
    throw std::domain_error("admixture weight must lie in [0, 1]");
  }
  auto exact = binned_entries(spin);
  const ExactRational uniform = lambda / ExactRational(spin.dimension());
  const ExactRational keep = ExactRational(1) - lambda;
  for (auto& row : exact) {
    for (auto& v : row) {
      v = keep * v + uniform;
    }
  }
  auto shared = std::make_shared<const std::vector<std::vector<ExactRational>>>(std::move(exact));
  ErrorMatrix::Recipe recipe = [shared](const PrecisionContext& c) { return rational_matrix(*shared, c.bits()); };
  return ErrorMatrix(spin, Protocol::admixed, ctx, std::move(recipe));
}

CertifiedReal special_one_axis_closed(SpinQuantum spin, int two_m, const CertifiedReal& cos_alpha) {
  const int a = spin.index_of(two_m);
  const int b = spin.two_j() - a;
  const mpfr_prec_t bits = cos_alpha.precision();
  const CertifiedReal one(1, bits);
  const CertifiedReal up = (one + cos_alpha) / 2L;
  const CertifiedReal down = (one - cos_alpha) / 2L;
  CertifiedReal value = CertifiedReal::from_rational(binomial(spin.two_j(), a), bits);
  value *= pow(up, static_cast<unsigned long>(a));
  value *= pow(down, static_cast<unsigned long>(b));
  return value;
}

SmoothedOneAxis::SmoothedOneAxis(const ErrorMatrix& r, const ChebyshevBasis& basis)
    : spin_(basis.spin()), protocol_(r.protocol()), bits_(basis.context().bits()) {
  if (r.spin() != basis.spin()) {
    throw std::domain_error("error matrix and basis have different spins");
  }
  const int d = spin_.dimension();
  // G[m'][l] = sqrt(2l+1) f_l(m') / d
  std::vector<CertifiedReal> roots;
  for (int l = 0; l < d; ++l) {
    roots.push_back(CertifiedReal::signed_sqrt(1, ExactRational(2 * l + 1), bits_) / static_cast<long>(d));
  }
  coefficients_.assign(d, std::vector<CertifiedReal>(d, CertifiedReal(bits_)));
  for (int m = 0; m < d; ++m) {
    for (int l = 0; l < d; ++l) {
      CertifiedReal sum(bits_);
      for (int k = 0; k < d; ++k) {
        sum.add_product(r(m, k), basis.f(l, k));
      }
      coefficients_[m][l] = sum * roots[l];
    }
  }
}

std::vector<CertifiedReal> SmoothedOneAxis::operator()(const CertifiedReal& cos_alpha) const {
  const int d = spin_.dimension();
  std::vector<CertifiedReal> out;
  out.reserve(d);
  if (protocol_ == Protocol::special && (is_exactly(cos_alpha, 1) || is_exactly(cos_alpha, -1))) {
    for (int k = 0; k < d; ++k) {
      out.push_back(special_one_axis_closed(spin_, spin_.two_m(k), cos_alpha));
    }
    return out;
  }
  const auto p = legendre_sequence(static_cast<unsigned>(spin_.two_j()),
                                   cos_alpha.rounded(std::max(bits_, cos_alpha.precision())));
  for (int m = 0; m < d; ++m) {
    CertifiedReal sum(bits_);
    for (int l = 0; l < d; ++l) {
      sum.add_product(coefficients_[m][l], p[l]);
    }
    out.push_back(std::move(sum));
  }
  return out;
}

CertifiedReal smoothed_one_axis(const ErrorMatrix& r, const ChebyshevBasis& basis, int two_m,
                                const CertifiedReal& cos_alpha) {
  const int index = basis.spin().index_of(two_m);
  return SmoothedOneAxis(r, basis)(cos_alpha)[index];
}

std::string_view to_string(PositivityVerdict verdict) {
  switch (verdict) {
    case PositivityVerdict::positive: return "positive";
    case PositivityVerdict::negative: return "negative";
    case PositivityVerdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

PositivityCertificate certify_positivity(const ErrorMatrix& r, const PrecisionContext& ctx) {
  PrecisionContext current = ctx;
  MatrixEntries entries = (r.can_reevaluate() && r.context().bits() != ctx.bits())
                              ? r.at_precision(ctx).entries()
                              : r.entries();
  const int d = r.dimension();
  PositivityCertificate cert;
  cert.entries = d * d;
  while (true) {
    cert.negative_entries = 0;
    cert.indeterminate_entries = 0;
    int min_row = 0;
    int min_col = 0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const auto& v = entries[a][b];
        if (v.certainly_negative()) {
          ++cert.negative_entries;
        } else if (!v.certainly_positive()) {
          ++cert.indeterminate_entries;
        }
        if (mpfr_cmp(v.mid(), entries[min_row][min_col].mid()) < 0) {
          min_row = a;
          min_col = b;
        }
      }
    }
    cert.min_row = min_row;
    cert.min_col = min_col;
    cert.min_entry = entries[min_row][min_col];
    cert.bits_used = static_cast<int>(current.bits());
    if (cert.indeterminate_entries == 0 || !r.can_reevaluate() || !current.can_escalate()) {
      break;
    }
    current = current.escalated();
    entries = r.at_precision(current).entries();
  }
  if (cert.negative_entries > 0) {
    cert.verdict = PositivityVerdict::negative;
  } else if (cert.indeterminate_entries > 0) {
    cert.verdict = PositivityVerdict::indeterminate;
  } else {
    cert.verdict = PositivityVerdict::positive;
  }
  return cert;
}

std::string_view to_string(SufficiencyVerdict verdict) {
  switch (verdict) {
    case SufficiencyVerdict::sufficient: return "sufficient";
    case SufficiencyVerdict::minimally_sufficient: return "minimally-sufficient";
    case SufficiencyVerdict::insufficient: return "insufficient";
    case SufficiencyVerdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

SufficiencyReport sufficiency_scan(const ErrorMatrix& r, const ChebyshevBasis& basis, int grid_n) {
  if (grid_n < 100) {
    throw std::domain_error("sufficiency scan needs at least 100 grid points");
  }
  const SmoothedOneAxis smoothed(r, basis);
  const SpinQuantum spin = basis.spin();
  const int d = spin.dimension();
  const mpfr_prec_t bits = basis.context().bits();

  SufficiencyReport report;
  report.grid_n = grid_n;
  bool have_min = false;
  auto consider = [&](int k, double x, const CertifiedReal& v) {
    ++report.evaluations;
    if (v.certainly_negative()) {
      ++report.negative_points;
    }
    if (v.is_exact_zero()) {
      report.exact_zeros.emplace_back(spin.two_m(k), x);
    }
    if (!have_min || rank_of(v) < rank_of(report.minimum.value)) {
      report.minimum = ScanPoint{spin.two_m(k), x, v};
      have_min = true;
    }
  };

  auto grid_x = [&](int i) {
    if (i == 0) return -1.0;
    if (i == grid_n - 1) return 1.0;
    return -1.0 + 2.0 * i / (grid_n - 1);
  };

  // Lowest three (rank, grid index, m) triples for refinement.
  struct Candidate {
    Rank rank;
    int index;
    int k;
  };
  std::vector<Candidate> lowest;
  for (int i = 0; i < grid_n; ++i) {
    const double x = grid_x(i);
    const auto values = smoothed(CertifiedReal::from_double(x, bits));
    for (int k = 0; k < d; ++k) {
      consider(k, x, values[k]);
      lowest.push_back(Candidate{rank_of(values[k]), i, k});
      std::sort(lowest.begin(), lowest.end(), [](const Candidate& a, const Candidate& b) { return a.rank < b.rank; });
      if (lowest.size() > 3) {
        lowest.pop_back();
      }
    }
  }

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (const auto& c : lowest) {
    double lo = grid_x(std::max(c.index - 1, 0));
    double hi = grid_x(std::min(c.index + 1, grid_n - 1));
    auto f = [&](double x) {
      const auto v = smoothed(CertifiedReal::from_double(x, bits))[c.k];
      consider(c.k, x, v);
      return v.estimate();
    };
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 40 && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = f(x2);
      }
    }
  }

  const CertifiedReal& m = report.minimum.value;
  mpfr_t threshold;
  mpfr_init2(threshold, 64);
  mpfr_set_si_2exp(threshold, 1, -static_cast<long>(bits / 2), MPFR_RNDN);
  if (report.negative_points > 0) {
    report.verdict = SufficiencyVerdict::insufficient;
  } else if (m.certainly_positive()) {
    report.verdict = SufficiencyVerdict::sufficient;
  } else if (m.is_exact() || mpfr_cmp(m.rad(), threshold) < 0) {
    report.verdict = SufficiencyVerdict::minimally_sufficient;
  } else {
    report.verdict = SufficiencyVerdict::indeterminate;
  }
  mpfr_clear(threshold);
  return report;
}

AgnosticReport check_agnostic(const ErrorMatrix& r, const ChebyshevBasis& basis, double tol) {
  if (!(tol > 0.0)) {
    throw std::domain_error("agnosticism tolerance must be positive");
  }
  const int d = basis.dimension();
  const mpfr_prec_t bits = basis.context().bits();
  std::vector<CertifiedReal> c;
  double max_residual = 0.0;
  int worst = 0;
  for (int l = 0; l < d; ++l) {
    std::vector<CertifiedReal> image(d, CertifiedReal(bits));
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        image[a].add_product(r(a, b), basis.f(l, b));
      }
    }
    CertifiedReal quotient(bits);
    for (int a = 0; a < d; ++a) {
      quotient.add_product(basis.f(l, a), image[a]);
    }
    quotient /= static_cast<long>(d);
    for (int a = 0; a < d; ++a) {
      const CertifiedReal residual = image[a] - quotient * basis.f(l, a);
      const double bound = max_distance(residual, CertifiedReal(bits));
      if (bound > max_residual) {
        max_residual = bound;
        worst = l;
      }
    }
    c.push_back(std::move(quotient));
  }
  return AgnosticReport{max_residual < tol, Spectrum::measured(basis.spin(), std::move(c)), max_residual, worst};
}

AdmixtureSearch minimal_admixture(const ChebyshevBasis& basis, int grid_n, double tolerance) {
  const SpinQuantum spin = basis.spin();
  const int d = spin.dimension();
  const ErrorMatrix binned = build_R_binned(spin, basis.context());
  const SufficiencyReport base = sufficiency_scan(binned, basis, grid_n);
  const double mu = base.minimum.value.estimate();

  // R(lambda) smooths to (1 - lambda) p_bar + lambda / d: monotone in lambda,
  // so the sign of the cached minimum decides.
  double lo = 0.0;
  double hi = 1.0;
  auto ok = [&](double lambda) { return (1.0 - lambda) * mu + lambda / d >= 0.0; };
  if (base.negative_points == 0) {
    hi = 0.0;
  } else {
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
  }
  // Round up to a dyadic rational and certify the result with a fresh scan.
  const long denom = 1L << 40;
  const long numer = std::min(denom, static_cast<long>(std::ceil(hi * static_cast<double>(denom))) + 1);
  const ExactRational lambda = hi == 0.0 ? ExactRational(0) : ExactRational(numer, denom);
  const ErrorMatrix mixed = build_R_admixed(spin, lambda, basis.context());
  return AdmixtureSearch{lambda.to_double(), mu, sufficiency_scan(mixed, basis, grid_n)};
}

std::string_view to_string(SigmaReading reading) {
  return reading == SigmaReading::printed ? "printed" : "scaled";
}

double gaussian_approx(SpinQuantum spin, int two_m, int two_m_prime, SigmaReading reading) {
  if (spin.two_j() == 0) {
    throw std::domain_error("the Gaussian approximation needs j > 0");
  }
  spin.index_of(two_m);
  spin.index_of(two_m_prime);
  const double j = spin.j_value();
  const double x = two_m / (2.0 * j);
  const double xp = two_m_prime / (2.0 * j);
  const double sigma2 = reading == SigmaReading::printed ? 1.0 - xp * xp / (2.0 * j) : (1.0 - xp * xp) / (2.0 * j);
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("Gaussian width vanishes at |m'| = j");
  }
  return std::exp(-(x - xp) * (x - xp) / (2.0 * sigma2)) / (j * std::sqrt(2.0 * std::numbers::pi * sigma2));
}

CertifiedReal h_function(const ChebyshevBasis& basis, int two_m, const CertifiedReal& x) {
  return one_axis(basis, two_m, x);
}

}  // namespace spinepr
