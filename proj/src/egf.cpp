#include "derange/egf.hpp"

#include <string>

namespace derange {

NonIntegralTerm::NonIntegralTerm(std::size_t index, const Rational& value)
    : std::domain_error("term " + std::to_string(index) + " is not an integer: " +
                        to_fraction_string(value)),
      index_(index) {}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
  return TruncatedSeries(std::vector<Rational>(order + 1));
}

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.order() != b.order()) {
    throw OrderMismatch(std::string(op) + ": orders differ (" + std::to_string(a.order()) +
                        " vs " + std::to_string(b.order()) + ")");
  }
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "series sum");
  std::vector<Rational> out(a.coeffs_.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = a.coeffs_[n] + b.coeffs_[n];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries from_terms(std::span<const BigInt> terms) {
  if (terms.empty()) throw std::invalid_argument("from_terms: empty term sequence");
  std::vector<Rational> coeffs;
  coeffs.reserve(terms.size());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    coeffs.push_back(make_rational(terms[n], factorial(static_cast<unsigned>(n))));
  }
  return TruncatedSeries(std::move(coeffs));
}

BigInt term(const TruncatedSeries& series, std::size_t n) {
  if (n > series.order()) {
    throw std::out_of_range("term " + std::to_string(n) + " beyond series order " +
                            std::to_string(series.order()));
  }
  Rational scaled = series[n] * factorial(static_cast<unsigned>(n));
  if (scaled.get_den() != 1) throw NonIntegralTerm(n, scaled);
  return scaled.get_num();
}

TermSequence to_terms(const TruncatedSeries& series) {
  TermSequence out;
  out.reserve(series.order() + 1);
  for (std::size_t n = 0; n <= series.order(); ++n) out.push_back(term(series, n));
  return out;
}

TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "cauchy_product");
  const std::size_t order = a.order();
  std::vector<Rational> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Rational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (a[k] == 0 || b[n - k] == 0) continue;
      sum += a[k] * b[n - k];
    }
    out[n] = std::move(sum);
  }
  return TruncatedSeries(std::move(out));
}

TermSequence binomial_convolution(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("binomial_convolution: lengths differ (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
  }
  TermSequence out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    BigInt sum = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      sum += binomial(static_cast<unsigned>(n), static_cast<std::int64_t>(k)) * a[k] * b[n - k];
    }
    out[n] = std::move(sum);
  }
  return out;
}

TruncatedSeries series_exp(int sign, std::size_t order) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("series_exp: sign must be +1 or -1");
  std::vector<Rational> coeffs;
  coeffs.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    const int numerator = (sign < 0 && n % 2 == 1) ? -1 : 1;
    coeffs.push_back(make_rational(numerator, factorial(static_cast<unsigned>(n))));
  }
  return TruncatedSeries(std::move(coeffs));
}

TruncatedSeries series_reciprocal_pole(long m, unsigned p, std::size_t order) {
  if (p == 0) throw std::invalid_argument("series_reciprocal_pole: p must be >= 1");
  std::vector<Rational> coeffs;
  coeffs.reserve(order + 1);
  BigInt m_pow = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    coeffs.emplace_back(binomial(static_cast<unsigned>(n + p - 1), p - 1) * m_pow);
    m_pow *= m;
  }
  return TruncatedSeries(std::move(coeffs));
}

TruncatedSeries series_shift(const TruncatedSeries& series, std::size_t shift) {
  std::vector<Rational> coeffs(series.order() + 1);
  for (std::size_t n = shift; n <= series.order(); ++n) coeffs[n] = series[n - shift];
  return TruncatedSeries(std::move(coeffs));
}

TruncatedSeries egf_r_derangement(unsigned r, std::size_t order) {
  return series_shift(cauchy_product(series_exp(-1, order), series_reciprocal_pole(1, r + 1, order)),
                      r);
}

TruncatedSeries egf_b_derangement(std::size_t order) {
  return cauchy_product(series_exp(-1, order), series_reciprocal_pole(2, 1, order));
}

}  // namespace derange
