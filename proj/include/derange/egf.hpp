#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "derange/arith.hpp"

namespace derange {

/// Product of two series whose truncation orders differ.
class OrderMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n! [x^n] A is not an integer, so A is not the EGF of an integer sequence at n.
class NonIntegralTerm : public std::domain_error {
 public:
  NonIntegralTerm(std::size_t index, const Rational& value);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Power series kept through x^order, stored by ordinary coefficients.
/// An EGF of a_n is stored with coeffs[n] = a_n / n!.
class TruncatedSeries {
 public:
  /// Throws std::invalid_argument on an empty coefficient list.
  explicit TruncatedSeries(std::vector<Rational> coeffs);

  static TruncatedSeries zero(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }
  /// Coefficientwise sum; orders must match.
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::vector<Rational> coeffs_;
};

/// Integer term sequence a_0, a_1, ... of an EGF.
using TermSequence = std::vector<BigInt>;

TruncatedSeries from_terms(std::span<const BigInt> terms);

/// a_n = n! coeffs[n] for every n; throws NonIntegralTerm at the first failure.
TermSequence to_terms(const TruncatedSeries& series);

/// n! [x^n] A. Throws std::out_of_range for n > order, NonIntegralTerm otherwise.
BigInt term(const TruncatedSeries& series, std::size_t n);

/// w_n = sum_{k<=n} u_k v_{n-k}.
TruncatedSeries cauchy_product(const TruncatedSeries& a, const TruncatedSeries& b);

/// c_n = sum_{k<=n} C(n,k) a_k b_{n-k}. Lengths must match.
TermSequence binomial_convolution(std::span<const BigInt> a, std::span<const BigInt> b);

/// e^{sign x}; sign must be +1 or -1.
TruncatedSeries series_exp(int sign, std::size_t order);

/// 1/(1 - m x)^p with coefficients C(n+p-1, p-1) m^n. Requires p >= 1.
TruncatedSeries series_reciprocal_pole(long m, unsigned p, std::size_t order);

/// Multiplication by x^shift at fixed order.
TruncatedSeries series_shift(const TruncatedSeries& series, std::size_t shift);

/// x^r e^{-x} / (1-x)^{r+1}.
TruncatedSeries egf_r_derangement(unsigned r, std::size_t order);

/// e^{-x} / (1-2x).
TruncatedSeries egf_b_derangement(std::size_t order);

}  // namespace derange
