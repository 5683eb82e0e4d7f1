#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace derange {

// Exact signed integer of unbounded size. Every sequence value lives here.
using BigInt = mpz_class;

// Exact rational, always kept in lowest terms with a positive denominator.
// GMP arithmetic results are canonical; values built from a raw
// numerator/denominator pair must go through make_rational().
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error if den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// n! (memoized, safe for concurrent callers).
BigInt factorial(unsigned n);

/// C(n, k), with C(n, k) = 0 for k < 0 or k > n.
BigInt binomial(unsigned n, std::int64_t k);

/// (r+1)(r+2)...(r+q) = (r+q)!/r!; 1 for q == 0.
BigInt rising_factorial(unsigned r, unsigned q);

/// n!/(n-k)! = n(n-1)...(n-k+1); 0 for k > n.
BigInt falling_factorial(unsigned n, unsigned k);

/// base^exp for small integer bases.
BigInt power(long base, unsigned exp);

/// Decimal rendering without separators or exponent.
std::string to_decimal(const BigInt& value);

/// "num/den" with den >= 1, always both parts.
std::string to_fraction_string(const Rational& value);

/// Parses an optionally '-'-signed decimal integer. Throws std::invalid_argument.
BigInt parse_decimal(const std::string& text);

}  // namespace derange
