#include "derange/arith.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace derange {

namespace {

// Rows of Pascal's triangle beyond this are computed on demand, not stored.
constexpr unsigned kPascalRowLimit = 512;

class FactorialTable {
 public:
  FactorialTable() { values_.emplace_back(1); }

  BigInt get(unsigned n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    values_.reserve(n + 1);
    while (values_.size() <= n) {
      BigInt next = values_.back() * static_cast<unsigned long>(values_.size());
      values_.push_back(std::move(next));
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<BigInt> values_;
};

class PascalTable {
 public:
  PascalTable() { rows_.push_back({BigInt(1)}); }

  BigInt get(unsigned n, unsigned k) {
    {
      std::shared_lock lock(mutex_);
      if (n < rows_.size()) return rows_[n][k];
    }
    std::unique_lock lock(mutex_);
    while (rows_.size() <= n) {
      const auto& prev = rows_.back();
      std::vector<BigInt> row(prev.size() + 1);
      row.front() = 1;
      row.back() = 1;
      for (std::size_t j = 1; j + 1 < row.size(); ++j) row[j] = prev[j - 1] + prev[j];
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

FactorialTable& factorials() {
  static FactorialTable table;
  return table;
}

PascalTable& pascal() {
  static PascalTable table;
  return table;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt factorial(unsigned n) { return factorials().get(n); }

BigInt binomial(unsigned n, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(n)) return 0;
  auto kk = static_cast<unsigned>(k);
  if (n <= kPascalRowLimit) return pascal().get(n, kk);
  if (kk > n - kk) kk = n - kk;
  BigInt result = 1;
  for (unsigned i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), i);
  }
  return result;
}

BigInt rising_factorial(unsigned r, unsigned q) {
  BigInt result = 1;
  for (unsigned i = 1; i <= q; ++i) result *= static_cast<unsigned long>(r) + i;
  return result;
}

BigInt falling_factorial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (unsigned i = 0; i < k; ++i) result *= n - i;
  return result;
}

BigInt power(long base, unsigned exp) {
  BigInt result;
  BigInt b(base);
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exp);
  return result;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

BigInt parse_decimal(const std::string& text) {
  std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("not a decimal integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  return BigInt(text, 10);
}

}  // namespace derange
