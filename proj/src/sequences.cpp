#include "derange/sequences.hpp"

#include <array>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace derange {

namespace {

// floor(num/den + 1/2) for den > 0.
BigInt round_half_up(const BigInt& num, const BigInt& den) {
  BigInt twice = 2 * num + den;
  BigInt doubled_den = 2 * den;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), doubled_den.get_mpz_t());
  return q;
}

}  // namespace

BigInt derangement(unsigned n) {
  // sum_{i=0}^{n} (-1)^i n!/i!, walking i downward so n!/i! grows by one factor per step.
  BigInt sum = 0;
  BigInt term = 1;  // n!/i! at i = n
  for (unsigned i = n + 1; i-- > 0;) {
    if (i % 2 == 0)
      sum += term;
    else
      sum -= term;
    term *= i;
  }
  return sum;
}

BigInt derangement_nearest_int(unsigned n) {
  if (n == 0) throw std::invalid_argument("derangement_nearest_int: n must be >= 1");
  const BigInt n_fact = factorial(n);
  // With A = sum_{k<=m} m!/k!, e lies strictly inside
  //   (A/m!, (A(m+1) + 2)/((m+1) m!))
  // since the tail sum_{k>m} 1/k! is below 2/(m+1)!.
  for (unsigned m = n + 2;; m += m / 2 + 1) {
    const BigInt m_fact = factorial(m);
    BigInt a = 0;
    BigInt term = 1;
    for (unsigned k = m + 1; k-- > 0;) {
      a += term;
      term *= k;
    }
    // n!/e in (lo, hi) with lo = n! (m+1) m! / (A(m+1)+2), hi = n! m! / A
    const BigInt hi = round_half_up(n_fact * m_fact, a);
    const BigInt lo = round_half_up(n_fact * (m + 1) * m_fact, a * (m + 1) + 2);
    if (lo == hi) return lo;
  }
}

BigInt r_derangement(unsigned n, unsigned r) {
  if (n < r) return 0;
  BigInt sum = 0;
  for (unsigned j = r; j <= n; ++j) {
    BigInt term = binomial(j, r) * falling_factorial(n, j);
    if ((n - j) % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

namespace {

// rows_[s][m] = D_s(m). Rows grow on demand and are shared by all callers.
class RecurrenceMemo {
 public:
  BigInt get(unsigned n, unsigned r) {
    {
      std::shared_lock lock(mutex_);
      if (r < rows_.size() && n < rows_[r].size()) return rows_[r][n];
    }
    std::unique_lock lock(mutex_);
    if (rows_.size() <= r) rows_.resize(r + 1);
    for (unsigned s = 0; s <= r; ++s) extend(s, n);
    return rows_[r][n];
  }

 private:
  void extend(unsigned s, unsigned n) {
    auto& row = rows_[s];
    for (auto m = static_cast<unsigned>(row.size()); m <= n; ++m) {
      if (m <= 2 || s == 0) {
        row.push_back(r_derangement(m, s));
        continue;
      }
      const auto& prev = rows_[s - 1];  // already extended through n
      BigInt value = s * prev[m - 1] + (m - 1) * row[m - 2] +
                     static_cast<unsigned long>(m + s - 1) * row[m - 1];
      row.push_back(std::move(value));
    }
  }

  std::shared_mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

RecurrenceMemo& recurrence_memo() {
  static RecurrenceMemo memo;
  return memo;
}

}  // namespace

BigInt r_derangement_recurrence(unsigned n, unsigned r) {
  if (n <= 2 || r == 0) return r_derangement(n, r);
  return recurrence_memo().get(n, r);
}

BigInt b_derangement(unsigned n) {
  BigInt sum = 0;
  for (unsigned k = 0; k <= n; ++k) {
    BigInt term = power(2, n - k) * falling_factorial(n, n - k);
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

BigInt lah(unsigned n1, unsigned n2) {
  if (n1 == 0 && n2 == 0) return 1;
  if (n2 == 0 || n2 > n1) return 0;
  BigInt value = binomial(n1 - 1, n2 - 1) * factorial(n1);
  mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), factorial(n2).get_mpz_t());
  return value;
}

BigInt b_stirling_k0(unsigned n, unsigned r) {
  BigInt sum = 0;
  for (unsigned j = 0; j <= r; ++j) {
    sum += binomial(r, j) * power(2, n + r - j) * factorial(r - j) * lah(n, r - j);
  }
  return sum;
}

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FamilyInfo, 5> kFamilies{{
    {Family::Derangement, "derangement", 0},
    {Family::RDerangement, "r-derangement", 1},
    {Family::BDerangement, "b-derangement", 0},
    {Family::Lah, "lah", 1},
    {Family::BStirlingK0, "b-stirling-k0", 1},
}};

const FamilyInfo& info(Family family) {
  for (const auto& f : kFamilies)
    if (f.family == family) return f;
  throw std::logic_error("unknown family");
}

}  // namespace

std::size_t family_arity(Family family) { return info(family).arity; }

std::string_view family_name(Family family) { return info(family).name; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& f : kFamilies)
    if (f.name == name) return f.family;
  return std::nullopt;
}

void SequenceId::validate() const {
  if (params.size() != family_arity(family)) {
    throw std::invalid_argument(std::string(family_name(family)) + " takes " +
                                std::to_string(family_arity(family)) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
}

std::string format_params(const std::vector<unsigned>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(params[i]);
  }
  return out;
}

BigInt evaluate(const SequenceId& id, unsigned n) {
  id.validate();
  switch (id.family) {
    case Family::Derangement:
      return derangement(n);
    case Family::RDerangement:
      return r_derangement(n, id.params[0]);
    case Family::BDerangement:
      return b_derangement(n);
    case Family::Lah:
      return lah(n, id.params[0]);
    case Family::BStirlingK0:
      return b_stirling_k0(n, id.params[0]);
  }
  throw std::logic_error("unknown family");
}

}  // namespace derange
