#include "derange/identities.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <stdexcept>

#include "derange/arith.hpp"
#include "derange/egf.hpp"
#include "derange/oracle.hpp"
#include "derange/sequences.hpp"

namespace derange {

namespace {

constexpr std::array<std::string_view, kAllIdentities.size()> kIdentityNames{
    "main-sum-rule",
    "classical-sum-rule",
    "recurrence-consistency",
    "shift-d1",
    "base-cases",
    "egf-r-derangement",
    "egf-b-derangement",
    "nearest-integer",
    "lah-sum-rule-printed",
    "lah-sum-rule-shifted",
    "lah-sum-rule-second-form",
    "convolution-equivalence",
    "oracle-r-derangement",
    "oracle-b-derangement",
    "oracle-lah",
};

std::string nr(unsigned n, unsigned r) {
  return "n=" + std::to_string(n) + ",r=" + std::to_string(r);
}

std::string n_only(unsigned n) { return "n=" + std::to_string(n); }

std::string rational_text(const Rational& q) {
  return q.get_den() == 1 ? to_decimal(q.get_num()) : to_fraction_string(q);
}

// Times a checker body and stamps the report.
template <typename Body>
IdentityReport timed(IdentityId id, std::string grid, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport report;
  report.id = id;
  report.grid = std::move(grid);
  body(report);
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

// Records a comparison; returns true when both sides agree.
bool compare(IdentityReport& report, std::string params, const BigInt& lhs, const BigInt& rhs,
             std::string note = {}) {
  if (lhs == rhs) return true;
  report.counterexamples.push_back({std::move(params), to_decimal(lhs), to_decimal(rhs),
                                    std::move(note)});
  return false;
}

void witness(IdentityReport& report, std::string params, const BigInt& lhs, const BigInt& rhs,
             std::string note = {}) {
  report.witnesses.push_back({std::move(params), to_decimal(lhs), to_decimal(rhs),
                              std::move(note)});
}

std::vector<BigInt> r_derangement_terms(unsigned r, unsigned n_max) {
  std::vector<BigInt> terms;
  terms.reserve(n_max + 1);
  for (unsigned k = 0; k <= n_max; ++k) terms.push_back(r_derangement(k, r));
  return terms;
}

BigInt direct_binomial_sum(std::span<const BigInt> terms, unsigned n) {
  BigInt sum = 0;
  for (unsigned k = 0; k <= n; ++k) sum += binomial(n, k) * terms[k];
  return sum;
}

}  // namespace

std::string_view identity_name(IdentityId id) {
  return kIdentityNames.at(static_cast<std::size_t>(id));
}

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < kIdentityNames.size(); ++i)
    if (kIdentityNames[i] == name) return kAllIdentities[i];
  return std::nullopt;
}

Grids apply_overrides(Grids grids, const GridOverrides& overrides) {
  if (const auto r = overrides.r_max) {
    grids.main_sum_rule.r_max = *r;
    grids.recurrence.r_max = *r;
    grids.base_cases.r_max = *r;
    grids.egf_r_derangement.r_max = *r;
    grids.lah_sum_rule.r_max = *r;
    grids.oracle_r_derangement.r_max = *r;
  }
  if (const auto n = overrides.n_max) {
    grids.main_sum_rule.n_max = *n;
    grids.classical_sum_rule.n_max = *n;
    grids.recurrence.n_max = *n;
    grids.shift_d1.n_max = *n;
    grids.egf_r_derangement.order = *n;
    grids.egf_r_derangement.product_order = *n;
    grids.egf_b_derangement.order = *n;
    grids.nearest_integer.n_max = *n;
    grids.lah_sum_rule.n_max = *n;
    grids.convolution.length = *n + 1;
    grids.oracle_r_derangement.total_max = *n;
    grids.oracle_b_derangement.n_max = *n;
    grids.oracle_lah.n1_max = *n;
  }
  return grids;
}

IdentityReport check_main_sum_rule(const MainSumRuleGrid& grid) {
  const std::string desc =
      "r=0.." + std::to_string(grid.r_max) + ",n=r.." + std::to_string(grid.n_max);
  return timed(IdentityId::MainSumRule, desc, [&](IdentityReport& report) {
    const unsigned n_max = grid.n_max;
    const std::vector<BigInt> ones(n_max + 1, BigInt(1));
    const TruncatedSeries exp_plus = series_exp(+1, n_max);
    for (unsigned r = 0; r <= std::min(grid.r_max, n_max); ++r) {
      const auto terms = r_derangement_terms(r, n_max);
      // Route 1: binomial convolution with the all-ones sequence.
      const auto convolved = binomial_convolution(terms, ones);
      // Route 2: Cauchy product of the EGFs, then n! [x^n].
      const auto product = cauchy_product(from_terms(terms), exp_plus);
      for (unsigned n = r; n <= n_max; ++n) {
        const BigInt rhs = factorial(n) * binomial(n, r);
        const BigInt direct = direct_binomial_sum(terms, n);
        compare(report, nr(n, r), direct, rhs, "direct sum");
        compare(report, nr(n, r), convolved[n], rhs, "binomial convolution");
        BigInt via_egf;
        try {
          via_egf = term(product, n);
        } catch (const NonIntegralTerm& e) {
          report.counterexamples.push_back(
              {nr(n, r), rational_text(product[n] * factorial(n)), to_decimal(rhs), "egf product: non-integral"});
          continue;
        }
        compare(report, nr(n, r), via_egf, rhs, "egf product");
        if ((n == 4 && r == 2) || (n == 4 && r == 0) || (n == r && r == 3))
          witness(report, nr(n, r), direct, rhs);
      }
    }
  });
}

IdentityReport check_classical_sum_rule(const ClassicalSumRuleGrid& grid) {
  return timed(IdentityId::ClassicalSumRule, "n=0.." + std::to_string(grid.n_max),
               [&](IdentityReport& report) {
                 std::vector<BigInt> terms;
                 for (unsigned k = 0; k <= grid.n_max; ++k) terms.push_back(derangement(k));
                 const std::vector<BigInt> ones(grid.n_max + 1, BigInt(1));
                 const auto convolved = binomial_convolution(terms, ones);
                 for (unsigned n = 0; n <= grid.n_max; ++n) {
                   const BigInt rhs = factorial(n);
                   const BigInt direct = direct_binomial_sum(terms, n);
                   compare(report, n_only(n), direct, rhs, "direct sum");
                   compare(report, n_only(n), convolved[n], rhs, "binomial convolution");
                   if (n == 4) witness(report, n_only(n), direct, rhs);
                 }
               });
}

IdentityReport check_recurrence_consistency(const RecurrenceGrid& grid) {
  const std::string desc =
      "r=0.." + std::to_string(grid.r_max) + ",n=0.." + std::to_string(grid.n_max);
  return timed(IdentityId::RecurrenceConsistency, desc, [&](IdentityReport& report) {
    for (unsigned r = 0; r <= grid.r_max; ++r) {
      for (unsigned n = 0; n <= grid.n_max; ++n) {
        const BigInt lhs = r_derangement_recurrence(n, r);
        const BigInt rhs = r_derangement(n, r);
        compare(report, nr(n, r), lhs, rhs);
        if (n == 4 && r == 2) witness(report, nr(n, r), lhs, rhs);
      }
    }
  });
}

IdentityReport check_shift_d1(const ShiftD1Grid& grid) {
  const std::string desc = "n=" + std::to_string(grid.n_min) + ".." + std::to_string(grid.n_max);
  return timed(IdentityId::ShiftD1, desc, [&](IdentityReport& report) {
    for (unsigned n = grid.n_min; n <= grid.n_max; ++n) {
      const BigInt lhs = r_derangement(n, 1);
      const BigInt rhs = derangement(n + 1);
      compare(report, n_only(n), lhs, rhs);
      if (n == 3) witness(report, n_only(n), lhs, rhs);
    }
  });
}

IdentityReport check_base_cases(const BaseCasesGrid& grid) {
  const std::string desc = "D_r(r):r=1.." + std::to_string(grid.r_max) +
                           ";D_r(r+1):r=2.." + std::to_string(grid.r_max);
  return timed(IdentityId::BaseCases, desc, [&](IdentityReport& report) {
    for (unsigned r = 1; r <= grid.r_max; ++r) {
      compare(report, nr(r, r), r_derangement(r, r), factorial(r), "D_r(r) = r!");
    }
    for (unsigned r = 2; r <= grid.r_max; ++r) {
      compare(report, nr(r + 1, r), r_derangement(r + 1, r), r * factorial(r + 1),
              "D_r(r+1) = r (r+1)!");
    }
    if (grid.r_max >= 2) {
      witness(report, nr(2, 2), r_derangement(2, 2), factorial(2), "D_r(r) = r!");
      witness(report, nr(3, 2), r_derangement(3, 2), 2 * factorial(3), "D_r(r+1) = r (r+1)!");
    }
  });
}

IdentityReport check_egf_r_derangement(const EgfRDerangementGrid& grid) {
  const std::string desc = "r=0.." + std::to_string(grid.r_max) + ",terms:n=0.." +
                           std::to_string(grid.order) + ",product:n=0.." +
                           std::to_string(grid.product_order);
  return timed(IdentityId::EgfRDerangement, desc, [&](IdentityReport& report) {
    const TruncatedSeries exp_plus = series_exp(+1, grid.product_order);
    for (unsigned r = 0; r <= grid.r_max; ++r) {
      const TruncatedSeries series = egf_r_derangement(r, grid.order);
      for (unsigned n = 0; n <= grid.order; ++n) {
        const BigInt expected = r_derangement(n, r);
        try {
          compare(report, nr(n, r), term(series, n), expected, "egf term");
        } catch (const NonIntegralTerm&) {
          report.counterexamples.push_back({nr(n, r), rational_text(series[n] * factorial(n)),
                                            to_decimal(expected), "egf term: non-integral"});
        }
      }
      // Multiplying by e^x cancels e^{-x}, leaving x^r/(1-x)^{r+1}.
      const TruncatedSeries product =
          cauchy_product(egf_r_derangement(r, grid.product_order), exp_plus);
      for (unsigned n = 0; n <= grid.product_order; ++n) {
        const Rational expected(binomial(n, r));
        if (product[n] != expected) {
          report.counterexamples.push_back({nr(n, r), rational_text(product[n]),
                                            rational_text(expected), "product coefficient"});
        }
        if (n == 4 && r == 2)
          report.witnesses.push_back(
              {nr(n, r), rational_text(product[n]), rational_text(expected), "product coefficient"});
      }
    }
  });
}

IdentityReport check_egf_b_derangement(const EgfBDerangementGrid& grid) {
  return timed(IdentityId::EgfBDerangement, "n=0.." + std::to_string(grid.order),
               [&](IdentityReport& report) {
                 const TruncatedSeries series = egf_b_derangement(grid.order);
                 for (unsigned n = 0; n <= grid.order; ++n) {
                   const BigInt expected = b_derangement(n);
                   try {
                     const BigInt got = term(series, n);
                     compare(report, n_only(n), got, expected);
                     if (n == 4) witness(report, n_only(n), got, expected);
                   } catch (const NonIntegralTerm&) {
                     report.counterexamples.push_back(
                         {n_only(n), rational_text(series[n] * factorial(n)),
                          to_decimal(expected), "non-integral"});
                   }
                 }
               });
}

IdentityReport check_nearest_integer(const NearestIntegerGrid& grid) {
  return timed(IdentityId::NearestInteger, "n=1.." + std::to_string(grid.n_max),
               [&](IdentityReport& report) {
                 for (unsigned n = 1; n <= grid.n_max; ++n) {
                   const BigInt lhs = derangement_nearest_int(n);
                   const BigInt rhs = derangement(n);
                   compare(report, n_only(n), lhs, rhs);
                   if (n == 6) witness(report, n_only(n), lhs, rhs);
                 }
               });
}

std::vector<IdentityReport> check_lah_sum_rule(const LahSumRuleGrid& grid) {
  const std::string desc =
      "n=0.." + std::to_string(grid.n_max) + ",r=1.." + std::to_string(grid.r_max);
  // first_sum = sum_{s<n} C(n,s) (n-s) D_r(s); second_sum = sum_{s<=n} C(n,s) s D_r(n-s)
  struct Sums {
    unsigned n, r;
    BigInt first_sum, second_sum;
  };
  const auto start = std::chrono::steady_clock::now();
  std::vector<Sums> sums;
  for (unsigned r = 1; r <= grid.r_max; ++r) {
    const auto terms = r_derangement_terms(r, grid.n_max);
    for (unsigned n = 0; n <= grid.n_max; ++n) {
      BigInt first = 0;
      BigInt second = 0;
      for (unsigned s = 0; s < n; ++s) first += binomial(n, s) * (n - s) * terms[s];
      for (unsigned s = 0; s <= n; ++s) second += binomial(n, s) * s * terms[n - s];
      sums.push_back({n, r, std::move(first), std::move(second)});
    }
  }
  const auto shared_elapsed = std::chrono::steady_clock::now() - start;

  const auto is_witness = [](unsigned n, unsigned r) { return r == 1 && (n == 2 || n == 3); };

  // Left side L(n, lah_index(r)) against first_sum / (r+1)!.
  const auto lah_variant = [&](IdentityId id, auto lah_index, const std::string& label) {
    return timed(id, desc + ",lhs=" + label, [&](IdentityReport& report) {
      for (const auto& s : sums) {
        const BigInt lhs = lah(s.n, lah_index(s.r));
        const BigInt scale = factorial(s.r + 1);
        BigInt quotient, remainder;
        mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), s.first_sum.get_mpz_t(),
                    scale.get_mpz_t());
        if (remainder != 0) {
          // Not divisible: compare (r+1)! L against the raw sum instead.
          report.counterexamples.push_back({nr(s.n, s.r), to_decimal(lhs * scale),
                                            to_decimal(s.first_sum),
                                            "right side not divisible by (r+1)!; both sides scaled"});
          continue;
        }
        compare(report, nr(s.n, s.r), lhs, quotient);
        if (is_witness(s.n, s.r)) witness(report, nr(s.n, s.r), lhs, quotient);
      }
    });
  };

  std::vector<IdentityReport> reports;
  reports.push_back(lah_variant(IdentityId::LahSumRulePrinted,
                                [](unsigned r) { return r - 1; }, "L(n,r-1)"));
  reports.push_back(lah_variant(IdentityId::LahSumRuleShifted,
                                [](unsigned r) { return r + 1; }, "L(n,r+1)"));
  reports.push_back(timed(IdentityId::LahSumRuleSecondForm, desc + ",unscaled",
                          [&](IdentityReport& report) {
                            for (const auto& s : sums) {
                              compare(report, nr(s.n, s.r), s.first_sum, s.second_sum);
                              if (is_witness(s.n, s.r))
                                witness(report, nr(s.n, s.r), s.first_sum, s.second_sum);
                            }
                          }));
  for (auto& report : reports)
    report.elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(shared_elapsed);
  return reports;
}

IdentityReport check_convolution_equivalence(const ConvolutionGrid& grid) {
  const std::string desc = "pairs=" + std::to_string(grid.pairs) +
                           ",length=" + std::to_string(grid.length) +
                           ",seed=" + std::to_string(grid.seed);
  return timed(IdentityId::ConvolutionEquivalence, desc, [&](IdentityReport& report) {
    if (grid.length == 0) return;
    std::mt19937_64 engine(grid.seed);
    // Signed values up to 2^96 in magnitude, built from raw engine output.
    const auto draw = [&engine] {
      BigInt value(static_cast<unsigned long>(engine()));
      value <<= 32;
      value += static_cast<unsigned long>(engine() >> 32);
      if (engine() & 1U) value = -value;
      return value;
    };
    for (unsigned pair = 0; pair < grid.pairs; ++pair) {
      TermSequence a(grid.length);
      TermSequence b(grid.length);
      for (auto& v : a) v = draw();
      for (auto& v : b) v = draw();
      const TermSequence direct = binomial_convolution(a, b);
      const TruncatedSeries product = cauchy_product(from_terms(a), from_terms(b));
      for (unsigned n = 0; n < grid.length; ++n) {
        const std::string params = "pair=" + std::to_string(pair) + ",n=" + std::to_string(n);
        try {
          const BigInt via_product = term(product, n);
          compare(report, params, direct[n], via_product);
          if (pair == 0 && n + 1 == grid.length) witness(report, params, direct[n], via_product);
        } catch (const NonIntegralTerm&) {
          report.counterexamples.push_back({params, to_decimal(direct[n]),
                                            rational_text(product[n] * factorial(n)),
                                            "product term non-integral"});
        }
      }
    }
  });
}

IdentityReport check_oracle_r_derangement(const OracleRDerangementGrid& grid) {
  const std::string desc = "n+r<=" + std::to_string(grid.total_max) +
                           ",r=0.." + std::to_string(grid.r_max);
  return timed(IdentityId::OracleRDerangement, desc, [&](IdentityReport& report) {
    for (unsigned total = 0; total <= grid.total_max; ++total) {
      for (unsigned r = 0; r <= std::min(grid.r_max, total); ++r) {
        const unsigned n = total - r;
        const BigInt counted = oracle::count_r_derangements(oracle::Config(n, r, false));
        const BigInt closed = r_derangement(n, r);
        compare(report, nr(n, r), counted, closed);
        if (n == 4 && r == 2) witness(report, nr(n, r), counted, closed);
      }
    }
  });
}

IdentityReport check_oracle_b_derangement(const OracleBDerangementGrid& grid) {
  return timed(IdentityId::OracleBDerangement, "n=0.." + std::to_string(grid.n_max),
               [&](IdentityReport& report) {
                 for (unsigned n = 0; n <= grid.n_max; ++n) {
                   const BigInt counted =
                       oracle::count_signed_derangements(oracle::Config(n, 0, true));
                   const BigInt closed = b_derangement(n);
                   compare(report, n_only(n), counted, closed);
                   witness(report, n_only(n), counted, closed);
                 }
               });
}

IdentityReport check_oracle_lah(const OracleLahGrid& grid) {
  return timed(IdentityId::OracleLah, "n1=0.." + std::to_string(grid.n1_max) + ",n2=0..n1",
               [&](IdentityReport& report) {
                 for (unsigned n1 = 0; n1 <= grid.n1_max; ++n1) {
                   for (unsigned n2 = 0; n2 <= n1; ++n2) {
                     const std::string params =
                         "n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2);
                     const BigInt counted = oracle::count_ordered_partitions(n1, n2);
                     const BigInt closed = lah(n1, n2);
                     compare(report, params, counted, closed);
                     if (n1 == 3 && n2 == 2) witness(report, params, counted, closed);
                   }
                 }
               });
}

IdentityReport check(IdentityId id, const Grids& grids) {
  switch (id) {
    case IdentityId::MainSumRule:
      return check_main_sum_rule(grids.main_sum_rule);
    case IdentityId::ClassicalSumRule:
      return check_classical_sum_rule(grids.classical_sum_rule);
    case IdentityId::RecurrenceConsistency:
      return check_recurrence_consistency(grids.recurrence);
    case IdentityId::ShiftD1:
      return check_shift_d1(grids.shift_d1);
    case IdentityId::BaseCases:
      return check_base_cases(grids.base_cases);
    case IdentityId::EgfRDerangement:
      return check_egf_r_derangement(grids.egf_r_derangement);
    case IdentityId::EgfBDerangement:
      return check_egf_b_derangement(grids.egf_b_derangement);
    case IdentityId::NearestInteger:
      return check_nearest_integer(grids.nearest_integer);
    case IdentityId::LahSumRulePrinted:
      return check_lah_sum_rule(grids.lah_sum_rule)[0];
    case IdentityId::LahSumRuleShifted:
      return check_lah_sum_rule(grids.lah_sum_rule)[1];
    case IdentityId::LahSumRuleSecondForm:
      return check_lah_sum_rule(grids.lah_sum_rule)[2];
    case IdentityId::ConvolutionEquivalence:
      return check_convolution_equivalence(grids.convolution);
    case IdentityId::OracleRDerangement:
      return check_oracle_r_derangement(grids.oracle_r_derangement);
    case IdentityId::OracleBDerangement:
      return check_oracle_b_derangement(grids.oracle_b_derangement);
    case IdentityId::OracleLah:
      return check_oracle_lah(grids.oracle_lah);
  }
  throw std::logic_error("unknown identity");
}

std::vector<IdentityReport> check_all(const Grids& grids, bool parallel) {
  // The three Lah variants share one sweep.
  const auto run_one = [&grids](IdentityId id) -> std::vector<IdentityReport> {
    if (id == IdentityId::LahSumRulePrinted) return check_lah_sum_rule(grids.lah_sum_rule);
    if (id == IdentityId::LahSumRuleShifted || id == IdentityId::LahSumRuleSecondForm) return {};
    return {check(id, grids)};
  };
  std::vector<std::vector<IdentityReport>> parts;
  if (parallel) {
    std::vector<std::future<std::vector<IdentityReport>>> pending;
    for (IdentityId id : kAllIdentities) pending.push_back(std::async(std::launch::async, run_one, id));
    for (auto& f : pending) parts.push_back(f.get());
  } else {
    for (IdentityId id : kAllIdentities) parts.push_back(run_one(id));
  }
  std::vector<IdentityReport> reports;
  for (auto& part : parts)
    for (auto& report : part) reports.push_back(std::move(report));
  std::stable_sort(reports.begin(), reports.end(),
                   [](const auto& a, const auto& b) { return a.id < b.id; });
  return reports;
}

}  // namespace derange
