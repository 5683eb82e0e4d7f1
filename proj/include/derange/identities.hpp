#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace derange {

enum class IdentityId {
  MainSumRule,
  ClassicalSumRule,
  RecurrenceConsistency,
  ShiftD1,
  BaseCases,
  EgfRDerangement,
  EgfBDerangement,
  NearestInteger,
  LahSumRulePrinted,
  LahSumRuleShifted,
  LahSumRuleSecondForm,
  ConvolutionEquivalence,
  OracleRDerangement,
  OracleBDerangement,
  OracleLah,
};

inline constexpr std::array kAllIdentities{
    IdentityId::MainSumRule,          IdentityId::ClassicalSumRule,
    IdentityId::RecurrenceConsistency, IdentityId::ShiftD1,
    IdentityId::BaseCases,            IdentityId::EgfRDerangement,
    IdentityId::EgfBDerangement,      IdentityId::NearestInteger,
    IdentityId::LahSumRulePrinted,    IdentityId::LahSumRuleShifted,
    IdentityId::LahSumRuleSecondForm, IdentityId::ConvolutionEquivalence,
    IdentityId::OracleRDerangement,   IdentityId::OracleBDerangement,
    IdentityId::OracleLah,
};

/// Kebab-case name used on the command line and in reports.
std::string_view identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

/// One evaluated point: both sides as exact decimal strings.
struct Evaluation {
  std::string params;  // e.g. "n=4,r=2"
  std::string lhs;
  std::string rhs;
  std::string note;  // which route or sub-check disagreed; empty when none

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

struct IdentityReport {
  IdentityId id = IdentityId::MainSumRule;
  std::string grid;
  std::vector<Evaluation> counterexamples;
  // Points recorded whatever the verdict, so a report always shows values.
  std::vector<Evaluation> witnesses;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const noexcept { return counterexamples.empty(); }
};

// Sweep ranges. Each checker reads the fields that apply to it.
struct MainSumRuleGrid { unsigned r_max = 10; unsigned n_max = 300; };
struct ClassicalSumRuleGrid { unsigned n_max = 300; };
struct RecurrenceGrid { unsigned r_max = 10; unsigned n_max = 120; };
struct ShiftD1Grid { unsigned n_min = 1; unsigned n_max = 200; };
struct BaseCasesGrid { unsigned r_max = 30; };
struct EgfRDerangementGrid { unsigned r_max = 8; unsigned order = 64; unsigned product_order = 40; };
struct EgfBDerangementGrid { unsigned order = 64; };
struct NearestIntegerGrid { unsigned n_max = 500; };
struct LahSumRuleGrid { unsigned n_max = 30; unsigned r_max = 6; };  // r starts at 1
struct ConvolutionGrid { unsigned pairs = 20; unsigned length = 33; std::uint64_t seed = 20240607; };
struct OracleRDerangementGrid { unsigned total_max = 9; unsigned r_max = 4; };
struct OracleBDerangementGrid { unsigned n_max = 7; };
struct OracleLahGrid { unsigned n1_max = 8; };

struct Grids {
  MainSumRuleGrid main_sum_rule;
  ClassicalSumRuleGrid classical_sum_rule;
  RecurrenceGrid recurrence;
  ShiftD1Grid shift_d1;
  BaseCasesGrid base_cases;
  EgfRDerangementGrid egf_r_derangement;
  EgfBDerangementGrid egf_b_derangement;
  NearestIntegerGrid nearest_integer;
  LahSumRuleGrid lah_sum_rule;
  ConvolutionGrid convolution;
  OracleRDerangementGrid oracle_r_derangement;
  OracleBDerangementGrid oracle_b_derangement;
  OracleLahGrid oracle_lah;
};

/// Command-line style overrides applied on top of the default grids.
struct GridOverrides {
  std::optional<unsigned> r_max;
  std::optional<unsigned> n_max;
};

Grids apply_overrides(Grids grids, const GridOverrides& overrides);

IdentityReport check_main_sum_rule(const MainSumRuleGrid& grid);
IdentityReport check_classical_sum_rule(const ClassicalSumRuleGrid& grid);
IdentityReport check_recurrence_consistency(const RecurrenceGrid& grid);
IdentityReport check_shift_d1(const ShiftD1Grid& grid);
IdentityReport check_base_cases(const BaseCasesGrid& grid);
IdentityReport check_egf_r_derangement(const EgfRDerangementGrid& grid);
IdentityReport check_egf_b_derangement(const EgfBDerangementGrid& grid);
IdentityReport check_nearest_integer(const NearestIntegerGrid& grid);
/// Printed index, shifted index, and second-form self-equality, in that order.
std::vector<IdentityReport> check_lah_sum_rule(const LahSumRuleGrid& grid);
IdentityReport check_convolution_equivalence(const ConvolutionGrid& grid);
IdentityReport check_oracle_r_derangement(const OracleRDerangementGrid& grid);
IdentityReport check_oracle_b_derangement(const OracleBDerangementGrid& grid);
IdentityReport check_oracle_lah(const OracleLahGrid& grid);

/// Runs one checker on the given grids.
IdentityReport check(IdentityId id, const Grids& grids);

/// Every checker, reports ordered by IdentityId. With parallel set the
/// checkers run concurrently; the result does not depend on it.
std::vector<IdentityReport> check_all(const Grids& grids = {}, bool parallel = false);

}  // namespace derange
