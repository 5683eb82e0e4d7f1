// Acceptance run: one line per criterion, exit status 0 only if all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "derange/arith.hpp"
#include "derange/cli.hpp"
#include "derange/egf.hpp"
#include "derange/identities.hpp"
#include "derange/oracle.hpp"
#include "derange/report_io.hpp"
#include "derange/sequences.hpp"

using namespace derange;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
};

std::string describe(const IdentityReport& report) {
  std::string s = std::string(identity_name(report.id)) + " [" + report.grid + "] " +
                  std::to_string(report.counterexamples.size()) + " counterexamples";
  if (!report.counterexamples.empty()) {
    const auto& c = report.counterexamples.front();
    s += ", first " + c.params + ": " + c.lhs + " vs " + c.rhs;
  }
  return s;
}

void require_pass(Outcome& o, const IdentityReport& report) {
  o.require(report.passed(), describe(report));
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Values recorded for a given point, looked up among witnesses and counterexamples.
const Evaluation* find_point(const IdentityReport& report, const std::string& params) {
  for (const auto& list : {&report.witnesses, &report.counterexamples})
    for (const auto& e : *list)
      if (e.params == params) return &e;
  return nullptr;
}

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// --- criteria -------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t points = 0;
  for (unsigned r = 0; r <= 4; ++r) {
    for (unsigned n = r; n + r <= 9; ++n) {
      const BigInt counted = oracle::count_r_derangements(oracle::Config(n, r, false));
      const BigInt closed = r_derangement(n, r);
      o.require(counted == closed, "n=" + std::to_string(n) + ",r=" + std::to_string(r) + ": " +
                                       counted.get_str() + " vs " + closed.get_str());
      ++points;
    }
  }
  // Spot values independent of any closed form.
  o.require(oracle::count_r_derangements(oracle::Config(2, 2, false)) == 2, "D_2(2) != 2");
  o.require(oracle::count_r_derangements(oracle::Config(4, 2, false)) == 84, "D_2(4) != 84");
  require_pass(o, check_oracle_r_derangement({}));
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  if (o.ok) o.detail = std::to_string(points) + " points";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const std::vector<unsigned long> frozen{1, 1, 5, 29, 233, 2329, 27949, 391285};
  for (unsigned n = 0; n <= 7; ++n) {
    const BigInt counted = oracle::count_signed_derangements(oracle::Config(n, 0, true));
    o.require(counted == frozen[n], "oracle n=" + std::to_string(n) + ": " + counted.get_str());
    o.require(b_derangement(n) == counted, "closed form n=" + std::to_string(n));
  }
  require_pass(o, check_oracle_b_derangement({}));
  if (o.ok) o.detail = "prefix 1,1,5,29,233,2329,27949,391285";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  for (unsigned n1 = 0; n1 <= 8; ++n1)
    for (unsigned n2 = 0; n2 <= n1; ++n2)
      o.require(oracle::count_ordered_partitions(n1, n2) == lah(n1, n2),
                "n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2));
  require_pass(o, check_oracle_lah({}));
  if (o.ok) o.detail = "45 points";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const auto start = Clock::now();
  const auto report = check_main_sum_rule({});
  require_pass(o, report);
  o.require(report.grid.find("300") != std::string::npos, "grid " + report.grid);
  const double elapsed = seconds_since(start);
  o.require(elapsed < 300.0, "took " + std::to_string(elapsed) + " s");
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto report = check_classical_sum_rule({});
  require_pass(o, report);
  // Independent spot check at n = 300.
  BigInt sum = 0;
  for (unsigned k = 0; k <= 300; ++k) sum += binomial(300, k) * derangement(k);
  o.require(sum == factorial(300), "direct sum at n=300");
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto report = check_recurrence_consistency({});
  require_pass(o, report);
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto report = check_shift_d1({});
  require_pass(o, report);
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto report = check_base_cases({});
  require_pass(o, report);
  for (unsigned r = 1; r <= 30; ++r) {
    o.require(r_derangement(r, r) == factorial(r), "D_r(r), r=" + std::to_string(r));
    if (r >= 2)
      o.require(r_derangement(r + 1, r) == BigInt(r) * factorial(r + 1),
                "D_r(r+1), r=" + std::to_string(r));
  }
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const auto report = check_nearest_integer({});
  require_pass(o, report);
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_10() {
  Outcome o;
  require_pass(o, check_egf_r_derangement({}));
  require_pass(o, check_egf_b_derangement({}));
  // Product with e^x directly, outside the harness.
  for (unsigned r = 0; r <= 8; ++r) {
    const auto product = cauchy_product(egf_r_derangement(r, 40), series_exp(+1, 40));
    for (unsigned n = 0; n <= 40; ++n)
      o.require(product[n] == Rational(binomial(n, r)),
                "e^x product r=" + std::to_string(r) + ",n=" + std::to_string(n));
  }
  if (o.ok) o.detail = "r<=8, order 64, product order 40";
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const auto report = check_convolution_equivalence({});
  require_pass(o, report);
  if (o.ok) o.detail = report.grid;
  return o;
}

Outcome criterion_12() {
  Outcome o;
  const auto reports = check_lah_sum_rule({});
  o.require(reports.size() == 3, "expected three reports");
  if (reports.size() != 3) return o;
  const auto& printed = reports[0];
  const auto& shifted = reports[1];
  const auto& second = reports[2];
  o.require(printed.id == IdentityId::LahSumRulePrinted, "first report is not the printed index");
  o.require(shifted.id == IdentityId::LahSumRuleShifted, "second report is not the shifted index");
  o.require(second.id == IdentityId::LahSumRuleSecondForm, "third report is not the second form");
  require_pass(o, second);
  for (const auto* report : {&printed, &shifted}) {
    for (const char* point : {"n=2,r=1", "n=3,r=1"}) {
      const Evaluation* e = find_point(*report, point);
      o.require(e != nullptr && !e->lhs.empty() && !e->rhs.empty(),
                std::string(identity_name(report->id)) + " lacks values at " + point);
    }
  }
  // Counterexample listings must match an independent count of disagreeing points:
  // L(n, j) (r+1)! against sum_{s<n} C(n,s) (n-s) D_r(s), cross-multiplied.
  std::vector<std::string> printed_bad;
  std::vector<std::string> shifted_bad;
  for (unsigned r = 1; r <= 6; ++r) {
    for (unsigned n = 0; n <= 30; ++n) {
      BigInt sum = 0;
      for (unsigned s = 0; s < n; ++s) sum += binomial(n, s) * (n - s) * r_derangement(s, r);
      const std::string point = "n=" + std::to_string(n) + ",r=" + std::to_string(r);
      if (lah(n, r - 1) * factorial(r + 1) != sum) printed_bad.push_back(point);
      if (lah(n, r + 1) * factorial(r + 1) != sum) shifted_bad.push_back(point);
    }
  }
  const auto listed = [](const IdentityReport& report) {
    std::vector<std::string> out;
    for (const auto& c : report.counterexamples) out.push_back(c.params);
    return out;
  };
  o.require(listed(printed) == printed_bad, "printed-index counterexample listing is incomplete");
  o.require(listed(shifted) == shifted_bad, "shifted-index counterexample listing is incomplete");
  o.detail = std::string("printed ") + (printed.passed() ? "pass" : "fail") + " (" +
             std::to_string(printed.counterexamples.size()) + " counterexamples), shifted " +
             (shifted.passed() ? "pass" : "fail") + " (" +
             std::to_string(shifted.counterexamples.size()) + "), second form " +
             (second.passed() ? "pass" : "fail");
  return o;
}

Outcome criterion_13() {
  Outcome o;
  const std::filesystem::path golden(DERANGE_GOLDEN_DIR);
  struct Case {
    std::vector<std::string> args;
    const char* fixture;
    int status;
  };
  const std::vector<Case> cases{
      {{"seq", "r-derangement", "--r", "2", "--from", "2", "--to", "4", "--format", "tsv"},
       "seq_r_derangement.tsv", 0},
      {{"seq", "derangement", "--from", "0", "--to", "1"}, "seq_derangement.tsv", 0},
      {{"seq", "lah", "3", "2"}, "seq_lah_point.tsv", 0},
      {{"verify", "main-sum-rule", "--r-max", "4", "--n-max", "50"}, "verify_main_sum_rule.tsv", 0},
      {{"verify", "lah-sum-rule-printed"}, "verify_lah_sum_rule_printed.tsv", -1},
      {{"egf", "r-derangement", "--r", "2", "--order", "4", "--mode", "terms"},
       "egf_r_derangement_terms.tsv", 0},
      {{"egf", "exp", "--sign", "-1", "--order", "2", "--mode", "coeffs"}, "egf_exp_coeffs.tsv", 0},
      {{"egf", "b-derangement", "--order", "2", "--mode", "terms"}, "egf_b_derangement_terms.tsv", 0},
  };
  for (const auto& c : cases) {
    const auto r = cli_run(c.args);
    o.require(r.out == slurp(golden / c.fixture), std::string("output differs from ") + c.fixture);
    if (c.status >= 0) o.require(r.status == c.status, std::string("exit status for ") + c.fixture);
  }
  // Printed Lah variant alone: exit 1 exactly when it lists counterexamples.
  {
    const auto r = cli_run({"verify", "lah-sum-rule-printed"});
    std::istringstream in(r.out);
    const auto records = read_reports_tsv(in);
    const bool failing = records.size() == 1 && !records[0].report.passed();
    o.require(r.status == (failing ? 1 : 0), "lah-sum-rule-printed exit status");
  }
  // verify all under the advisory marking.
  const auto start = Clock::now();
  const auto all = cli_run({"verify", "all"});
  const double elapsed = seconds_since(start);
  o.require(all.status == 0, "verify all exited " + std::to_string(all.status));
  o.require(all.out == slurp(golden / "verify_all.tsv"), "verify all differs from fixture");
  o.require(all.out.rfind("# derange verify all advisory=lah-sum-rule-printed\n", 0) == 0,
            "verify all header");
  {
    std::istringstream in(all.out);
    o.require(read_reports_tsv(in).size() == 15, "verify all summary count");
  }
  o.require(elapsed < 600.0, "verify all took " + std::to_string(elapsed) + " s");

  // Cache examples.
  const auto cache = std::filesystem::temp_directory_path() /
                     ("derange-acceptance-" + std::to_string(::getpid()) + ".tsv");
  std::filesystem::remove(cache);
  const auto cold = cli_run({"seq", "derangement", "--to", "10", "--cache", cache.string()});
  o.require(cold.status == 0 && line_count(slurp(cache)) == 11, "cold cache did not gain 11 lines");
  const auto warm = cli_run({"seq", "derangement", "--to", "10", "--cache", cache.string()});
  o.require(warm.status == 0 && warm.out == cold.out && line_count(slurp(cache)) == 11,
            "warm cache changed output or file");
  {
    std::ofstream out(cache, std::ios::binary | std::ios::trunc);
    out << "derangement\t\t4\t10\n";
  }
  const auto tampered = cli_run({"seq", "derangement", "--to", "10", "--cache", cache.string()});
  o.require(tampered.status == 1 && tampered.err.find("10") != std::string::npos &&
                tampered.err.find("9") != std::string::npos,
            "tampered cache not reported");
  std::filesystem::remove(cache);

  if (o.ok) {
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << "9 fixtures, verify all exit 0 in " << elapsed << " s, cache ok";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle r-derangements", criterion_1},
      {"oracle B-type derangements", criterion_2},
      {"oracle Lah numbers", criterion_3},
      {"main sum rule", criterion_4},
      {"classical sum rule", criterion_5},
      {"recurrence consistency", criterion_6},
      {"shift D_1(n) = D(n+1)", criterion_7},
      {"base cases", criterion_8},
      {"nearest integer formula", criterion_9},
      {"EGF coefficients", criterion_10},
      {"convolution equivalence", criterion_11},
      {"Lah sum rule adjudication", criterion_12},
      {"CLI golden files", criterion_13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.ok) ++failed;
    std::printf("%s %2zu %s (%.2fs): %s\n", outcome.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(start), outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
