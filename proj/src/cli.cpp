#include "derange/cli.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "derange/egf.hpp"
#include "derange/identities.hpp"
#include "derange/oracle.hpp"
#include "derange/report_io.hpp"
#include "derange/sequences.hpp"
#include "derange/term_cache.hpp"

namespace derange::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "tsv";
  std::string cache_path;

  OutputFormat output_format() const {
    return format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Tsv;
  }
};

// ---- seq ------------------------------------------------------------------

struct SeqOptions {
  std::string family;
  std::vector<unsigned> point;
  unsigned r = 0;
  unsigned k = 0;
  unsigned from = 0;
  unsigned to = 0;
  CLI::Option* r_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* from_opt = nullptr;
  CLI::Option* to_opt = nullptr;
};

int run_seq(const SeqOptions& opts, const GlobalOptions& global, std::ostream& out) {
  const auto family = parse_family(opts.family);
  if (!family) throw UsageError("unknown family '" + opts.family + "'");

  SequenceId id{*family, {}};
  unsigned n_from = 0;
  unsigned n_to = 0;
  if (!opts.point.empty()) {
    if (opts.r_opt->count() || opts.k_opt->count() || opts.from_opt->count() ||
        opts.to_opt->count())
      throw UsageError("the point form <n> [params...] cannot be combined with --r/--k/--from/--to");
    n_from = n_to = opts.point.front();
    id.params.assign(opts.point.begin() + 1, opts.point.end());
  } else {
    if (opts.r_opt->count()) {
      if (id.family != Family::RDerangement && id.family != Family::BStirlingK0)
        throw UsageError("--r does not apply to " + opts.family);
      id.params.push_back(opts.r);
    }
    if (opts.k_opt->count()) {
      if (id.family != Family::Lah) throw UsageError("--k applies only to lah");
      id.params.push_back(opts.k);
    }
    if (!opts.to_opt->count()) throw UsageError("--to is required unless a point <n> is given");
    n_from = opts.from;
    n_to = opts.to;
    if (n_from > n_to) throw UsageError("--from must not exceed --to");
  }
  try {
    id.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::optional<TermCache> cache;
  if (!global.cache_path.empty()) cache = TermCache::open(global.cache_path);

  std::ostringstream buffer;
  for (unsigned n = n_from;; ++n) {
    const TermKey key{id.family, id.params, n};
    const BigInt value = evaluate(id, n);
    if (cache) {
      if (const auto cached = cache->lookup(key)) {
        if (*cached != value) throw CacheConflict(key, *cached, value);
      } else {
        cache->insert(key, value);
      }
    }
    if (global.output_format() == OutputFormat::Tsv) {
      buffer << format_term_tsv(key, value) << '\n';
    } else {
      ordered_json j;
      j["family"] = family_name(id.family);
      j["params"] = ordered_json::array();
      for (unsigned p : id.params) j["params"].push_back(std::to_string(p));
      j["n"] = std::to_string(n);
      j["value"] = to_decimal(value);
      buffer << j.dump() << '\n';
    }
    if (n == n_to) break;
  }
  if (cache) cache->flush();
  out << buffer.str();
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string identity;
  unsigned r_max = 0;
  unsigned n_max = 0;
  std::vector<std::string> advisory;
  bool strict = false;
  bool timing = false;
  bool parallel = false;
  CLI::Option* r_max_opt = nullptr;
  CLI::Option* n_max_opt = nullptr;
};

// Reported but excluded from the exit status of `verify all` unless --strict.
constexpr IdentityId kDefaultAdvisory = IdentityId::LahSumRulePrinted;

int run_verify(const VerifyOptions& opts, const GlobalOptions& global, std::ostream& out) {
  const bool all = opts.identity == "all";
  std::optional<IdentityId> single;
  if (!all) {
    single = parse_identity(opts.identity);
    if (!single) throw UsageError("unknown identity '" + opts.identity + "'");
  }

  std::set<IdentityId> advisory;
  if (all && !opts.strict) advisory.insert(kDefaultAdvisory);
  for (const auto& name : opts.advisory) {
    const auto id = parse_identity(name);
    if (!id) throw UsageError("unknown identity '" + name + "' in --advisory");
    advisory.insert(*id);
  }

  GridOverrides overrides;
  if (opts.r_max_opt->count()) overrides.r_max = opts.r_max;
  if (opts.n_max_opt->count()) overrides.n_max = opts.n_max;
  const Grids grids = apply_overrides(Grids{}, overrides);

  std::vector<IdentityReport> reports;
  try {
    if (all)
      reports = check_all(grids, opts.parallel);
    else
      reports.push_back(check(*single, grids));
  } catch (const oracle::CapExceeded& e) {
    throw UsageError(e.what());
  }

  std::string advisory_list;
  for (IdentityId id : advisory) {
    if (!advisory_list.empty()) advisory_list += ',';
    advisory_list += identity_name(id);
  }

  std::ostringstream buffer;
  if (global.output_format() == OutputFormat::Tsv) {
    buffer << "# derange verify " << opts.identity
           << " advisory=" << (advisory_list.empty() ? "none" : advisory_list) << '\n';
  } else {
    ordered_json header;
    header["kind"] = "header";
    header["selection"] = opts.identity;
    header["advisory"] = ordered_json::array();
    for (IdentityId id : advisory) header["advisory"].push_back(identity_name(id));
    buffer << header.dump() << '\n';
  }

  bool gating_failure = false;
  for (auto& report : reports) {
    const bool is_advisory = advisory.contains(report.id);
    ReportRecord record{std::move(report), is_advisory};
    if (!record.report.passed() && !record.advisory) gating_failure = true;
    if (global.output_format() == OutputFormat::Tsv)
      write_report_tsv(buffer, record, opts.timing);
    else
      write_report_jsonl(buffer, record, opts.timing);
  }
  out << buffer.str();
  return gating_failure ? kExitFailure : kExitOk;
}

// ---- egf ------------------------------------------------------------------

struct EgfOptions {
  std::string series;
  unsigned r = 0;
  int sign = 1;
  long m = 1;
  unsigned p = 1;
  unsigned order = 0;
  std::string mode = "coeffs";
  CLI::Option* r_opt = nullptr;
  CLI::Option* sign_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* p_opt = nullptr;
};

int run_egf(const EgfOptions& opts, const GlobalOptions& global, std::ostream& out,
            std::ostream& err) {
  const auto reject = [&](CLI::Option* opt, const char* flag) {
    if (opt->count()) throw UsageError(std::string(flag) + " does not apply to " + opts.series);
  };

  std::optional<TruncatedSeries> series;
  if (opts.series == "r-derangement") {
    reject(opts.sign_opt, "--sign");
    reject(opts.m_opt, "--m");
    reject(opts.p_opt, "--p");
    series = egf_r_derangement(opts.r, opts.order);
  } else if (opts.series == "b-derangement") {
    reject(opts.r_opt, "--r");
    reject(opts.sign_opt, "--sign");
    reject(opts.m_opt, "--m");
    reject(opts.p_opt, "--p");
    series = egf_b_derangement(opts.order);
  } else if (opts.series == "exp") {
    reject(opts.r_opt, "--r");
    reject(opts.m_opt, "--m");
    reject(opts.p_opt, "--p");
    if (opts.sign != 1 && opts.sign != -1) throw UsageError("--sign must be 1 or -1");
    series = series_exp(opts.sign, opts.order);
  } else if (opts.series == "pole") {
    reject(opts.r_opt, "--r");
    reject(opts.sign_opt, "--sign");
    if (opts.p == 0) throw UsageError("--p must be at least 1");
    series = series_reciprocal_pole(opts.m, opts.p, opts.order);
  } else {
    throw UsageError("unknown series '" + opts.series + "'");
  }

  std::vector<std::string> values;
  if (opts.mode == "terms") {
    try {
      for (const auto& t : to_terms(*series)) values.push_back(to_decimal(t));
    } catch (const NonIntegralTerm& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  } else {
    for (const auto& c : series->coeffs()) values.push_back(to_fraction_string(c));
  }

  std::ostringstream buffer;
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (global.output_format() == OutputFormat::Tsv) {
      buffer << n << '\t' << values[n] << '\n';
    } else {
      ordered_json j;
      j["n"] = std::to_string(n);
      j["value"] = values[n];
      buffer << j.dump() << '\n';
    }
  }
  out << buffer.str();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact derangement-family sequences, generating functions and identity checks",
               "derange"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"tsv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--cache", global.cache_path, "Append-only term cache file (seq only)");

  SeqOptions seq;
  auto* seq_cmd = app.add_subcommand("seq", "Print terms of a sequence family");
  seq_cmd->add_option("family", seq.family,
                      "derangement | r-derangement | b-derangement | lah | b-stirling-k0")
      ->required();
  seq_cmd->add_option("point", seq.point, "Single point: <n> followed by the family parameters");
  seq.r_opt = seq_cmd->add_option("--r", seq.r, "r for r-derangement and b-stirling-k0");
  seq.k_opt = seq_cmd->add_option("--k", seq.k, "Number of blocks n2 for lah");
  seq.from_opt = seq_cmd->add_option("--from", seq.from, "First index")->capture_default_str();
  seq.to_opt = seq_cmd->add_option("--to", seq.to, "Last index");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check identities over parameter grids");
  verify_cmd->add_option("identity", verify.identity, "Identity name or 'all'")->required();
  verify.r_max_opt = verify_cmd->add_option("--r-max", verify.r_max, "Override the r range");
  verify.n_max_opt = verify_cmd->add_option("--n-max", verify.n_max, "Override the n range");
  verify_cmd->add_option("--advisory", verify.advisory,
                         "Report this identity without letting it set the exit status "
                         "(repeatable; 'verify all' marks lah-sum-rule-printed by default)");
  verify_cmd->add_flag("--strict", verify.strict, "Drop the default advisory marking");
  verify_cmd->add_flag("--timing", verify.timing, "Append elapsed nanoseconds to each report");
  verify_cmd->add_flag("--parallel", verify.parallel, "Run checkers concurrently");

  EgfOptions egf;
  auto* egf_cmd = app.add_subcommand("egf", "Expand a generating function");
  egf_cmd->add_option("series", egf.series, "r-derangement | b-derangement | exp | pole")
      ->required();
  egf.r_opt = egf_cmd->add_option("--r", egf.r, "r for r-derangement");
  egf.sign_opt = egf_cmd->add_option("--sign", egf.sign, "+1 or -1 for exp");
  egf.m_opt = egf_cmd->add_option("--m", egf.m, "Pole base m in 1/(1-mx)^p");
  egf.p_opt = egf_cmd->add_option("--p", egf.p, "Pole multiplicity p");
  egf_cmd->add_option("--order", egf.order, "Truncation order")->required();
  egf_cmd->add_option("--mode", egf.mode, "coeffs or terms")
      ->check(CLI::IsMember({"coeffs", "terms"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (seq_cmd->parsed()) return run_seq(seq, global, out);
    if (verify_cmd->parsed()) return run_verify(verify, global, out);
    if (egf_cmd->parsed()) return run_egf(egf, global, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const CacheFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheConflict& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace derange::cli
