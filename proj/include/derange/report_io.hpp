#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "derange/identities.hpp"

namespace derange {

enum class OutputFormat { Tsv, Jsonl };

/// A report as it appears on the wire: the report plus its gating status.
/// Advisory reports are printed but do not affect the exit status.
struct ReportRecord {
  IdentityReport report;
  bool advisory = false;
};

/// "pass", "fail", or either with an ":advisory" suffix.
std::string verdict_text(const ReportRecord& record);

/// Summary line `identity\tgrid\tverdict\tcount`, then one detail line per
/// witness and counterexample: `\t<kind>\t<params>\t<lhs>\t<rhs>\t<note>`.
/// With include_elapsed the summary gains a fifth `elapsed_ns` field.
void write_report_tsv(std::ostream& out, const ReportRecord& record, bool include_elapsed = false);

/// One JSON object per report; every number is carried as a string.
void write_report_jsonl(std::ostream& out, const ReportRecord& record,
                        bool include_elapsed = false);

/// Parse reports back. Lines starting with '#' (tsv) or objects whose kind
/// is not "report" (jsonl) are skipped. Throws std::invalid_argument on
/// malformed input.
std::vector<ReportRecord> read_reports_tsv(std::istream& in);
std::vector<ReportRecord> read_reports_jsonl(std::istream& in);

}  // namespace derange
