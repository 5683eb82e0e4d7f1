#include "derange/report_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace derange {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kAdvisorySuffix = ":advisory";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

void write_detail_tsv(std::ostream& out, std::string_view kind, const Evaluation& e) {
  out << '\t' << kind << '\t' << e.params << '\t' << e.lhs << '\t' << e.rhs << '\t' << e.note
      << '\n';
}

ordered_json evaluation_json(const Evaluation& e) {
  ordered_json j;
  j["params"] = e.params;
  j["lhs"] = e.lhs;
  j["rhs"] = e.rhs;
  j["note"] = e.note;
  return j;
}

Evaluation evaluation_from_json(const nlohmann::json& j) {
  return {j.at("params").get<std::string>(), j.at("lhs").get<std::string>(),
          j.at("rhs").get<std::string>(), j.at("note").get<std::string>()};
}

IdentityId identity_or_throw(const std::string& name) {
  const auto id = parse_identity(name);
  if (!id) throw std::invalid_argument("unknown identity '" + name + "'");
  return *id;
}

}  // namespace

std::string verdict_text(const ReportRecord& record) {
  std::string text = record.report.passed() ? "pass" : "fail";
  if (record.advisory) text += kAdvisorySuffix;
  return text;
}

void write_report_tsv(std::ostream& out, const ReportRecord& record, bool include_elapsed) {
  const auto& r = record.report;
  out << identity_name(r.id) << '\t' << r.grid << '\t' << verdict_text(record) << '\t'
      << r.counterexamples.size();
  if (include_elapsed) out << '\t' << r.elapsed.count();
  out << '\n';
  for (const auto& w : r.witnesses) write_detail_tsv(out, "witness", w);
  for (const auto& c : r.counterexamples) write_detail_tsv(out, "counterexample", c);
}

void write_report_jsonl(std::ostream& out, const ReportRecord& record, bool include_elapsed) {
  const auto& r = record.report;
  ordered_json j;
  j["kind"] = "report";
  j["identity"] = identity_name(r.id);
  j["grid"] = r.grid;
  j["verdict"] = r.passed() ? "pass" : "fail";
  j["advisory"] = record.advisory;
  j["counterexample_count"] = std::to_string(r.counterexamples.size());
  j["witnesses"] = ordered_json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(evaluation_json(w));
  j["counterexamples"] = ordered_json::array();
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back(evaluation_json(c));
  if (include_elapsed) j["elapsed_ns"] = std::to_string(r.elapsed.count());
  out << j.dump() << '\n';
}

std::vector<ReportRecord> read_reports_tsv(std::istream& in) {
  struct Declared {
    bool passed;
    std::size_t count;
  };
  std::vector<ReportRecord> records;
  std::vector<Declared> declared;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&line_no](const std::string& what) {
    throw std::invalid_argument("report line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (line[0] == '\t') {
      if (records.empty()) fail("detail line before any summary");
      if (fields.size() != 6) fail("detail line needs 5 fields");
      Evaluation e{fields[2], fields[3], fields[4], fields[5]};
      auto& report = records.back().report;
      if (fields[1] == "witness")
        report.witnesses.push_back(std::move(e));
      else if (fields[1] == "counterexample")
        report.counterexamples.push_back(std::move(e));
      else
        fail("unknown detail kind '" + fields[1] + "'");
      continue;
    }
    if (fields.size() != 4 && fields.size() != 5) fail("summary line needs 4 or 5 fields");
    ReportRecord record;
    record.report.id = identity_or_throw(fields[0]);
    record.report.grid = fields[1];
    std::string verdict = fields[2];
    if (verdict.ends_with(kAdvisorySuffix)) {
      record.advisory = true;
      verdict.resize(verdict.size() - kAdvisorySuffix.size());
    }
    if (verdict != "pass" && verdict != "fail") fail("bad verdict '" + fields[2] + "'");
    if (fields.size() == 5) record.report.elapsed = std::chrono::nanoseconds(std::stoll(fields[4]));
    declared.push_back({verdict == "pass", static_cast<std::size_t>(std::stoull(fields[3]))});
    records.push_back(std::move(record));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i].report;
    if (r.counterexamples.size() != declared[i].count || r.passed() != declared[i].passed)
      throw std::invalid_argument("report for " + std::string(identity_name(r.id)) +
                                  ": summary disagrees with its detail lines");
  }
  return records;
}

std::vector<ReportRecord> read_reports_jsonl(std::istream& in) {
  std::vector<ReportRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.at("kind") != "report") continue;
      ReportRecord record;
      record.report.id = identity_or_throw(j.at("identity").get<std::string>());
      record.report.grid = j.at("grid").get<std::string>();
      record.advisory = j.at("advisory").get<bool>();
      for (const auto& w : j.at("witnesses")) record.report.witnesses.push_back(evaluation_from_json(w));
      for (const auto& c : j.at("counterexamples"))
        record.report.counterexamples.push_back(evaluation_from_json(c));
      if (j.contains("elapsed_ns"))
        record.report.elapsed = std::chrono::nanoseconds(std::stoll(j.at("elapsed_ns").get<std::string>()));
      const std::string verdict = j.at("verdict").get<std::string>();
      if (verdict != (record.report.passed() ? "pass" : "fail"))
        throw std::invalid_argument("verdict disagrees with counterexample list");
      records.push_back(std::move(record));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("report line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace derange
