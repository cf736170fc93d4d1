#pragma once

#include <string>
#include <vector>

namespace bk::cli {

// One row of a machine-readable report.  Column order is fixed (see
// docs/FORMATS.md); empty strings mark non-applicable fields.
struct ReportRow {
  std::string check;
  std::string p, e, alpha, module_id, n;
  std::string value, oracle;
  std::string verdict;  // pass | fail | skipped(budget) | inconclusive
  std::string detail;
};

struct Report {
  std::vector<ReportRow> rows;
  void add(ReportRow row) { rows.push_back(std::move(row)); }
  bool all_pass() const;
};

// CSV with the fixed header; the generated-at comment line is the only
// nondeterministic byte sequence.
std::string to_csv(const Report& report, bool with_timestamp = true);
// JSON object {format_version, generated_at?, rows: [...]}.
std::string to_json(const Report& report, bool with_timestamp = true);

void write_file(const std::string& path, const std::string& content);

}  // namespace bk::cli
