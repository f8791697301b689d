#pragma once

#include <string>
#include <vector>

#include "dtl/verdict.hpp"

namespace dtl {

struct PropertyResult {
  std::string id;
  std::string description;
  std::string stated;   // rendered declarative form
  std::string audited;  // rendered operational form ("" when identical)
  std::string note;
  Verdict verdict;
  bool errored = false;
  std::string error;
  std::string cross_check;  // "", "agree", or a mismatch description
  std::vector<ExplanationStep> explanation;
};

struct AuditReport {
  std::string suite;
  std::string mode;  // reproduction | strict
  std::string dataset_path;
  std::string config_path;
  std::size_t rows = 0;
  std::vector<PropertyResult> properties;

  bool all_satisfied() const;
  bool any_error() const;
  std::size_t unsatisfied_count() const;
};

// Human-readable report. Counterexample printing is capped at max_print
// unless show_all. Timings are whole milliseconds so equal audits render
// identical bytes.
std::string render_text(const AuditReport& r, std::size_t max_print,
                        bool show_all);

// CSV: property,status,counterexamples,elapsed_ms
std::string render_csv(const AuditReport& r);

struct CsvRow {
  std::string property;
  std::string status;
  long long counterexamples = 0;
  long long elapsed_ms = 0;
};

std::vector<CsvRow> parse_report_csv(const std::string& text);

}  // namespace dtl
