#include "dtl/report.hpp"

#include <sstream>
#include <stdexcept>

#include "dtl/dataset.hpp"

namespace dtl {

bool AuditReport::all_satisfied() const {
  for (const PropertyResult& p : properties)
    if (p.errored || p.verdict.status != Status::Satisfied) return false;
  return true;
}

bool AuditReport::any_error() const {
  for (const PropertyResult& p : properties)
    if (p.errored) return true;
  return false;
}

std::size_t AuditReport::unsatisfied_count() const {
  std::size_t n = 0;
  for (const PropertyResult& p : properties)
    if (!p.errored && p.verdict.status == Status::Unsatisfied) ++n;
  return n;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

}  // namespace

std::string render_text(const AuditReport& r, std::size_t max_print,
                        bool show_all) {
  std::ostringstream out;
  out << "audit suite=" << r.suite << " mode=" << r.mode << "\n";
  out << "dataset: " << r.dataset_path << " (" << r.rows << " rows)\n";
  out << "config:  " << r.config_path << "\n\n";

  for (const PropertyResult& p : r.properties) {
    out << "property " << p.id << ": ";
    if (p.errored) {
      out << "Error\n  " << p.error << "\n";
      continue;
    }
    const Verdict& v = p.verdict;
    out << status_name(v.status);
    out << " (" << v.stats.rows_eligible << " rows checked";
    if (v.stats.rows_skipped)
      out << ", " << v.stats.rows_skipped << " skipped";
    if (v.stats.pairs_checked) out << ", " << v.stats.pairs_checked << " pairs";
    out << ", " << v.stats.elapsed_us / 1000 << " ms)";
    if (v.vacuous) out << " [vacuous: no eligible rows]";
    out << "\n";
    out << "  " << p.description << "\n";
    out << "  stated:  " << p.stated << "\n";
    if (!p.audited.empty() && p.audited != p.stated) {
      out << "  audited: " << p.audited << "\n";
      if (!p.note.empty()) out << "  note: " << p.note << "\n";
    }
    if (!p.cross_check.empty())
      out << "  external solver: " << p.cross_check << "\n";

    if (v.status == Status::Unsatisfied) {
      const std::size_t total = v.counterexamples.size();
      const std::size_t shown = show_all ? total : std::min(total, max_print);
      out << "  counterexamples: " << total;
      if (shown < total) out << " (showing " << shown << ")";
      out << "\n";
      for (std::size_t i = 0; i < shown; ++i) {
        const Counterexample& cex = v.counterexamples[i];
        out << "    [" << join(cex.rows) << "] " << cex.clause << "\n";
        for (const auto& [key, val] : cex.atom_values)
          out << "      " << key << " = " << (val ? "true" : "false") << "\n";
      }
      for (const ExplanationStep& s : p.explanation)
        out << "  " << s.kind << " (" << s.rule << "): " << s.message << "\n";
    }
  }

  out << "\noverall: ";
  if (r.any_error())
    out << "error (" << r.mode << " mode)";
  else if (r.all_satisfied())
    out << "ethical per suite (all properties satisfied)";
  else
    out << "not ethical per suite (" << r.unsatisfied_count() << " of "
        << r.properties.size() << " properties unsatisfied)";
  out << "\n";
  return out.str();
}

std::string render_csv(const AuditReport& r) {
  std::ostringstream out;
  out << "property,status,counterexamples,elapsed_ms\n";
  for (const PropertyResult& p : r.properties) {
    out << p.id << ',';
    if (p.errored)
      out << "Error,0,0";
    else
      out << status_name(p.verdict.status) << ','
          << p.verdict.counterexamples.size() << ','
          << p.verdict.stats.elapsed_us / 1000;
    out << '\n';
  }
  return out.str();
}

std::vector<CsvRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "property,status,counterexamples,elapsed_ms")
    throw std::runtime_error("bad report header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 4) throw std::runtime_error("bad report row: " + line);
    CsvRow row;
    row.property = cells[0];
    row.status = cells[1];
    row.counterexamples = std::stoll(cells[2]);
    row.elapsed_ms = std::stoll(cells[3]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dtl
