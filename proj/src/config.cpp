#include "dtl/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dtl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  const std::size_t h = line.find_first_of("#;");
  return h == std::string::npos ? line : line.substr(0, h);
}

double parse_number(const std::string& s, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || errno != 0 || end != s.c_str() + s.size() ||
      !std::isfinite(v))
    throw ConfigError(where + ": expected a finite number, got '" + s + "'");
  return v;
}

}  // namespace

AuditConfig parse_config(const std::string& text, const std::string& name) {
  AuditConfig cfg;
  Schema schema;
  bool have_schema = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unclosed section");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"thresholds",          "columns.sensitive",
                                    "columns.nonsensitive", "schema",
                                    "dataset",             "bindings"};
      if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
            return section == k;
          }) == std::end(known))
        throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = line.find('=');
    const std::string key = trim(eq == std::string::npos ? line : line.substr(0, eq));
    const std::string val = eq == std::string::npos ? "" : trim(line.substr(eq + 1));

    if (section == "thresholds") {
      if (eq == std::string::npos)
        throw ConfigError(where + ": expected key = value");
      if (key == "decile_threshold")
        cfg.thresholds.decile_threshold =
            static_cast<long long>(parse_number(val, where));
      else if (key == "credit_threshold")
        cfg.thresholds.credit_threshold = parse_number(val, where);
      else if (key == "income_threshold")
        cfg.thresholds.income_threshold = parse_number(val, where);
      else
        throw ConfigError(where + ": unknown threshold '" + key + "'");
    } else if (section == "columns.sensitive") {
      if (eq != std::string::npos)
        throw ConfigError(where + ": expected a bare column name");
      cfg.thresholds.sensitive_columns.push_back(key);
    } else if (section == "columns.nonsensitive") {
      if (eq != std::string::npos)
        throw ConfigError(where + ": expected a bare column name");
      cfg.thresholds.nonsensitive_columns.push_back(key);
    } else if (section == "schema") {
      if (eq == std::string::npos)
        throw ConfigError(where + ": expected column = type");
      try {
        schema.columns.push_back({key, column_type_from_name(val)});
      } catch (const DataError& e) {
        throw ConfigError(where + ": " + e.what());
      }
      have_schema = true;
    } else if (section == "dataset") {
      if (key == "id_column" && eq != std::string::npos)
        cfg.id_column = val;
      else
        throw ConfigError(where + ": unknown dataset key '" + key + "'");
    } else if (section == "bindings") {
      if (eq == std::string::npos)
        throw ConfigError(where + ": expected predicate = rule");
      cfg.bindings.push_back({key, val});
    } else {
      throw ConfigError(where + ": content before any section header");
    }
  }

  for (const std::string& s : cfg.thresholds.sensitive_columns)
    for (const std::string& n : cfg.thresholds.nonsensitive_columns)
      if (s == n)
        throw ConfigError(name + ": column '" + s +
                          "' listed as both sensitive and nonsensitive");

  if (have_schema) {
    schema.id_column = cfg.id_column;
    cfg.schema = std::move(schema);
  }
  return cfg;
}

AuditConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace dtl
