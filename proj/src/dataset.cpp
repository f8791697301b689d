#include "dtl/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dtl {

std::string column_type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Real: return "real";
    case ColumnType::Categorical: return "categorical";
    case ColumnType::Boolean: return "boolean";
  }
  return "?";
}

ColumnType column_type_from_name(const std::string& name) {
  if (name == "integer") return ColumnType::Integer;
  if (name == "real") return ColumnType::Real;
  if (name == "categorical") return ColumnType::Categorical;
  if (name == "boolean") return ColumnType::Boolean;
  throw DataError("unknown column type: " + name);
}

bool value_missing(const Value& v) {
  return std::holds_alternative<std::monostate>(v);
}

bool value_equal(const Value& a, const Value& b) {
  if (value_missing(a) || value_missing(b)) return false;
  // Integer/real cells compare numerically so a declared-real column
  // holding whole numbers still matches an integer column.
  const auto num = [](const Value& v, double& out) {
    if (const auto* i = std::get_if<long long>(&v)) {
      out = static_cast<double>(*i);
      return true;
    }
    if (const auto* d = std::get_if<double>(&v)) {
      out = *d;
      return true;
    }
    return false;
  };
  double x, y;
  if (num(a, x) && num(b, y)) return x == y;
  return a == b;
}

std::string value_text(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "?"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      std::ostringstream os;
      os << d;
      return os.str();
    }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, v);
}

int Schema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return static_cast<int>(i);
  return -1;
}

const Column& Schema::at(const std::string& name) const {
  const int i = index_of(name);
  if (i < 0) throw DataError("unknown column: " + name);
  return columns[static_cast<std::size_t>(i)];
}

Dataset::Dataset(Schema schema, std::vector<DataRow> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (rows_.empty()) throw DataError("dataset must contain at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].values.size() != schema_.columns.size())
      throw DataError("row " + std::to_string(i + 1) +
                      " does not match schema width");
    auto [it, fresh] = by_id_.emplace(rows_[i].id, i);
    if (!fresh) throw DataError("duplicate row id: " + rows_[i].id);
  }
}

const DataRow& Dataset::row(std::size_t i) const {
  if (i >= rows_.size()) throw DataError("row index out of range");
  return rows_[i];
}

const DataRow* Dataset::find(const std::string& id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &rows_[it->second];
}

const DataRow& Dataset::require(const std::string& id) const {
  const DataRow* r = find(id);
  if (!r) throw DataError("unknown row id: " + id);
  return *r;
}

const Value& Dataset::value(const DataRow& r, const std::string& column) const {
  const int i = schema_.index_of(column);
  if (i < 0) throw DataError("unknown column: " + column);
  return r.values[static_cast<std::size_t>(i)];
}

const Value& Dataset::value(const std::string& id,
                            const std::string& column) const {
  return value(require(id), column);
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const DataRow& r : rows_) out.push_back(r.id);
  return out;
}

// ── CSV ───────────────────────────────────────────────────────────────

namespace {

// Records respecting double-quote escaping; embedded newlines allowed
// inside quoted fields.
std::vector<std::vector<std::string>> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        record.push_back(field);
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          record.push_back(field);
          records.push_back(record);
        }
        record.clear();
        field.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
        break;
    }
  }
  if (quoted) throw DataError("unterminated quoted field in " + path);
  if (any || !field.empty()) {
    record.push_back(field);
    records.push_back(record);
  }
  return records;
}

bool parse_integer(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v))
    return false;
  out = v;
  return true;
}

bool parse_boolean(const std::string& s, bool& out) {
  if (s == "true" || s == "1") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0") {
    out = false;
    return true;
  }
  return false;
}

Value coerce(const std::string& raw, ColumnType type, std::size_t data_row,
             const std::string& column) {
  if (raw.empty()) return std::monostate{};
  switch (type) {
    case ColumnType::Integer: {
      long long v;
      if (parse_integer(raw, v)) return v;
      break;
    }
    case ColumnType::Real: {
      double v;
      if (parse_real(raw, v)) return v;
      break;
    }
    case ColumnType::Boolean: {
      bool v;
      if (parse_boolean(raw, v)) return v;
      break;
    }
    case ColumnType::Categorical:
      return raw;
  }
  throw DataError("row " + std::to_string(data_row) + ", column '" + column +
                  "': cannot read '" + raw + "' as " +
                  column_type_name(type));
}

ColumnType infer_type(const std::vector<std::vector<std::string>>& records,
                      std::size_t col) {
  bool all_int = true, all_real = true, all_bool = true, seen = false;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (col >= records[r].size()) continue;
    const std::string& cell = records[r][col];
    if (cell.empty()) continue;
    seen = true;
    long long i;
    double d;
    if (!parse_integer(cell, i)) all_int = false;
    if (!parse_real(cell, d)) all_real = false;
    if (!(cell == "true" || cell == "false")) all_bool = false;
  }
  if (!seen) return ColumnType::Categorical;
  if (all_int) return ColumnType::Integer;
  if (all_real) return ColumnType::Real;
  if (all_bool) return ColumnType::Boolean;
  return ColumnType::Categorical;
}

Dataset build(const std::string& path, const Schema* declared) {
  const auto records = read_records(path);
  if (records.empty()) throw DataError("empty file: " + path);
  const std::vector<std::string>& header = records[0];
  if (records.size() < 2)
    throw DataError(path + ": dataset must contain at least one row");

  Schema schema;
  std::vector<int> source;  // schema column -> file column
  if (declared) {
    schema = *declared;
    for (const Column& c : schema.columns) {
      const auto it = std::find(header.begin(), header.end(), c.name);
      if (it == header.end())
        throw DataError(path + ": missing column '" + c.name + "'");
      source.push_back(static_cast<int>(it - header.begin()));
    }
  } else {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i].empty())
        throw DataError(path + ": empty header name in column " +
                        std::to_string(i + 1));
      schema.columns.push_back({header[i], infer_type(records, i)});
      source.push_back(static_cast<int>(i));
    }
    schema.id_column = header[0];
  }

  const int id_col = schema.index_of(schema.id_column);
  if (id_col < 0)
    throw DataError(path + ": id column '" + schema.id_column +
                    "' not in schema");

  std::vector<DataRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    DataRow row;
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
      const std::size_t f = static_cast<std::size_t>(source[c]);
      const std::string raw =
          f < records[r].size() ? records[r][f] : std::string();
      row.values.push_back(coerce(raw, schema.columns[c].type, r,
                                  schema.columns[c].name));
    }
    const Value& idv = row.values[static_cast<std::size_t>(id_col)];
    if (value_missing(idv))
      throw DataError("row " + std::to_string(r) + ": missing id");
    row.id = value_text(idv);
    rows.push_back(std::move(row));
  }
  try {
    return Dataset(std::move(schema), std::move(rows));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace

Dataset load_csv(const std::string& path) { return build(path, nullptr); }

Dataset load_csv(const std::string& path, const Schema& schema) {
  return build(path, &schema);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace dtl
