#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dtl {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ColumnType { Integer, Real, Categorical, Boolean };

std::string column_type_name(ColumnType t);
ColumnType column_type_from_name(const std::string& name);  // throws DataError

// A cell. monostate marks a missing value.
using Value = std::variant<std::monostate, long long, double, std::string, bool>;

bool value_missing(const Value& v);
bool value_equal(const Value& a, const Value& b);
std::string value_text(const Value& v);  // missing renders as "?"

struct Column {
  std::string name;
  ColumnType type = ColumnType::Categorical;
};

struct Schema {
  std::vector<Column> columns;
  std::string id_column = "id";

  int index_of(const std::string& name) const;        // -1 when absent
  const Column& at(const std::string& name) const;    // throws DataError
  bool has(const std::string& name) const { return index_of(name) >= 0; }
};

struct DataRow {
  std::string id;
  std::vector<Value> values;  // parallel to schema.columns
};

// Immutable after construction. Invariants enforced by the constructor:
// every row matches the schema width, ids unique, at least one row.
class Dataset {
 public:
  Dataset(Schema schema, std::vector<DataRow> rows);

  const Schema& schema() const { return schema_; }
  std::size_t size() const { return rows_.size(); }
  const DataRow& row(std::size_t i) const;
  const DataRow* find(const std::string& id) const;     // null when absent
  const DataRow& require(const std::string& id) const;  // throws DataError

  const Value& value(const DataRow& r, const std::string& column) const;
  const Value& value(const std::string& id, const std::string& column) const;

  // Row ids in file order.
  std::vector<std::string> ids() const;

 private:
  Schema schema_;
  std::vector<DataRow> rows_;
  std::map<std::string, std::size_t> by_id_;
};

// CSV: UTF-8, comma separated, double-quote escaping, one header row.
// With a declared schema the header must contain every schema column
// (extra file columns are ignored) and cells are coerced to the declared
// types; coercion failures report the data row number and column. Without
// a schema, column types are inferred from the data (integer, then real,
// then boolean, else categorical) and the id column is taken from the
// header's first column.
Dataset load_csv(const std::string& path);
Dataset load_csv(const std::string& path, const Schema& schema);

// Split one CSV record; exposed for tests.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace dtl
