#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/dataset.hpp"

namespace dtl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThresholdConfig {
  long long decile_threshold = 5;
  std::optional<double> credit_threshold;
  std::optional<double> income_threshold;
  std::vector<std::string> sensitive_columns;
  std::vector<std::string> nonsensitive_columns;
};

// One [bindings] line: predicate = rule text. Rule grammar handled by
// parse_binding_rule in bindings.hpp.
struct BindingOverride {
  std::string predicate;
  std::string rule;
};

// Audit configuration file. Sections:
//   [thresholds]            decile_threshold / credit_threshold / income_threshold = number
//   [columns.sensitive]     one column name per line
//   [columns.nonsensitive]  one column name per line
//   [schema]                column = integer|real|categorical|boolean
//   [dataset]               id_column = name   (default "id")
//   [bindings]              predicate = rule   (overrides a default binding)
// '#' and ';' start comments. A column may not be both sensitive and
// nonsensitive.
struct AuditConfig {
  ThresholdConfig thresholds;
  std::optional<Schema> schema;
  std::string id_column = "id";
  std::vector<BindingOverride> bindings;
};

AuditConfig parse_config(const std::string& text, const std::string& name);
AuditConfig load_config(const std::string& path);

}  // namespace dtl
