#pragma once

#include <map>
#include <string>
#include <vector>

#include "dtl/config.hpp"
#include "dtl/dataset.hpp"

namespace dtl {

enum class RuleKind {
  BoolColumn,       // column read as a truth value
  GreaterThanZero,  // column > 0
  ThresholdGE,      // column >= threshold
  EqualsValue,      // column == expected value
  SimilarRows,      // pair: equal on every nonsensitive column
  FlipPair,         // pair: equal nonsensitive, differing on >= 1 sensitive
};

// Decidable rule attached to a predicate symbol. Unary rules read one
// column of one row; pair rules compare two rows. Evaluation is pure.
struct PredicateBinding {
  std::string name;
  int arity = 1;
  RuleKind kind = RuleKind::BoolColumn;
  std::string column;
  double threshold = 0;
  Value expected;
  std::vector<std::string> nonsensitive;
  std::vector<std::string> sensitive;

  std::string rule_text() const;
  std::vector<std::string> referenced_columns() const;
  bool eval(const Dataset& d, const std::vector<std::string>& row_ids) const;
  // Pair rules: first sensitive column where the rows differ, rendered
  // as "column: a vs b"; empty for unary rules or when none differs.
  std::string pair_detail(const Dataset& d, const std::string& i,
                          const std::string& j) const;
};

using BindingSet = std::map<std::string, PredicateBinding>;

// Table-driven defaults per suite. Throws DataError when a referenced
// column is absent from the schema, ConfigError when a required
// threshold is missing.
BindingSet default_bindings(const std::string& suite,
                            const ThresholdConfig& cfg, const Schema& schema);

// Rule grammar for [bindings] overrides:
//   column >= number | $decile_threshold | $credit_threshold | $income_threshold
//   column > 0
//   column == value
//   column
PredicateBinding parse_binding_rule(const std::string& predicate,
                                    const std::string& rule,
                                    const ThresholdConfig& cfg,
                                    const Schema& schema);

void apply_overrides(BindingSet& set,
                     const std::vector<BindingOverride>& overrides,
                     const ThresholdConfig& cfg, const Schema& schema);

// Row similarity: equal on every nonsensitive column. Precondition i != j.
bool similar(const Dataset& d, const std::string& i, const std::string& j,
             const ThresholdConfig& cfg);

}  // namespace dtl
