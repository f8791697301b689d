#include "dtl/bindings.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace dtl {

namespace {

std::string format_threshold(double t) {
  if (t == std::floor(t) && std::abs(t) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(t);
    return os.str();
  }
  std::ostringstream os;
  os << t;
  return os.str();
}

double numeric_cell(const Dataset& d, const std::string& id,
                    const std::string& column, const std::string& pred) {
  const Value& v = d.value(id, column);
  if (const auto* i = std::get_if<long long>(&v))
    return static_cast<double>(*i);
  if (const auto* x = std::get_if<double>(&v)) return *x;
  if (value_missing(v))
    throw DataError("predicate '" + pred + "': row " + id +
                    " has no value for column '" + column + "'");
  throw DataError("predicate '" + pred + "': column '" + column +
                  "' is not numeric");
}

void require_column(const Schema& schema, const std::string& column,
                    const std::string& pred) {
  if (!schema.has(column))
    throw DataError("binding '" + pred + "': column '" + column +
                    "' absent from schema");
}

}  // namespace

std::string PredicateBinding::rule_text() const {
  switch (kind) {
    case RuleKind::BoolColumn:
      return column;
    case RuleKind::GreaterThanZero:
      return column + " > 0";
    case RuleKind::ThresholdGE:
      return column + " >= " + format_threshold(threshold);
    case RuleKind::EqualsValue:
      return column + "=" + value_text(expected);
    case RuleKind::SimilarRows:
      return "equal on all nonsensitive columns";
    case RuleKind::FlipPair:
      return "equal nonsensitive columns, differing sensitive column";
  }
  return "?";
}

std::vector<std::string> PredicateBinding::referenced_columns() const {
  switch (kind) {
    case RuleKind::SimilarRows:
      return nonsensitive;
    case RuleKind::FlipPair: {
      std::vector<std::string> cols = nonsensitive;
      cols.insert(cols.end(), sensitive.begin(), sensitive.end());
      return cols;
    }
    default:
      return {column};
  }
}

bool PredicateBinding::eval(const Dataset& d,
                            const std::vector<std::string>& row_ids) const {
  if (static_cast<int>(row_ids.size()) != arity)
    throw DataError("predicate '" + name + "' expects " +
                    std::to_string(arity) + " row(s)");
  switch (kind) {
    case RuleKind::BoolColumn: {
      const Value& v = d.value(row_ids[0], column);
      if (const auto* b = std::get_if<bool>(&v)) return *b;
      if (const auto* i = std::get_if<long long>(&v)) return *i != 0;
      if (value_missing(v))
        throw DataError("predicate '" + name + "': row " + row_ids[0] +
                        " has no value for column '" + column + "'");
      throw DataError("predicate '" + name + "': column '" + column +
                      "' is not readable as a truth value");
    }
    case RuleKind::GreaterThanZero:
      return numeric_cell(d, row_ids[0], column, name) > 0;
    case RuleKind::ThresholdGE:
      return numeric_cell(d, row_ids[0], column, name) >= threshold;
    case RuleKind::EqualsValue: {
      const Value& v = d.value(row_ids[0], column);
      if (value_missing(v))
        throw DataError("predicate '" + name + "': row " + row_ids[0] +
                        " has no value for column '" + column + "'");
      return value_equal(v, expected);
    }
    case RuleKind::SimilarRows: {
      const DataRow& a = d.require(row_ids[0]);
      const DataRow& b = d.require(row_ids[1]);
      if (&a == &b) return true;
      for (const std::string& col : nonsensitive)
        if (!value_equal(d.value(a, col), d.value(b, col))) return false;
      return true;
    }
    case RuleKind::FlipPair: {
      const DataRow& a = d.require(row_ids[0]);
      const DataRow& b = d.require(row_ids[1]);
      if (&a == &b) return false;
      for (const std::string& col : nonsensitive)
        if (!value_equal(d.value(a, col), d.value(b, col))) return false;
      for (const std::string& col : sensitive)
        if (!value_equal(d.value(a, col), d.value(b, col))) return true;
      return false;
    }
  }
  throw DataError("predicate '" + name + "': unhandled rule");
}

std::string PredicateBinding::pair_detail(const Dataset& d,
                                          const std::string& i,
                                          const std::string& j) const {
  if (arity != 2) return "";
  for (const std::string& col : sensitive) {
    const Value& a = d.value(i, col);
    const Value& b = d.value(j, col);
    if (!value_equal(a, b))
      return col + ": " + value_text(a) + " vs " + value_text(b);
  }
  return "";
}

BindingSet default_bindings(const std::string& suite,
                            const ThresholdConfig& cfg, const Schema& schema) {
  BindingSet set;
  const auto add = [&](PredicateBinding b) {
    for (const std::string& col : b.referenced_columns())
      require_column(schema, col, b.name);
    set.emplace(b.name, std::move(b));
  };
  const auto equals_one = [](const std::string& name,
                             const std::string& column) {
    PredicateBinding b;
    b.name = name;
    b.kind = RuleKind::EqualsValue;
    b.column = column;
    b.expected = static_cast<long long>(1);
    return b;
  };

  PredicateBinding sim;
  sim.name = "similar";
  sim.arity = 2;
  sim.kind = RuleKind::SimilarRows;
  sim.nonsensitive = cfg.nonsensitive_columns;

  PredicateBinding flip;
  flip.name = "flip_pair";
  flip.arity = 2;
  flip.kind = RuleKind::FlipPair;
  flip.nonsensitive = cfg.nonsensitive_columns;
  flip.sensitive = cfg.sensitive_columns;

  if (suite == "compas") {
    PredicateBinding prior;
    prior.name = "prior_offenses";
    prior.kind = RuleKind::GreaterThanZero;
    prior.column = "priors_count";
    add(prior);

    add(equals_one("recidivist", "outcome"));

    PredicateBinding assess;
    assess.name = "assess";
    assess.kind = RuleKind::ThresholdGE;
    assess.column = "decile_score";
    assess.threshold = static_cast<double>(cfg.decile_threshold);
    add(assess);

    add(equals_one("appeals", "appeal"));
  } else if (suite == "loan") {
    if (!cfg.credit_threshold)
      throw ConfigError("loan suite requires credit_threshold");
    if (!cfg.income_threshold)
      throw ConfigError("loan suite requires income_threshold");

    PredicateBinding credit;
    credit.name = "credit_ok";
    credit.kind = RuleKind::ThresholdGE;
    credit.column = "credit";
    credit.threshold = *cfg.credit_threshold;
    add(credit);

    PredicateBinding income;
    income.name = "income_ok";
    income.kind = RuleKind::ThresholdGE;
    income.column = "income";
    income.threshold = *cfg.income_threshold;
    add(income);

    add(equals_one("applies", "applied"));
    add(equals_one("approved", "approved"));
    add(equals_one("appeals", "appeal"));
  } else {
    throw std::out_of_range("unknown suite: " + suite);
  }

  add(sim);
  add(flip);
  return set;
}

PredicateBinding parse_binding_rule(const std::string& predicate,
                                    const std::string& rule,
                                    const ThresholdConfig& cfg,
                                    const Schema& schema) {
  PredicateBinding b;
  b.name = predicate;

  std::istringstream in(rule);
  std::string column, op, rhs;
  in >> column >> op;
  std::getline(in, rhs);
  const std::size_t a = rhs.find_first_not_of(" \t");
  rhs = a == std::string::npos ? "" : rhs.substr(a);

  if (column.empty())
    throw ConfigError("binding '" + predicate + "': empty rule");
  b.column = column;

  if (op.empty()) {
    b.kind = RuleKind::BoolColumn;
  } else if (op == ">" && rhs == "0") {
    b.kind = RuleKind::GreaterThanZero;
  } else if (op == ">=") {
    b.kind = RuleKind::ThresholdGE;
    if (rhs == "$decile_threshold") {
      b.threshold = static_cast<double>(cfg.decile_threshold);
    } else if (rhs == "$credit_threshold") {
      if (!cfg.credit_threshold)
        throw ConfigError("binding '" + predicate +
                          "': credit_threshold is not set");
      b.threshold = *cfg.credit_threshold;
    } else if (rhs == "$income_threshold") {
      if (!cfg.income_threshold)
        throw ConfigError("binding '" + predicate +
                          "': income_threshold is not set");
      b.threshold = *cfg.income_threshold;
    } else {
      char* end = nullptr;
      b.threshold = std::strtod(rhs.c_str(), &end);
      if (rhs.empty() || end != rhs.c_str() + rhs.size())
        throw ConfigError("binding '" + predicate + "': bad threshold '" +
                          rhs + "'");
    }
  } else if (op == "==") {
    b.kind = RuleKind::EqualsValue;
    if (rhs.empty())
      throw ConfigError("binding '" + predicate + "': missing value");
    char* end = nullptr;
    const long long i = std::strtoll(rhs.c_str(), &end, 10);
    if (end == rhs.c_str() + rhs.size()) {
      b.expected = i;
    } else if (rhs == "true" || rhs == "false") {
      b.expected = rhs == "true";
    } else {
      b.expected = rhs;
    }
  } else {
    throw ConfigError("binding '" + predicate + "': unsupported rule '" +
                      rule + "'");
  }

  require_column(schema, b.column, predicate);
  return b;
}

void apply_overrides(BindingSet& set,
                     const std::vector<BindingOverride>& overrides,
                     const ThresholdConfig& cfg, const Schema& schema) {
  for (const BindingOverride& o : overrides)
    set[o.predicate] = parse_binding_rule(o.predicate, o.rule, cfg, schema);
}

bool similar(const Dataset& d, const std::string& i, const std::string& j,
             const ThresholdConfig& cfg) {
  if (i == j)
    throw std::invalid_argument("similar: row ids must differ");
  const DataRow& a = d.require(i);
  const DataRow& b = d.require(j);
  for (const std::string& col : cfg.nonsensitive_columns)
    if (!value_equal(d.value(a, col), d.value(b, col))) return false;
  return true;
}

}  // namespace dtl
