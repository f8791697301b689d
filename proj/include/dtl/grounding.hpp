#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/bindings.hpp"
#include "dtl/dataset.hpp"
#include "dtl/formula.hpp"
#include "dtl/model.hpp"
#include "dtl/suites.hpp"

namespace dtl {

struct GroundingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reproduction mode rewrites deontic operators into quantifiers over
// rows (the encoding the audit algorithms use); strict mode refuses
// deontic operators in dataset audits outright.
enum class AuditMode { Reproduction, Strict };

enum class CircuitOp { True, False, Atom, Not, And, Or, Implies };

struct Circuit {
  CircuitOp op = CircuitOp::True;
  int atom = -1;               // CircuitOp::Atom
  std::vector<Circuit> kids;   // Not: 1, Implies: 2, And/Or: any
};

// One grounded predicate application, evaluated against the dataset at
// grounding time.
struct RowAtom {
  std::string predicate;
  std::vector<std::string> rows;
  bool value = false;
  std::string rule_text;  // decidable rule behind the predicate
  std::string actual;     // observed cell value (unary rules)
  std::string detail;     // differing sensitive column (pair rules)

  std::string key() const;  // e.g. recidivist(4), flip_pair(L03,L04)
};

// Top-level conjunct with the rows it talks about.
struct GroundedClause {
  std::vector<std::string> rows;
  std::string text;
};

struct GroundOptions {
  AuditMode mode = AuditMode::Reproduction;
  // Pair-quantified properties switch from full ordered-pair expansion
  // to a nonsensitive-tuple index above this many eligible rows.
  std::size_t pair_group_threshold = 256;
};

struct GroundedProperty {
  std::string property_id;
  FormulaPtr source;  // formula as handed in
  FormulaPtr normal;  // audit normal form actually expanded
  Circuit root;
  std::vector<RowAtom> atoms;           // index space for Circuit.atom
  std::vector<GroundedClause> clauses;  // parallel to root.kids when root is And
  std::size_t rows_total = 0;
  std::size_t rows_eligible = 0;
  std::size_t rows_skipped = 0;   // missing a referenced column value
  std::size_t pairs_expanded = 0;
  bool vacuous = false;   // a universal quantifier had no eligible rows
  bool grouped = false;   // pair-index path was taken
};

GroundedProperty ground_property(const FormulaPtr& p, const Dataset& d,
                                 const BindingSet& b,
                                 const GroundOptions& opts = {});

bool eval_circuit(const Circuit& c, const std::vector<RowAtom>& atoms);
bool eval_circuit(const Circuit& c, const std::vector<bool>& values);

// Single-state model induced by (dataset, bindings) over the given row
// ids: the independent evaluation route for grounding-soundness checks.
KripkeModel induced_row_model(const Dataset& d, const BindingSet& b,
                              const std::vector<std::string>& rows);

}  // namespace dtl
