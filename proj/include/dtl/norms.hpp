#pragma once
//
// The axiom catalog and the derived claims checked against it, with a
// bounded-enumeration validity check for each claim.
//
// Axiom groups: A1.x ethical agency, A2.x fairness over time, A3.x
// transparency and accountability. Claims T1..T8 carry the premise set
// their derivation actually uses; steps a derivation introduces from
// domain knowledge (rather than from a listed axiom) appear as
// explicit auxiliary premises, never silently.

#include <optional>
#include <string>
#include <vector>

#include "dtl/enumerate.hpp"
#include "dtl/formula.hpp"

namespace dtl {

struct AxiomSchema {
  std::string id;       // "A1.1" .. "A3.3"
  FormulaPtr formula;   // open formula; x, a, c are free/quantified as written
  std::string prose;
};

const std::vector<AxiomSchema>& axiom_catalog();

// Throws std::out_of_range for unknown ids.
FormulaPtr axiom_formula(const std::string& id);

struct TheoremSpec {
  std::string id;  // "T1" .. "T8"
  std::vector<std::string> premise_ids;  // axiom ids and aux ids, in proof order
  std::vector<std::pair<std::string, FormulaPtr>> aux_premises;
  FormulaPtr conclusion;
  std::string expected_status;  // "valid-up-to-bounds" | "refutable" | "unknown"
  std::string prose;

  FormulaPtr premise(const std::string& pid) const;  // axiom or aux lookup
};

TheoremSpec theorem_spec(const std::string& id);
std::vector<std::string> theorem_ids();

// Predicate symbols the axioms and claims draw from (fixed arities).
const std::vector<PredicateSymbol>& ethics_vocabulary();

// Universal closure over free variables, then quantifier expansion
// over `domain` (forall -> conjunction, exists -> disjunction).
FormulaPtr ground_over_domain(const FormulaPtr& f,
                              const std::vector<std::string>& domain);

struct ValidationReport {
  std::string theorem_id;
  std::vector<std::string> premise_ids;
  bool valid = false;
  unsigned long long models_checked = 0;
  std::optional<ValidityCounterexample> counterexample;
};

// Grounds premises and conclusion over bounds.domain_size constants
// (d0, d1, ...), asserts each premise from the evaluation state on
// ([]-wrapped unless its root is temporal already: [], <> or U roots
// are taken as written), and sweeps the bounded model space.
ValidationReport validate_theorem(const std::string& id, const ModelBounds& bounds);

// One line per claim: "<id> premises=[..] <valid|refuted> models=<n>".
std::string report_line(const ValidationReport& r);

}  // namespace dtl
