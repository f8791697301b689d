#pragma once

#include <string>
#include <vector>

#include "dtl/formula.hpp"

namespace dtl {

// One auditable property. `stated` is the declarative form; `audited`
// is the operational form the auditor actually grounds. They differ
// only where the stated form mentions predicates with no decidable
// row rule (sensitive_used), in which case `note` explains the
// substitution.
struct SuiteProperty {
  std::string id;  // "a".."e"
  FormulaPtr stated;
  FormulaPtr audited;
  std::string description;
  std::string note;
};

const std::vector<SuiteProperty>& compas_suite();
const std::vector<SuiteProperty>& loan_suite();

// Lookup by suite name {"compas","loan"}; throws std::out_of_range.
const std::vector<SuiteProperty>& suite(const std::string& name);
const SuiteProperty& suite_property(const std::string& name,
                                    const std::string& id);

// Rewrite a property into the quantified boolean form used for
// single-snapshot dataset audits:
//   - P and Forb eliminated through their O-dualities,
//   - temporal operators collapsed to the snapshot ([]f, <>f -> f;
//     f U g -> g),
//   - O(f) read as a universal claim over the row variables free in f
//     (so P becomes an existential via the negation),
//   - double negations and negated quantifiers simplified.
// The result is deontic- and temporal-free.
FormulaPtr audit_normal_form(const FormulaPtr& f);

}  // namespace dtl
