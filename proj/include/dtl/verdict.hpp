#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dtl/grounding.hpp"

namespace dtl {

enum class Status { Satisfied, Unsatisfied };

std::string status_name(Status s);

struct Counterexample {
  std::vector<std::string> rows;
  std::string clause;  // the violated instance, rendered
  std::vector<std::pair<std::string, bool>> atom_values;
  std::vector<int> atom_ids;  // indices into GroundedProperty.atoms
  int clause_index = -1;      // -1 when the whole circuit is the clause
};

struct VerdictStats {
  std::size_t rows_total = 0;
  std::size_t rows_eligible = 0;
  std::size_t rows_skipped = 0;
  std::size_t pairs_checked = 0;
  long long elapsed_us = 0;
};

struct Verdict {
  std::string property_id;
  Status status = Status::Satisfied;
  std::vector<Counterexample> counterexamples;
  VerdictStats stats;
  bool vacuous = false;
};

// Exhaustive circuit evaluation; atoms carry their dataset values, so
// there is no search. Every false top-level conjunct becomes one
// counterexample.
Verdict check_grounded(const GroundedProperty& g);

// Four-step refutation trace: negate, isolate a failing clause,
// substitute the observed atom values, contradiction.
struct ExplanationStep {
  std::string kind;  // negate | isolate | substitute | contradiction
  std::string rule;  // negate | monotonicity | atom-eval | transitivity
  std::string message;
};

struct ExplanationTrace {
  std::string property_id;
  int clause_index = -1;
  std::vector<std::pair<int, bool>> atom_claims;  // atom id -> claimed value
  std::vector<ExplanationStep> steps;
  std::string final_message;
};

// Precondition: v.status == Unsatisfied (throws std::logic_error).
ExplanationTrace explain(const Verdict& v, const GroundedProperty& g);

// Re-evaluates every claimed atom against the dataset and re-derives
// the refutation; true iff every claim holds and the isolated clause
// still evaluates false.
bool replay(const ExplanationTrace& t, const GroundedProperty& g,
            const Dataset& d, const BindingSet& b);

}  // namespace dtl
