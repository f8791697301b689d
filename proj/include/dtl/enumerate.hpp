#pragma once
//
// Bounded model enumeration and a refutation-style validity check:
// premises |= conclusion holds up to the bounds when no enumerated
// model has a state satisfying every premise but not the conclusion.

#include <functional>
#include <optional>

#include "dtl/model.hpp"

namespace dtl {

struct ModelBounds {
  int max_states = 3;
  int max_atoms = 8;      // largest ground-atom vocabulary accepted
  int domain_size = 1;    // constants used when grounding quantifiers
  bool trace_only = true; // R_T fixed to the chain s0 -> s1 -> ...
};

struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of models the bounds denote for a vocabulary of `atom_count`
// ground atoms:
//   sum over n = 1..max_states of
//     2^(n*atom_count) * 2^(n^2) * (trace_only ? 1 : 2^(n^2))
// Throws BoundError when the total exceeds 2^40.
unsigned long long count_models(const ModelBounds& bounds, int atom_count);

// Visits every model within the bounds exactly once (every valuation,
// every R_O edge set, and in general mode every R_T edge set). The
// callback returns false to stop early.
void enumerate_models(const ModelBounds& bounds,
                      const std::vector<GroundAtom>& vocab,
                      const std::function<bool(const KripkeModel&)>& visit);

struct ValidityCounterexample {
  KripkeModel model;
  int state = 0;
  Assignment assignment;  // always empty: inputs are ground
};

struct ValidityResult {
  bool valid = true;
  unsigned long long models_checked = 0;
  std::optional<ValidityCounterexample> counterexample;
};

// Premises and conclusion must be ground and quantifier-free (throws
// std::invalid_argument otherwise). Scans models in enumeration order
// and stops at the first (model, state) where all premises hold and
// the conclusion fails; models_checked then counts the models examined
// up to and including that one.
ValidityResult check_validity(const std::vector<FormulaPtr>& premises,
                              const FormulaPtr& conclusion,
                              const ModelBounds& bounds);

}  // namespace dtl
