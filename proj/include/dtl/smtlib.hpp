#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "dtl/grounding.hpp"
#include "dtl/verdict.hpp"

namespace dtl {

struct VerifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quantifier-free SMT-LIB 2 for an external cross-check. Grounded atoms
// become nullary boolean constants carrying their dataset values, and
// the single assert negates the property, so
//     sat   => the property is violated on this dataset,
//     unsat => the property holds.
// Output is byte-deterministic for equal inputs.
std::string emit_smtlib(const GroundedProperty& g);

enum class SolverStatus { Sat, Unsat, Unknown };

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  std::optional<std::map<std::string, bool>> model;
};

// First token of the solver's stdout decides the status; a following
// (model ...) block with boolean define-funs is parsed when present.
// Throws VerifyError on unrecognizable output.
SolverResult parse_solver_result(const std::string& text);

// sat on the negated assert means the property failed.
Status status_from_solver(SolverStatus s);  // throws VerifyError on Unknown

}  // namespace dtl
