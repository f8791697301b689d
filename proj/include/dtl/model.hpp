#pragma once
//
// Kripke models with separate temporal and deontic accessibility, plus
// the linear-trace specialization, and the evaluation functions.
//
// Model M = (S, R_T, R_O, D, I):
//   []phi / <>phi quantify over the reflexive-transitive R_T image of
//   the current state (so on a linear chain they read "from now on" /
//   "now or later", the finite-trace convention);
//   O(phi) / P(phi) quantify over direct R_O successors; R_O need not
//   be serial, so O is vacuously true at states without deontic
//   successors;
//   phi U psi holds when some R_T path reaches a psi-state with phi at
//   every earlier state on the path (including the current one);
//   forall/exists range over the constant domain D.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtl/formula.hpp"

namespace dtl {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground atom: predicate applied to domain constants only.
struct GroundAtom {
  std::string pred;
  std::vector<std::string> args;

  std::string key() const;
  bool operator==(const GroundAtom&) const = default;
  bool operator<(const GroundAtom& o) const {
    return key() < o.key();
  }
};

using Assignment = std::map<std::string, std::string>;  // variable -> constant

struct KripkeModel {
  std::vector<std::string> states;             // index = state id
  std::vector<std::vector<int>> rt;            // temporal successors
  std::vector<std::vector<int>> ro;            // deontic successors
  std::vector<std::string> domain;             // constants
  std::map<std::string, int> predicates;       // symbol -> arity
  std::map<std::string, std::vector<bool>> truth;  // atom key -> per-state value

  int state_index(const std::string& name) const;  // -1 if unknown
  bool holds(int state, const std::string& atom_key) const;
};

// A finite linear trace: states are positions 0..length-1, R_T is the
// chain i -> i+1, and each position carries its own deontic successor
// set (indices into the same trace).
struct TraceModel {
  int length = 0;
  std::vector<std::vector<int>> deontic;
  std::vector<std::string> domain;
  std::map<std::string, int> predicates;
  std::map<std::string, std::vector<bool>> truth;
};

// The Kripke model a trace denotes: chain R_T, deontic edges as given.
KripkeModel induced_model(const TraceModel& t);

// Def-style evaluation on a general model. Throws EvalError on unknown
// predicate symbols, arity mismatches, unbound variables, and unknown
// constants. Pure: equal inputs give equal results.
bool evaluate(const KripkeModel& m, int state, const Assignment& sigma,
              const Formula& f);

// Finite-trace evaluation at position k:
//   []phi  : phi at every j >= k          <>phi : phi at some j >= k
//   phi U psi : some j >= k with psi at j and phi at every i, k <= i < j
//   O/P    : over the deontic successors of position k
bool evaluate_trace(const TraceModel& t, int k, const Assignment& sigma,
                    const Formula& f);

// ── Model files ───────────────────────────────────────────────────────
//
//   # comment
//   states: s0 s1 s2
//   domain: a b
//   pred: fair/1 p/0
//   RT: s0 s1
//   RO: s1 s2
//   I: s0 fair(a)=true
//
// Predicates named in I: lines are declared implicitly; every
// (state, ground atom) pair not listed is false.

KripkeModel load_model(const std::string& path);
KripkeModel parse_model(const std::string& text);
std::string render_model(const KripkeModel& m);

}  // namespace dtl
