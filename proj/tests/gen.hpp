#pragma once
//
// Deterministic generators for the test suite. Everything is seeded
// explicitly so failures reproduce.

#include <random>
#include <string>
#include <vector>

#include "dtl/formula.hpp"
#include "dtl/model.hpp"

namespace gen {

struct Rng {
  std::mt19937 engine;

  explicit Rng(unsigned seed) : engine(seed) {}

  int below(int n) {
    return static_cast<int>(engine() % static_cast<unsigned>(n));
  }
  bool flip() { return (engine() & 1u) != 0; }
};

// Ground formula over 0-ary predicates, all thirteen connectives except
// the quantifiers (those need a domain; see quantified_formula).
inline dtl::FormulaPtr ground_formula(Rng& rng,
                                      const std::vector<std::string>& atoms,
                                      int depth) {
  using namespace dtl;
  if (depth <= 0) return make_atom(atoms[static_cast<std::size_t>(rng.below(
      static_cast<int>(atoms.size())))]);
  switch (rng.below(12)) {
    case 0:
      return make_atom(
          atoms[static_cast<std::size_t>(rng.below(static_cast<int>(atoms.size())))]);
    case 1: return make_not(ground_formula(rng, atoms, depth - 1));
    case 2:
      return make_and(ground_formula(rng, atoms, depth - 1),
                      ground_formula(rng, atoms, depth - 1));
    case 3:
      return make_or(ground_formula(rng, atoms, depth - 1),
                     ground_formula(rng, atoms, depth - 1));
    case 4:
      return make_implies(ground_formula(rng, atoms, depth - 1),
                          ground_formula(rng, atoms, depth - 1));
    case 5: return make_oblig(ground_formula(rng, atoms, depth - 1));
    case 6: return make_perm(ground_formula(rng, atoms, depth - 1));
    case 7: return make_forb(ground_formula(rng, atoms, depth - 1));
    case 8: return make_always(ground_formula(rng, atoms, depth - 1));
    case 9: return make_eventually(ground_formula(rng, atoms, depth - 1));
    case 10:
      return make_until(ground_formula(rng, atoms, depth - 1),
                        ground_formula(rng, atoms, depth - 1));
    default:
      return make_until(ground_formula(rng, atoms, depth - 1),
                        ground_formula(rng, atoms, depth - 1));
  }
}

// Formula with variables, constants and quantifiers, for parser
// round-trip and substitution tests. May contain free variables.
inline dtl::FormulaPtr quantified_formula(Rng& rng, int depth) {
  using namespace dtl;
  static const std::vector<std::string> preds = {"p", "q", "fair", "cf"};
  static const std::vector<std::string> vars = {"x", "y", "i", "j"};
  static const std::vector<std::string> consts = {"r1", "r2", "d0"};

  if (depth <= 0) {
    const std::string& pred =
        preds[static_cast<std::size_t>(rng.below(static_cast<int>(preds.size())))];
    std::vector<Term> args;
    const int arity = rng.below(3);  // 0, 1 or 2 arguments
    for (int i = 0; i < arity; ++i) {
      if (rng.flip())
        args.push_back(Term::var(
            vars[static_cast<std::size_t>(rng.below(static_cast<int>(vars.size())))]));
      else
        args.push_back(Term::constant(consts[static_cast<std::size_t>(
            rng.below(static_cast<int>(consts.size())))]));
    }
    // Keep arity consistent per predicate name so collect_predicates
    // does not trip: encode the arity into the name.
    return make_atom(pred + std::to_string(args.size()), std::move(args));
  }
  switch (rng.below(13)) {
    case 0: return quantified_formula(rng, 0);
    case 1: return make_not(quantified_formula(rng, depth - 1));
    case 2:
      return make_and(quantified_formula(rng, depth - 1),
                      quantified_formula(rng, depth - 1));
    case 3:
      return make_or(quantified_formula(rng, depth - 1),
                     quantified_formula(rng, depth - 1));
    case 4:
      return make_implies(quantified_formula(rng, depth - 1),
                          quantified_formula(rng, depth - 1));
    case 5: return make_oblig(quantified_formula(rng, depth - 1));
    case 6: return make_perm(quantified_formula(rng, depth - 1));
    case 7: return make_forb(quantified_formula(rng, depth - 1));
    case 8: return make_always(quantified_formula(rng, depth - 1));
    case 9: return make_eventually(quantified_formula(rng, depth - 1));
    case 10:
      return make_until(quantified_formula(rng, depth - 1),
                        quantified_formula(rng, depth - 1));
    case 11:
      return make_forall(
          vars[static_cast<std::size_t>(rng.below(static_cast<int>(vars.size())))],
          quantified_formula(rng, depth - 1));
    default:
      return make_exists(
          vars[static_cast<std::size_t>(rng.below(static_cast<int>(vars.size())))],
          quantified_formula(rng, depth - 1));
  }
}

// Random trace: length 1..max_len, 0-ary atoms, random deontic edges.
inline dtl::TraceModel trace(Rng& rng, const std::vector<std::string>& atoms,
                             int max_len) {
  dtl::TraceModel t;
  t.length = 1 + rng.below(max_len);
  t.deontic.resize(static_cast<std::size_t>(t.length));
  for (auto& succ : t.deontic)
    for (int j = 0; j < t.length; ++j)
      if (rng.flip()) succ.push_back(j);
  for (const std::string& a : atoms) {
    t.predicates[a] = 0;
    std::vector<bool> vals(static_cast<std::size_t>(t.length));
    for (int j = 0; j < t.length; ++j) vals[static_cast<std::size_t>(j)] = rng.flip();
    t.truth[a] = vals;
  }
  return t;
}

// Random general Kripke model: 1..max_states states, arbitrary R_T and
// R_O, 0-ary atoms.
inline dtl::KripkeModel kripke(Rng& rng, const std::vector<std::string>& atoms,
                               int max_states) {
  dtl::KripkeModel m;
  const int n = 1 + rng.below(max_states);
  for (int i = 0; i < n; ++i) m.states.push_back("s" + std::to_string(i));
  m.rt.resize(static_cast<std::size_t>(n));
  m.ro.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (rng.flip()) m.rt[static_cast<std::size_t>(i)].push_back(j);
      if (rng.flip()) m.ro[static_cast<std::size_t>(i)].push_back(j);
    }
  for (const std::string& a : atoms) {
    m.predicates[a] = 0;
    std::vector<bool> vals(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(j)] = rng.flip();
    m.truth[a] = vals;
  }
  return m;
}

}  // namespace gen
