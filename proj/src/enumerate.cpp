#include "dtl/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

namespace dtl {

namespace {

constexpr int kMaxStates = 8;
constexpr unsigned long long kModelLimit = 1ull << 40;

// ── Compact models ────────────────────────────────────────────────────
//
// The enumeration loop runs over bit-packed models: the valuation is a
// single word (bit state*atoms + atom), and each relation is one
// successor mask per state. Materialization to KripkeModel happens
// only for callbacks and counterexamples.

struct CompactModel {
  int n = 1;
  int atoms = 0;
  bool trace = true;
  std::uint64_t val = 0;
  std::uint64_t ro[kMaxStates] = {};
  std::uint64_t rt[kMaxStates] = {};
  std::uint64_t closure[kMaxStates] = {};  // reflexive-transitive R_T image

  void fill_closure() {
    if (trace) {
      const std::uint64_t all = (n == 64) ? ~0ull : (1ull << n) - 1;
      for (int s = 0; s < n; ++s) closure[s] = all & ~((1ull << s) - 1);
      return;
    }
    for (int s = 0; s < n; ++s) closure[s] = (1ull << s) | rt[s];
    for (int round = 0; round < n; ++round) {
      for (int s = 0; s < n; ++s) {
        std::uint64_t mask = closure[s];
        for (std::uint64_t rest = mask; rest;) {
          const int t = std::countr_zero(rest);
          rest &= rest - 1;
          mask |= closure[t];
        }
        closure[s] = mask;
      }
    }
  }

  bool atom_true(int state, int atom) const {
    return (val >> (state * atoms + atom)) & 1;
  }
};

// Ground formulas compiled to a flat program; node `a` is the left
// child (or atom index), `b` the right child.
struct CNode {
  Op op;
  int a = -1;
  int b = -1;
};

int compile_ground(const Formula& f, const std::map<std::string, int>& atom_index,
                   std::vector<CNode>& out) {
  switch (f.op) {
    case Op::Atom: {
      GroundAtom atom;
      atom.pred = f.label;
      for (const Term& t : f.args) {
        if (t.kind != TermKind::Constant)
          throw std::invalid_argument(
              "check_validity requires ground formulas; found variable '" +
              t.name + "'");
        atom.args.push_back(t.name);
      }
      auto it = atom_index.find(atom.key());
      out.push_back({Op::Atom, it->second, -1});
      break;
    }
    case Op::Forall:
    case Op::Exists:
      throw std::invalid_argument(
          "check_validity requires quantifier-free formulas");
    default: {
      const int l = f.left ? compile_ground(*f.left, atom_index, out) : -1;
      const int r = f.right ? compile_ground(*f.right, atom_index, out) : -1;
      out.push_back({f.op, l, r});
    }
  }
  return static_cast<int>(out.size()) - 1;
}

bool eval_compact(const std::vector<CNode>& prog, int node,
                  const CompactModel& m, int state) {
  const CNode& c = prog[static_cast<std::size_t>(node)];
  switch (c.op) {
    case Op::Atom:
      return m.atom_true(state, c.a);
    case Op::Not:
      return !eval_compact(prog, c.a, m, state);
    case Op::And:
      return eval_compact(prog, c.a, m, state) &&
             eval_compact(prog, c.b, m, state);
    case Op::Or:
      return eval_compact(prog, c.a, m, state) ||
             eval_compact(prog, c.b, m, state);
    case Op::Implies:
      return !eval_compact(prog, c.a, m, state) ||
             eval_compact(prog, c.b, m, state);
    case Op::Oblig:
      for (std::uint64_t rest = m.ro[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (!eval_compact(prog, c.a, m, t)) return false;
      }
      return true;
    case Op::Perm:
      for (std::uint64_t rest = m.ro[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (eval_compact(prog, c.a, m, t)) return true;
      }
      return false;
    case Op::Forb:
      for (std::uint64_t rest = m.ro[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (eval_compact(prog, c.a, m, t)) return false;
      }
      return true;
    case Op::Always:
      if (m.trace) {
        for (int j = state; j < m.n; ++j)
          if (!eval_compact(prog, c.a, m, j)) return false;
        return true;
      }
      for (std::uint64_t rest = m.closure[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (!eval_compact(prog, c.a, m, t)) return false;
      }
      return true;
    case Op::Eventually:
      if (m.trace) {
        for (int j = state; j < m.n; ++j)
          if (eval_compact(prog, c.a, m, j)) return true;
        return false;
      }
      for (std::uint64_t rest = m.closure[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (eval_compact(prog, c.a, m, t)) return true;
      }
      return false;
    case Op::Until: {
      if (m.trace) {
        for (int j = state; j < m.n; ++j) {
          if (eval_compact(prog, c.b, m, j)) return true;
          if (!eval_compact(prog, c.a, m, j)) return false;
        }
        return false;
      }
      // Least fixpoint over the states reachable from `state`.
      std::uint64_t phi = 0, sat = 0;
      for (std::uint64_t rest = m.closure[state]; rest;) {
        const int t = std::countr_zero(rest);
        rest &= rest - 1;
        if (eval_compact(prog, c.b, m, t)) sat |= 1ull << t;
        if (eval_compact(prog, c.a, m, t)) phi |= 1ull << t;
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::uint64_t rest = m.closure[state] & phi & ~sat; rest;) {
          const int t = std::countr_zero(rest);
          rest &= rest - 1;
          if (m.rt[t] & sat) {
            sat |= 1ull << t;
            changed = true;
          }
        }
      }
      return (sat >> state) & 1;
    }
    default:
      throw std::invalid_argument("quantifier survived compilation");
  }
}

// Enumeration order: state count ascending; within it R_T masks (in
// general mode), then R_O masks, then valuations, each counting up
// from zero. Bit (a*n + b) of a relation word is the edge a -> b.
template <typename Fn>
void for_each_compact(const ModelBounds& bounds, int atom_count, Fn&& fn) {
  for (int n = 1; n <= bounds.max_states; ++n) {
    CompactModel m;
    m.n = n;
    m.atoms = atom_count;
    m.trace = bounds.trace_only;
    const std::uint64_t rel_count = 1ull << (n * n);
    const std::uint64_t val_count = 1ull << (n * atom_count);
    const std::uint64_t rt_count = bounds.trace_only ? 1 : rel_count;
    for (std::uint64_t rt_bits = 0; rt_bits < rt_count; ++rt_bits) {
      if (bounds.trace_only) {
        for (int s = 0; s < n; ++s)
          m.rt[s] = (s + 1 < n) ? (1ull << (s + 1)) : 0;
      } else {
        for (int s = 0; s < n; ++s)
          m.rt[s] = (rt_bits >> (s * n)) & ((1ull << n) - 1);
      }
      m.fill_closure();
      for (std::uint64_t ro_bits = 0; ro_bits < rel_count; ++ro_bits) {
        for (int s = 0; s < n; ++s)
          m.ro[s] = (ro_bits >> (s * n)) & ((1ull << n) - 1);
        for (std::uint64_t val = 0; val < val_count; ++val) {
          m.val = val;
          if (!fn(m)) return;
        }
      }
    }
  }
}

KripkeModel materialize(const CompactModel& cm,
                        const std::vector<GroundAtom>& vocab,
                        const std::vector<std::string>& domain) {
  KripkeModel out;
  for (int s = 0; s < cm.n; ++s) out.states.push_back("s" + std::to_string(s));
  out.rt.resize(static_cast<std::size_t>(cm.n));
  out.ro.resize(static_cast<std::size_t>(cm.n));
  for (int s = 0; s < cm.n; ++s) {
    for (int t = 0; t < cm.n; ++t) {
      if ((cm.rt[s] >> t) & 1) out.rt[static_cast<std::size_t>(s)].push_back(t);
      if ((cm.ro[s] >> t) & 1) out.ro[static_cast<std::size_t>(s)].push_back(t);
    }
  }
  out.domain = domain;
  for (std::size_t a = 0; a < vocab.size(); ++a) {
    out.predicates[vocab[a].pred] = static_cast<int>(vocab[a].args.size());
    std::vector<bool> row(static_cast<std::size_t>(cm.n), false);
    for (int s = 0; s < cm.n; ++s)
      row[static_cast<std::size_t>(s)] = cm.atom_true(s, static_cast<int>(a));
    out.truth[vocab[a].key()] = std::move(row);
  }
  return out;
}

std::vector<std::string> constants_of(const std::vector<GroundAtom>& vocab) {
  std::vector<std::string> out;
  for (const GroundAtom& a : vocab)
    for (const std::string& c : a.args) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void collect_ground_atoms(const Formula& f, std::map<std::string, GroundAtom>& out) {
  if (f.op == Op::Atom) {
    GroundAtom atom;
    atom.pred = f.label;
    for (const Term& t : f.args) {
      if (t.kind != TermKind::Constant)
        throw std::invalid_argument(
            "check_validity requires ground formulas; found variable '" +
            t.name + "'");
      atom.args.push_back(t.name);
    }
    out.emplace(atom.key(), std::move(atom));
  }
  if (f.left) collect_ground_atoms(*f.left, out);
  if (f.right) collect_ground_atoms(*f.right, out);
}

}  // namespace

unsigned long long count_models(const ModelBounds& bounds, int atom_count) {
  if (bounds.max_states < 1) throw BoundError("max_states must be at least 1");
  if (bounds.max_states > kMaxStates)
    throw BoundError("max_states exceeds supported limit of " +
                     std::to_string(kMaxStates));
  if (atom_count < 0 || atom_count > bounds.max_atoms)
    throw BoundError("atom vocabulary exceeds max_atoms bound");
  unsigned __int128 total = 0;
  for (int n = 1; n <= bounds.max_states; ++n) {
    const int rel_bits = n * n;
    const int val_bits = n * atom_count;
    int bits = rel_bits + val_bits + (bounds.trace_only ? 0 : rel_bits);
    if (bits >= 63) throw BoundError("model space exceeds 2^40 models");
    total += static_cast<unsigned __int128>(1) << bits;
    if (total > kModelLimit) throw BoundError("model space exceeds 2^40 models");
  }
  return static_cast<unsigned long long>(total);
}

void enumerate_models(const ModelBounds& bounds,
                      const std::vector<GroundAtom>& vocab,
                      const std::function<bool(const KripkeModel&)>& visit) {
  count_models(bounds, static_cast<int>(vocab.size()));  // bound guard
  const std::vector<std::string> domain = constants_of(vocab);
  for_each_compact(bounds, static_cast<int>(vocab.size()),
                   [&](const CompactModel& cm) {
                     return visit(materialize(cm, vocab, domain));
                   });
}

ValidityResult check_validity(const std::vector<FormulaPtr>& premises,
                              const FormulaPtr& conclusion,
                              const ModelBounds& bounds) {
  std::map<std::string, GroundAtom> atom_map;
  for (const FormulaPtr& p : premises) collect_ground_atoms(*p, atom_map);
  collect_ground_atoms(*conclusion, atom_map);

  std::vector<GroundAtom> vocab;
  std::map<std::string, int> atom_index;
  for (const auto& [key, atom] : atom_map) {
    atom_index[key] = static_cast<int>(vocab.size());
    vocab.push_back(atom);
  }
  count_models(bounds, static_cast<int>(vocab.size()));  // bound guard

  std::vector<std::vector<CNode>> premise_progs;
  for (const FormulaPtr& p : premises) {
    std::vector<CNode> prog;
    compile_ground(*p, atom_index, prog);
    premise_progs.push_back(std::move(prog));
  }
  std::vector<CNode> conclusion_prog;
  compile_ground(*conclusion, atom_index, conclusion_prog);

  const std::vector<std::string> domain = constants_of(vocab);
  ValidityResult result;
  for_each_compact(bounds, static_cast<int>(vocab.size()),
                   [&](const CompactModel& cm) {
                     ++result.models_checked;
                     for (int s = 0; s < cm.n; ++s) {
                       bool premises_hold = true;
                       for (const auto& prog : premise_progs) {
                         if (!eval_compact(prog, static_cast<int>(prog.size()) - 1,
                                           cm, s)) {
                           premises_hold = false;
                           break;
                         }
                       }
                       if (!premises_hold) continue;
                       if (!eval_compact(conclusion_prog,
                                         static_cast<int>(conclusion_prog.size()) - 1,
                                         cm, s)) {
                         result.valid = false;
                         result.counterexample = ValidityCounterexample{
                             materialize(cm, vocab, domain), s, {}};
                         return false;
                       }
                     }
                     return true;
                   });
  return result;
}

}  // namespace dtl
