#include "dtl/formula.hpp"

#include <map>
#include <stdexcept>

namespace dtl {

namespace {

FormulaPtr node(Op op, std::string label, std::vector<Term> args,
                FormulaPtr l, FormulaPtr r) {
  return std::make_shared<const Formula>(op, std::move(label), std::move(args),
                                         std::move(l), std::move(r));
}

}  // namespace

FormulaPtr make_atom(std::string pred, std::vector<Term> args) {
  return node(Op::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}
FormulaPtr make_not(FormulaPtr f) {
  return node(Op::Not, "", {}, std::move(f), nullptr);
}
FormulaPtr make_and(FormulaPtr l, FormulaPtr r) {
  return node(Op::And, "", {}, std::move(l), std::move(r));
}
FormulaPtr make_or(FormulaPtr l, FormulaPtr r) {
  return node(Op::Or, "", {}, std::move(l), std::move(r));
}
FormulaPtr make_implies(FormulaPtr l, FormulaPtr r) {
  return node(Op::Implies, "", {}, std::move(l), std::move(r));
}
FormulaPtr make_oblig(FormulaPtr f) {
  return node(Op::Oblig, "", {}, std::move(f), nullptr);
}
FormulaPtr make_perm(FormulaPtr f) {
  return node(Op::Perm, "", {}, std::move(f), nullptr);
}
FormulaPtr make_forb(FormulaPtr f) {
  return node(Op::Forb, "", {}, std::move(f), nullptr);
}
FormulaPtr make_always(FormulaPtr f) {
  return node(Op::Always, "", {}, std::move(f), nullptr);
}
FormulaPtr make_eventually(FormulaPtr f) {
  return node(Op::Eventually, "", {}, std::move(f), nullptr);
}
FormulaPtr make_until(FormulaPtr l, FormulaPtr r) {
  return node(Op::Until, "", {}, std::move(l), std::move(r));
}
FormulaPtr make_forall(std::string var, FormulaPtr f) {
  return node(Op::Forall, std::move(var), {}, std::move(f), nullptr);
}
FormulaPtr make_exists(std::string var, FormulaPtr f) {
  return node(Op::Exists, std::move(var), {}, std::move(f), nullptr);
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.label != b.label || a.args != b.args) return false;
  if ((a.left == nullptr) != (b.left == nullptr)) return false;
  if ((a.right == nullptr) != (b.right == nullptr)) return false;
  if (a.left && !structurally_equal(*a.left, *b.left)) return false;
  if (a.right && !structurally_equal(*a.right, *b.right)) return false;
  return true;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return structurally_equal(*a, *b);
}

// ── Rendering ─────────────────────────────────────────────────────────
//
// Precedence levels, loosest first:
//   0 quantifier   1 ->   2 |   3 &   4 U   5 unary (! [] <>)   6 atomic
// `->` and `U` are right-associative, `&` and `|` left-associative.

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Forall:
    case Op::Exists: return 0;
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until: return 4;
    case Op::Not:
    case Op::Always:
    case Op::Eventually: return 5;
    default: return 6;  // atoms and O()/P()/Forb() are self-delimiting
  }
}

void render(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f.op);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.op) {
    case Op::Atom:
      out += f.label;
      if (!f.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ", ";
          if (f.args[i].kind == TermKind::Constant) {
            out += '\'';
            out += f.args[i].name;
            out += '\'';
          } else {
            out += f.args[i].name;
          }
        }
        out += ')';
      }
      break;
    case Op::Not:
      out += '!';
      render(*f.left, 5, out);
      break;
    case Op::And:
      render(*f.left, 3, out);
      out += " & ";
      render(*f.right, 4, out);
      break;
    case Op::Or:
      render(*f.left, 2, out);
      out += " | ";
      render(*f.right, 3, out);
      break;
    case Op::Implies:
      render(*f.left, 2, out);
      out += " -> ";
      render(*f.right, 1, out);
      break;
    case Op::Oblig:
      out += "O(";
      render(*f.left, 0, out);
      out += ')';
      break;
    case Op::Perm:
      out += "P(";
      render(*f.left, 0, out);
      out += ')';
      break;
    case Op::Forb:
      out += "Forb(";
      render(*f.left, 0, out);
      out += ')';
      break;
    case Op::Always:
      out += "[]";
      render(*f.left, 5, out);
      break;
    case Op::Eventually:
      out += "<>";
      render(*f.left, 5, out);
      break;
    case Op::Until:
      render(*f.left, 5, out);
      out += " U ";
      render(*f.right, 4, out);
      break;
    case Op::Forall:
    case Op::Exists:
      out += (f.op == Op::Forall) ? "forall " : "exists ";
      out += f.label;
      out += ". ";
      render(*f.left, 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string render_formula(const FormulaPtr& f) { return render_formula(*f); }

// ── Free variables / substitution ─────────────────────────────────────

namespace {

void free_vars(const Formula& f, std::set<std::string>& bound,
               std::set<std::string>& out) {
  switch (f.op) {
    case Op::Atom:
      for (const Term& t : f.args)
        if (t.kind == TermKind::Variable && !bound.count(t.name))
          out.insert(t.name);
      break;
    case Op::Forall:
    case Op::Exists: {
      const bool fresh = bound.insert(f.label).second;
      free_vars(*f.left, bound, out);
      if (fresh) bound.erase(f.label);
      break;
    }
    default:
      if (f.left) free_vars(*f.left, bound, out);
      if (f.right) free_vars(*f.right, bound, out);
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars(f, bound, out);
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const std::string& constant) {
  switch (f->op) {
    case Op::Atom: {
      bool hit = false;
      for (const Term& t : f->args)
        if (t.kind == TermKind::Variable && t.name == var) hit = true;
      if (!hit) return f;
      std::vector<Term> args = f->args;
      for (Term& t : args)
        if (t.kind == TermKind::Variable && t.name == var)
          t = Term::constant(constant);
      return make_atom(f->label, std::move(args));
    }
    case Op::Forall:
    case Op::Exists: {
      if (f->label == var) return f;  // rebound below this point
      FormulaPtr body = substitute(f->left, var, constant);
      if (body == f->left) return f;
      return f->op == Op::Forall ? make_forall(f->label, std::move(body))
                                 : make_exists(f->label, std::move(body));
    }
    default: {
      FormulaPtr l = f->left ? substitute(f->left, var, constant) : nullptr;
      FormulaPtr r = f->right ? substitute(f->right, var, constant) : nullptr;
      if (l == f->left && r == f->right) return f;
      return std::make_shared<const Formula>(f->op, f->label, f->args,
                                             std::move(l), std::move(r));
    }
  }
}

FormulaPtr normalize_duals(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Perm:
      // P(phi) == !O(!phi)
      return make_not(make_oblig(make_not(normalize_duals(f->left))));
    case Op::Forb:
      // Forb(phi) == O(!phi)
      return make_oblig(make_not(normalize_duals(f->left)));
    case Op::Atom:
      return f;
    default: {
      FormulaPtr l = f->left ? normalize_duals(f->left) : nullptr;
      FormulaPtr r = f->right ? normalize_duals(f->right) : nullptr;
      if (l == f->left && r == f->right) return f;
      return std::make_shared<const Formula>(f->op, f->label, f->args,
                                             std::move(l), std::move(r));
    }
  }
}

namespace {

void collect(const Formula& f, std::map<std::string, int>& seen) {
  if (f.op == Op::Atom) {
    auto [it, fresh] = seen.emplace(f.label, static_cast<int>(f.args.size()));
    if (!fresh && it->second != static_cast<int>(f.args.size()))
      throw std::runtime_error("predicate '" + f.label +
                               "' used with two different arities");
  }
  if (f.left) collect(*f.left, seen);
  if (f.right) collect(*f.right, seen);
}

}  // namespace

std::vector<PredicateSymbol> collect_predicates(const Formula& f) {
  std::map<std::string, int> seen;
  collect(f, seen);
  std::vector<PredicateSymbol> out;
  out.reserve(seen.size());
  for (const auto& [name, arity] : seen) out.push_back({name, arity});
  return out;
}

bool contains_deontic(const Formula& f) {
  if (f.op == Op::Oblig || f.op == Op::Perm || f.op == Op::Forb) return true;
  if (f.left && contains_deontic(*f.left)) return true;
  if (f.right && contains_deontic(*f.right)) return true;
  return false;
}

bool contains_temporal(const Formula& f) {
  if (f.op == Op::Always || f.op == Op::Eventually || f.op == Op::Until)
    return true;
  if (f.left && contains_temporal(*f.left)) return true;
  if (f.right && contains_temporal(*f.right)) return true;
  return false;
}

}  // namespace dtl
