#pragma once
//
// Formula AST for a deontic-temporal logic with first-order quantifiers
// over a constant domain.
//
// Connectives: ! & | ->           (propositional)
//              O( ) P( ) Forb( )  (obligation / permission / prohibition)
//              [] <> U            (always / eventually / until)
//              forall v. / exists v.
//
// Formulas are immutable; nodes are shared freely via FormulaPtr, so
// copies are cheap and concurrent readers need no locking.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace dtl {

enum class TermKind : std::uint8_t { Variable, Constant };

// An argument of a predicate atom. Constants are written quoted in the
// surface syntax ('r17'), variables bare (x), so the two survive a
// render/parse round trip.
struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;

  static Term var(std::string n) { return {TermKind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {TermKind::Constant, std::move(n)}; }
  bool operator==(const Term&) const = default;
};

enum class Op : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,
  Oblig,       // O(phi)
  Perm,        // P(phi)
  Forb,        // Forb(phi)
  Always,      // []phi
  Eventually,  // <>phi
  Until,       // phi U psi
  Forall,
  Exists,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  Op op;
  std::string label;       // Atom: predicate symbol; Forall/Exists: bound variable
  std::vector<Term> args;  // Atom only
  FormulaPtr left;         // unary ops and quantifiers use left only
  FormulaPtr right;        // And/Or/Implies/Until

  Formula(Op o, std::string lbl, std::vector<Term> a, FormulaPtr l, FormulaPtr r)
      : op(o), label(std::move(lbl)), args(std::move(a)),
        left(std::move(l)), right(std::move(r)) {}
};

// A predicate symbol with its (fixed) arity.
struct PredicateSymbol {
  std::string name;
  int arity = 0;
  auto operator<=>(const PredicateSymbol&) const = default;
};

// ── Builders ──────────────────────────────────────────────────────────

FormulaPtr make_atom(std::string pred, std::vector<Term> args = {});
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_and(FormulaPtr l, FormulaPtr r);
FormulaPtr make_or(FormulaPtr l, FormulaPtr r);
FormulaPtr make_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr make_oblig(FormulaPtr f);
FormulaPtr make_perm(FormulaPtr f);
FormulaPtr make_forb(FormulaPtr f);
FormulaPtr make_always(FormulaPtr f);
FormulaPtr make_eventually(FormulaPtr f);
FormulaPtr make_until(FormulaPtr l, FormulaPtr r);
FormulaPtr make_forall(std::string var, FormulaPtr f);
FormulaPtr make_exists(std::string var, FormulaPtr f);

// ── Operations ────────────────────────────────────────────────────────

bool structurally_equal(const Formula& a, const Formula& b);
bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

// Rendered text re-parses to a structurally equal formula. Parentheses
// are emitted only where precedence demands them.
std::string render_formula(const Formula& f);
std::string render_formula(const FormulaPtr& f);

// Variables not bound by an enclosing forall/exists.
std::set<std::string> free_variables(const Formula& f);

// Replaces free occurrences of `var` with the constant `constant`.
// Occurrences under a quantifier rebinding `var` are left alone.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const std::string& constant);

// Rewrites P(phi) to !O(!phi) and Forb(phi) to O(!phi); the result
// contains no Perm and no Forb nodes. Idempotent.
FormulaPtr normalize_duals(const FormulaPtr& f);

// All predicate symbols occurring in f, sorted by name. Throws
// std::runtime_error if one symbol occurs with two different arities.
std::vector<PredicateSymbol> collect_predicates(const Formula& f);

// True if the formula contains O/P/Forb anywhere.
bool contains_deontic(const Formula& f);

// True if the formula contains []/<> or U anywhere.
bool contains_temporal(const Formula& f);

}  // namespace dtl
