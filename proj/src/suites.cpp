#include "dtl/suites.hpp"

#include <set>
#include <stdexcept>

#include "dtl/parser.hpp"

namespace dtl {

namespace {

SuiteProperty prop(const char* id, const char* stated, const char* audited,
                   const char* description, const char* note = "") {
  SuiteProperty p;
  p.id = id;
  p.stated = parse_formula(stated);
  p.audited = audited ? parse_formula(audited) : p.stated;
  p.description = description;
  p.note = note;
  return p;
}

const char* kSameOutcome =
    "(recidivist(i) & recidivist(j) | !(recidivist(i) | recidivist(j)))";
const char* kSameDecision =
    "(approved(i) & approved(j) | !(approved(i) | approved(j)))";

std::vector<SuiteProperty> build_compas() {
  std::vector<SuiteProperty> v;
  v.push_back(prop("a", "P(forall i. prior_offenses(i) -> assess(i))", nullptr,
                   "recidivism may be assessed for individuals with prior offenses"));
  v.push_back(prop(
      "b", "O(forall i. !sensitive_used(i) -> assess(i))",
      "O(forall i. recidivist(i) -> assess(i))",
      "recidivism labels must rest on the non-sensitive risk score",
      "sensitive_used has no row rule; audited as: a recidivism label "
      "requires the decile threshold"));
  v.push_back(prop(
      "c",
      "forall i. !recidivist(i) -> !P(sensitive_used(i) -> recidivist(i))",
      ("forall i. forall j. flip_pair(i, j) -> " + std::string(kSameOutcome))
          .c_str(),
      "no one is labeled a recidivist because of sensitive attributes",
      "audited as a matched-pair flip test: rows equal on nonsensitive "
      "columns but differing on a sensitive one must share the label"));
  v.push_back(prop("d", "forall i. !prior_offenses(i) -> Forb(recidivist(i))",
                   nullptr,
                   "no recidivist label without prior offenses"));
  v.push_back(prop("e", "P(recidivist(i) -> appeals(i))", nullptr,
                   "labeled individuals can appeal the decision"));
  return v;
}

std::vector<SuiteProperty> build_loan() {
  std::vector<SuiteProperty> v;
  v.push_back(prop("a",
                   "O(forall i. applies(i) -> (approved(i) | !approved(i)))",
                   nullptr, "every applicant receives a decision"));
  v.push_back(prop("b", "forall i. (credit_ok(i) | income_ok(i)) -> approved(i)",
                   nullptr,
                   "meeting the credit or income threshold suffices for approval"));
  v.push_back(prop(
      "c",
      ("O([](forall i. forall j. similar(i, j) -> " + std::string(kSameDecision) +
       "))")
          .c_str(),
      nullptr, "applicants with equal nonsensitive values get equal decisions"));
  v.push_back(prop(
      "d", "!P(sensitive_used(i) -> (approved(i) | !approved(i)))",
      ("forall i. forall j. flip_pair(i, j) -> " + std::string(kSameDecision))
          .c_str(),
      "decisions must not depend on sensitive attributes",
      "the stated encoding is vacuous as written; audited as a matched-pair "
      "flip test on the approval decision"));
  v.push_back(prop("e", "P(!approved(i) -> appeals(i))", nullptr,
                   "rejected applicants can appeal the decision"));
  return v;
}

}  // namespace

const std::vector<SuiteProperty>& compas_suite() {
  static const std::vector<SuiteProperty> v = build_compas();
  return v;
}

const std::vector<SuiteProperty>& loan_suite() {
  static const std::vector<SuiteProperty> v = build_loan();
  return v;
}

const std::vector<SuiteProperty>& suite(const std::string& name) {
  if (name == "compas") return compas_suite();
  if (name == "loan") return loan_suite();
  throw std::out_of_range("unknown suite: " + name);
}

const SuiteProperty& suite_property(const std::string& name,
                                    const std::string& id) {
  for (const SuiteProperty& p : suite(name))
    if (p.id == id) return p;
  throw std::out_of_range("unknown property '" + id + "' in suite " + name);
}

// ── Audit normal form ─────────────────────────────────────────────────

namespace {

FormulaPtr simplify(const FormulaPtr& f);

// Temporal collapse + O elimination, tracking variables bound by
// enclosing quantifiers so the universal closure introduced for O only
// captures genuinely free row variables.
FormulaPtr collapse(const FormulaPtr& f, std::set<std::string>& bound) {
  switch (f->op) {
    case Op::Atom:
      return f;
    case Op::Always:
    case Op::Eventually:
      return collapse(f->left, bound);
    case Op::Until:
      return collapse(f->right, bound);
    case Op::Oblig: {
      FormulaPtr body = collapse(f->left, bound);
      std::set<std::string> fv = free_variables(*body);
      FormulaPtr out = body;
      for (auto it = fv.rbegin(); it != fv.rend(); ++it)
        if (!bound.count(*it)) out = make_forall(*it, std::move(out));
      return out;
    }
    case Op::Forall:
    case Op::Exists: {
      const bool fresh = bound.insert(f->label).second;
      FormulaPtr body = collapse(f->left, bound);
      if (fresh) bound.erase(f->label);
      return f->op == Op::Forall ? make_forall(f->label, std::move(body))
                                 : make_exists(f->label, std::move(body));
    }
    case Op::Not:
      return make_not(collapse(f->left, bound));
    case Op::And:
      return make_and(collapse(f->left, bound), collapse(f->right, bound));
    case Op::Or:
      return make_or(collapse(f->left, bound), collapse(f->right, bound));
    case Op::Implies:
      return make_implies(collapse(f->left, bound), collapse(f->right, bound));
    default:
      throw std::logic_error("collapse: unexpected operator");
  }
}

// !!f -> f; !forall v. !f -> exists v. f; !exists v. !f -> forall v. f
FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Atom:
      return f;
    case Op::Not: {
      FormulaPtr inner = simplify(f->left);
      if (inner->op == Op::Not) return inner->left;
      if ((inner->op == Op::Forall || inner->op == Op::Exists) &&
          inner->left->op == Op::Not) {
        FormulaPtr body = inner->left->left;
        return inner->op == Op::Forall ? make_exists(inner->label, body)
                                       : make_forall(inner->label, body);
      }
      return make_not(std::move(inner));
    }
    case Op::And:
      return make_and(simplify(f->left), simplify(f->right));
    case Op::Or:
      return make_or(simplify(f->left), simplify(f->right));
    case Op::Implies:
      return make_implies(simplify(f->left), simplify(f->right));
    case Op::Forall:
      return make_forall(f->label, simplify(f->left));
    case Op::Exists:
      return make_exists(f->label, simplify(f->left));
    default:
      throw std::logic_error("simplify: unexpected operator");
  }
}

}  // namespace

FormulaPtr audit_normal_form(const FormulaPtr& f) {
  std::set<std::string> bound;
  FormulaPtr out = simplify(collapse(normalize_duals(f), bound));
  // A second pass catches negations exposed by the first.
  return simplify(out);
}

}  // namespace dtl
