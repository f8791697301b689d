#include "dtl/norms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dtl/parser.hpp"

namespace dtl {

// ── Catalog ───────────────────────────────────────────────────────────

namespace {

std::vector<AxiomSchema> build_axioms() {
  return {
      {"A1.1",
       parse_formula("forall x. forall a. ethical(x) -> O(performs(x, a) & ethical_action(a))"),
       "an ethical system is obliged to perform only ethically required actions"},
      {"A1.2",
       parse_formula("forall x. forall a. ethical(x) -> !P(performs(x, a) & !ethical_action(a))"),
       "an ethical system is not permitted to perform actions that are not ethically required"},
      {"A1.3",
       parse_formula("forall x. forall a. ethical(x) -> P(performs(x, a) & ethical_action(a))"),
       "an ethical system is permitted to perform ethically required actions"},
      {"A1.4",
       parse_formula("follows_guidelines(x) -> (forall a. ethical_action(a))"),
       "a system following ethical guidelines makes every considered action ethically required"},
      {"A2.1", parse_formula("[]O(fair(x))"),
       "fairness is obligatory at all times"},
      {"A2.2", parse_formula("bias(x) -> !ethical(x)"),
       "a biased system is not ethical"},
      {"A2.3", parse_formula("!bias(x) U fair(x)"),
       "the system stays unbiased until fairness is established"},
      {"A2.4", parse_formula("!([](fair_train(x) -> fair_deploy(x)))"),
       "training fairness does not always carry over to deployment"},
      {"A2.5", parse_formula("!fair(x) -> bias(x)"),
       "an unfair system is biased"},
      {"A3.1", parse_formula("transparent(x) -> ethical(x)"),
       "a transparent system is ethical"},
      {"A3.2", parse_formula("cf(x, c) -> !bias(x)"),
       "counterfactual fairness under constraints excludes bias"},
      {"A3.3", parse_formula("retrofit_expl(x) -> ethical(x)"),
       "retrofitted explainability supports ethical operation"},
  };
}

struct AuxPremise {
  const char* id;
  const char* text;
};

struct TheoremDef {
  const char* id;
  std::vector<const char*> axiom_ids;
  std::vector<AuxPremise> aux;
  const char* conclusion;
  const char* expected;
  const char* prose;
};

// Premise sets follow each derivation: listed axioms exactly as cited,
// plus the implications the derivation introduces from outside the
// axiom catalog, spelled out as aux premises.
const std::vector<TheoremDef>& theorem_defs() {
  static const std::vector<TheoremDef> defs = {
      {"T1",
       {"A1.4"},
       {},
       "O(performs(x, a) & ethical_action(a)) -> O(performs(x, a) & follows_guidelines(x))",
       "unknown",
       "obligatory ethical actions would imply obligatory guideline compliance"},
      {"T2",
       {},
       {},
       "O(performs(x, a) & ethical_action(a)) -> !P(!(performs(x, a) & ethical_action(a)))",
       "valid-up-to-bounds",
       "what is obligatory is not permitted to be omitted"},
      {"T3",
       {"A2.2", "A2.5"},
       {},
       "<>(!fair(x)) -> <>(!ethical(x))",
       "valid-up-to-bounds",
       "a system that is ever unfair is ever unethical"},
      {"T4",
       {"A2.1", "A2.2", "A2.5"},
       {},
       "ethical(x) -> ([]fair(x) | (<>fair(x) & [](!fair(x) U fair(x))))",
       "unknown",
       "an ethical system is fair throughout or converges to fairness"},
      {"T5",
       {"A2.1"},
       {{"T5.aux1", "learns(x) -> <>fair(x)"}},
       "ethical(x) & learns(x) -> [](<>fair_train(x) & <>fair_deploy(x))",
       "unknown",
       "an ethical learning system keeps reaching fairness in training and deployment"},
      {"T6",
       {"A2.2"},
       {{"T6.aux1", "<>ethical(x)"},
        {"T6.aux2", "<>(!bias_deploy(x)) -> bias_mitigation(x)"},
        {"T6.aux3", "bias_mitigation(x) -> <>([](!bias_deploy(x)))"}},
       "bias_train(x) & learns(x) -> <>(!bias_deploy(x) & [](!bias_deploy(x)))",
       "unknown",
       "training bias in a learning system is eventually permanently mitigated"},
      {"T7",
       {"A3.1"},
       {{"T7.aux1", "!(inherent_expl(x) | retrofit_expl(x)) -> !transparent(x)"},
        {"T7.aux2", "!transparent(x) -> !ethical(x)"}},
       "ethical(x) -> <>(inherent_expl(x) | retrofit_expl(x))",
       "unknown",
       "an ethical system eventually offers some form of explainability"},
      {"T8",
       {"A3.2"},
       {{"T8.aux1", "ethical(x) -> !bias(x)"},
        {"T8.aux2", "[](!bias(x)) -> <>ethical(x)"}},
       "<>([](cf(x, c))) -> <>ethical(x)",
       "unknown",
       "sustained counterfactual fairness eventually yields ethical operation"},
  };
  return defs;
}

}  // namespace

const std::vector<AxiomSchema>& axiom_catalog() {
  static const std::vector<AxiomSchema> catalog = build_axioms();
  return catalog;
}

FormulaPtr axiom_formula(const std::string& id) {
  for (const AxiomSchema& a : axiom_catalog())
    if (a.id == id) return a.formula;
  throw std::out_of_range("unknown axiom id: " + id);
}

FormulaPtr TheoremSpec::premise(const std::string& pid) const {
  for (const auto& [aid, f] : aux_premises)
    if (aid == pid) return f;
  return axiom_formula(pid);
}

TheoremSpec theorem_spec(const std::string& id) {
  for (const TheoremDef& def : theorem_defs()) {
    if (id != def.id) continue;
    TheoremSpec spec;
    spec.id = def.id;
    for (const char* aid : def.axiom_ids) spec.premise_ids.push_back(aid);
    for (const AuxPremise& aux : def.aux) {
      spec.premise_ids.push_back(aux.id);
      spec.aux_premises.emplace_back(aux.id, parse_formula(aux.text));
    }
    spec.conclusion = parse_formula(def.conclusion);
    spec.expected_status = def.expected;
    spec.prose = def.prose;
    return spec;
  }
  throw std::out_of_range("unknown theorem id: " + id);
}

std::vector<std::string> theorem_ids() {
  std::vector<std::string> ids;
  for (const TheoremDef& def : theorem_defs()) ids.push_back(def.id);
  return ids;
}

const std::vector<PredicateSymbol>& ethics_vocabulary() {
  static const std::vector<PredicateSymbol> vocab = {
      {"bias", 1},
      {"bias_deploy", 1},
      {"bias_mitigation", 1},
      {"bias_train", 1},
      {"cf", 2},
      {"ethical", 1},
      {"ethical_action", 1},
      {"fair", 1},
      {"fair_deploy", 1},
      {"fair_train", 1},
      {"follows_guidelines", 1},
      {"inherent_expl", 1},
      {"learns", 1},
      {"performs", 2},
      {"retrofit_expl", 1},
      {"transparent", 1},
  };
  return vocab;
}

// ── Grounding ─────────────────────────────────────────────────────────

namespace {

FormulaPtr expand_quantifiers(const FormulaPtr& f,
                              const std::vector<std::string>& domain) {
  switch (f->op) {
    case Op::Forall:
    case Op::Exists: {
      const bool universal = f->op == Op::Forall;
      FormulaPtr out;
      for (const std::string& c : domain) {
        FormulaPtr inst =
            expand_quantifiers(substitute(f->left, f->label, c), domain);
        if (!out)
          out = std::move(inst);
        else
          out = universal ? make_and(std::move(out), std::move(inst))
                          : make_or(std::move(out), std::move(inst));
      }
      return out;
    }
    case Op::Atom:
      return f;
    default: {
      FormulaPtr l = f->left ? expand_quantifiers(f->left, domain) : nullptr;
      FormulaPtr r = f->right ? expand_quantifiers(f->right, domain) : nullptr;
      if (l == f->left && r == f->right) return f;
      return std::make_shared<const Formula>(f->op, f->label, f->args,
                                             std::move(l), std::move(r));
    }
  }
}

// Premises are read as standing assumptions: non-temporal shapes get
// []-wrapped so they hold from the evaluation state on. Formulas whose
// root already speaks about time ([], <>, U) are taken as written.
FormulaPtr as_standing_premise(FormulaPtr p) {
  if (p->op == Op::Always || p->op == Op::Eventually || p->op == Op::Until)
    return p;
  return make_always(std::move(p));
}

}  // namespace

FormulaPtr ground_over_domain(const FormulaPtr& f,
                              const std::vector<std::string>& domain) {
  if (domain.empty()) throw std::invalid_argument("empty grounding domain");
  FormulaPtr closed = f;
  const std::set<std::string> fv = free_variables(*f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    closed = make_forall(*it, std::move(closed));
  return expand_quantifiers(closed, domain);
}

ValidationReport validate_theorem(const std::string& id,
                                  const ModelBounds& bounds) {
  const TheoremSpec spec = theorem_spec(id);

  std::vector<std::string> domain;
  for (int i = 0; i < bounds.domain_size; ++i)
    domain.push_back("d" + std::to_string(i));

  std::vector<FormulaPtr> premises;
  for (const std::string& pid : spec.premise_ids)
    premises.push_back(
        as_standing_premise(ground_over_domain(spec.premise(pid), domain)));
  const FormulaPtr conclusion = ground_over_domain(spec.conclusion, domain);

  const ValidityResult result = check_validity(premises, conclusion, bounds);

  ValidationReport report;
  report.theorem_id = spec.id;
  report.premise_ids = spec.premise_ids;
  report.valid = result.valid;
  report.models_checked = result.models_checked;
  report.counterexample = result.counterexample;
  return report;
}

std::string report_line(const ValidationReport& r) {
  std::ostringstream os;
  os << r.theorem_id << " premises=[";
  for (std::size_t i = 0; i < r.premise_ids.size(); ++i) {
    if (i) os << ',';
    os << r.premise_ids[i];
  }
  os << "] " << (r.valid ? "valid" : "refuted")
     << " models=" << r.models_checked;
  return os.str();
}

}  // namespace dtl
