#include <algorithm>
#include <set>

#include "doctest.h"
#include "dtl/grounding.hpp"
#include "dtl/parser.hpp"
#include "dtl/suites.hpp"
#include "dtl/verdict.hpp"
#include "paths.hpp"

using namespace dtl;

namespace {

AuditConfig compas_config() { return load_config(paths::fixture("compas.cfg")); }
AuditConfig loan_config() { return load_config(paths::fixture("loan.cfg")); }

Dataset compas_data() {
  return load_csv(paths::fixture("compas.csv"), *compas_config().schema);
}

Dataset loan_data() {
  return load_csv(paths::fixture("loan.csv"), *loan_config().schema);
}

BindingSet compas_bindings(const Dataset& d) {
  return default_bindings("compas", compas_config().thresholds, d.schema());
}

BindingSet loan_bindings(const Dataset& d) {
  return default_bindings("loan", loan_config().thresholds, d.schema());
}

// First `n` rows of a dataset, as a new dataset.
Dataset head(const Dataset& d, std::size_t n) {
  std::vector<DataRow> rows;
  for (std::size_t i = 0; i < n && i < d.size(); ++i) rows.push_back(d.row(i));
  return Dataset(d.schema(), std::move(rows));
}

std::string norm(const std::string& suite_name, const std::string& id) {
  return render_formula(*audit_normal_form(suite_property(suite_name, id).audited));
}

}  // namespace

TEST_CASE("suite catalogs expose five properties each") {
  CHECK(compas_suite().size() == 5);
  CHECK(loan_suite().size() == 5);
  CHECK(suite("compas").size() == 5);
  CHECK_THROWS_AS(suite("mortgage"), std::out_of_range);
  CHECK_THROWS_AS(suite_property("compas", "z"), std::out_of_range);
  for (const SuiteProperty& p : compas_suite()) {
    CHECK(!p.description.empty());
    CHECK(p.stated != nullptr);
    CHECK(p.audited != nullptr);
  }
}

TEST_CASE("audit normal form strips deontic and temporal structure") {
  CHECK(norm("compas", "a") == "forall i. prior_offenses(i) -> assess(i)");
  CHECK(norm("compas", "b") == "forall i. recidivist(i) -> assess(i)");
  CHECK(norm("compas", "d") ==
        "forall i. !prior_offenses(i) -> !recidivist(i)");
  CHECK(norm("compas", "e") == "exists i. recidivist(i) -> appeals(i)");
  CHECK(norm("loan", "a") ==
        "forall i. applies(i) -> approved(i) | !approved(i)");
  CHECK(norm("loan", "c") ==
        "forall i. forall j. similar(i, j) -> "
        "approved(i) & approved(j) | !(approved(i) | approved(j))");
  CHECK(norm("loan", "e") == "exists i. !approved(i) -> appeals(i)");

  for (const std::string s : {"compas", "loan"})
    for (const SuiteProperty& p : suite(s)) {
      const FormulaPtr n = audit_normal_form(p.audited);
      CHECK(!contains_deontic(*n));
      CHECK(!contains_temporal(*n));
    }
}

TEST_CASE("audit normal form on hand-written formulas") {
  CHECK(render_formula(*audit_normal_form(parse_formula("[]p(i)"))) == "p(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("<>p(i)"))) == "p(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("p(i) U q(i)"))) ==
        "q(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("O(p(i))"))) ==
        "forall i. p(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("P(p(i))"))) ==
        "exists i. p(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("Forb(p(i))"))) ==
        "forall i. !p(i)");
  CHECK(render_formula(*audit_normal_form(
            parse_formula("forall i. p(i) -> Forb(q(i))"))) ==
        "forall i. p(i) -> !q(i)");
  CHECK(render_formula(*audit_normal_form(parse_formula("!!p(i)"))) == "p(i)");
}

TEST_CASE("a three-row dataset grounds one clause per row") {
  const Dataset d3 = head(compas_data(), 3);
  const BindingSet b = compas_bindings(d3);
  const GroundedProperty g =
      ground_property(suite_property("compas", "a").audited, d3, b);

  CHECK(g.rows_total == 3);
  CHECK(g.rows_eligible == 3);
  CHECK(g.rows_skipped == 0);
  REQUIRE(g.root.op == CircuitOp::And);
  REQUIRE(g.clauses.size() == 3);
  CHECK(g.clauses[0].rows == std::vector<std::string>{"1"});
  CHECK(g.clauses[1].rows == std::vector<std::string>{"2"});
  CHECK(g.clauses[2].rows == std::vector<std::string>{"3"});
  CHECK(g.clauses[0].text == "prior_offenses('1') -> assess('1')");
  CHECK(g.atoms.size() == 6);  // two predicates x three rows
  CHECK(!g.vacuous);
  CHECK(!g.grouped);
}

TEST_CASE("pair properties expand ordered pairs including the diagonal") {
  const Dataset d2 = head(loan_data(), 2);
  const BindingSet b = loan_bindings(d2);
  const GroundedProperty g =
      ground_property(suite_property("loan", "c").audited, d2, b);

  CHECK(g.pairs_expanded == 4);
  REQUIRE(g.clauses.size() == 4);
  CHECK(g.clauses[0].rows == std::vector<std::string>{"L01", "L01"});
  CHECK(g.clauses[1].rows == std::vector<std::string>{"L01", "L02"});
  CHECK(g.clauses[2].rows == std::vector<std::string>{"L02", "L01"});
  CHECK(g.clauses[3].rows == std::vector<std::string>{"L02", "L02"});

  // Atoms: 4 similar pairs + 2 approved rows, interned once each.
  CHECK(g.atoms.size() == 6);

  // The diagonal instance is present and true by construction
  // (similar(i, i) holds, and the consequent follows either branch).
  CHECK(eval_circuit(g.root.kids[0], g.atoms));
}

TEST_CASE("atom interning dedupes repeated ground applications") {
  const Dataset d2 = head(compas_data(), 2);
  const BindingSet b = compas_bindings(d2);
  const GroundedProperty g = ground_property(
      parse_formula("forall i. recidivist(i) & recidivist(i)"), d2, b);
  CHECK(g.atoms.size() == 2);  // one per row, not two

  std::set<std::string> keys;
  for (const RowAtom& a : g.atoms) keys.insert(a.key());
  CHECK(keys.size() == g.atoms.size());
}

TEST_CASE("grounding rejects unbound predicates and bad arities") {
  const Dataset d = head(compas_data(), 2);
  const BindingSet b = compas_bindings(d);
  CHECK_THROWS_WITH_AS(
      ground_property(parse_formula("forall i. undecidable(i)"), d, b),
      doctest::Contains("no binding for predicate 'undecidable'"),
      GroundingError);
  CHECK_THROWS_WITH_AS(
      ground_property(parse_formula("forall i. recidivist(i, i)"), d, b),
      doctest::Contains("expects"), GroundingError);
  CHECK_THROWS_WITH_AS(
      ground_property(parse_formula("recidivist('nosuchrow')"), d, b),
      doctest::Contains("unknown row id"), GroundingError);
  CHECK_THROWS_WITH_AS(
      ground_property(parse_formula("recidivist(i)"), d, b),
      doctest::Contains("unbound row variable"), GroundingError);
}

TEST_CASE("strict mode refuses deontic operators in dataset audits") {
  const Dataset d = head(compas_data(), 2);
  const BindingSet b = compas_bindings(d);
  GroundOptions strict;
  strict.mode = AuditMode::Strict;

  CHECK_THROWS_WITH_AS(
      ground_property(suite_property("compas", "b").audited, d, b, strict),
      doctest::Contains("strict"), GroundingError);

  // Deontic-free properties still ground.
  const GroundedProperty g = ground_property(
      suite_property("compas", "c").audited, d, b, strict);
  CHECK(g.clauses.size() == 4);
}

TEST_CASE("rows missing a referenced value are skipped and counted") {
  Schema s;
  s.columns = {{"id", ColumnType::Categorical},
               {"priors_count", ColumnType::Integer},
               {"decile_score", ColumnType::Integer}};
  const std::string path = paths::temp_write(
      "skip.csv",
      "id,priors_count,decile_score\n"
      "a,2,7\n"
      "b,,3\n"
      "c,0,1\n");
  const Dataset d = load_csv(path, s);
  const AuditConfig cfg = compas_config();
  BindingSet b;
  b["prior_offenses"] = parse_binding_rule("prior_offenses",
                                           "priors_count > 0", cfg.thresholds,
                                           d.schema());
  b["assess"] = parse_binding_rule("assess", "decile_score >= 5",
                                   cfg.thresholds, d.schema());

  const GroundedProperty g = ground_property(
      parse_formula("forall i. prior_offenses(i) -> assess(i)"), d, b);
  CHECK(g.rows_total == 3);
  CHECK(g.rows_eligible == 2);
  CHECK(g.rows_skipped == 1);
  REQUIRE(g.clauses.size() == 2);
  CHECK(g.clauses[0].rows == std::vector<std::string>{"a"});
  CHECK(g.clauses[1].rows == std::vector<std::string>{"c"});
  CHECK(!g.vacuous);

  // All rows missing: the universal becomes vacuous.
  const std::string all_gaps = paths::temp_write(
      "vac.csv", "id,priors_count,decile_score\na,,1\nb,,2\n");
  const Dataset dv = load_csv(all_gaps, s);
  const GroundedProperty gv = ground_property(
      parse_formula("forall i. prior_offenses(i)"), dv, b);
  CHECK(gv.vacuous);
  CHECK(gv.rows_eligible == 0);
  CHECK(check_grounded(gv).status == Status::Satisfied);
  CHECK(check_grounded(gv).vacuous);
}

TEST_CASE("grouped pair indexing matches the structural expansion") {
  const Dataset d = loan_data();
  const BindingSet b = loan_bindings(d);
  const FormulaPtr prop = suite_property("loan", "d").audited;

  GroundOptions structural;  // 12 rows, threshold 256: full expansion
  const GroundedProperty gs = ground_property(prop, d, b, structural);
  CHECK(!gs.grouped);
  CHECK(gs.pairs_expanded == 144);

  GroundOptions grouped;
  grouped.pair_group_threshold = 0;  // force the index path
  const GroundedProperty gg = ground_property(prop, d, b, grouped);
  CHECK(gg.grouped);
  CHECK(gg.pairs_expanded < gs.pairs_expanded);

  const Verdict vs = check_grounded(gs);
  const Verdict vg = check_grounded(gg);
  CHECK(vs.status == vg.status);
  REQUIRE(vs.counterexamples.size() == vg.counterexamples.size());
  for (std::size_t i = 0; i < vs.counterexamples.size(); ++i)
    CHECK(vs.counterexamples[i].rows == vg.counterexamples[i].rows);

  // Same check on a satisfied dataset.
  const Dataset clean =
      load_csv(paths::fixture("loan_clean.csv"), *loan_config().schema);
  const BindingSet cb = loan_bindings(clean);
  CHECK(check_grounded(ground_property(prop, clean, cb, grouped)).status ==
        Status::Satisfied);
}

TEST_CASE("grounded circuits agree with the induced row model") {
  const Dataset compas = compas_data();
  const Dataset loan = loan_data();

  for (std::size_t n = 1; n <= 4; ++n) {
    const Dataset dc = head(compas, n);
    const BindingSet bc = compas_bindings(dc);
    for (const SuiteProperty& p : compas_suite()) {
      const GroundedProperty g = ground_property(p.audited, dc, bc);
      const KripkeModel m = induced_row_model(dc, bc, dc.ids());
      CHECK_MESSAGE(eval_circuit(g.root, g.atoms) ==
                        evaluate(m, 0, {}, *g.normal),
                    "compas ", p.id, " diverges at ", n, " rows");
    }

    const Dataset dl = head(loan, n);
    const BindingSet bl = loan_bindings(dl);
    for (const SuiteProperty& p : loan_suite()) {
      const GroundedProperty g = ground_property(p.audited, dl, bl);
      const KripkeModel m = induced_row_model(dl, bl, dl.ids());
      CHECK_MESSAGE(eval_circuit(g.root, g.atoms) ==
                        evaluate(m, 0, {}, *g.normal),
                    "loan ", p.id, " diverges at ", n, " rows");
    }
  }
}

TEST_CASE("clause text is the instantiated body") {
  const Dataset d = head(loan_data(), 4);
  const BindingSet b = loan_bindings(d);
  const GroundedProperty g =
      ground_property(suite_property("loan", "b").audited, d, b);
  REQUIRE(!g.clauses.empty());
  CHECK(g.clauses[0].text ==
        "credit_ok('L01') | income_ok('L01') -> approved('L01')");
}

TEST_CASE("circuit evaluation over explicit value vectors") {
  Circuit atom0{CircuitOp::Atom, 0, {}};
  Circuit atom1{CircuitOp::Atom, 1, {}};
  Circuit neg{CircuitOp::Not, -1, {atom1}};
  Circuit imp{CircuitOp::Implies, -1, {atom0, neg}};
  CHECK(eval_circuit(imp, std::vector<bool>{true, false}));
  CHECK(!eval_circuit(imp, std::vector<bool>{true, true}));
  CHECK(eval_circuit(imp, std::vector<bool>{false, true}));
  CHECK(eval_circuit(Circuit{CircuitOp::True, -1, {}}, std::vector<bool>{}));
  CHECK(!eval_circuit(Circuit{CircuitOp::False, -1, {}}, std::vector<bool>{}));
}
