#include <stdexcept>

#include "doctest.h"
#include "dtl/bindings.hpp"
#include "dtl/config.hpp"
#include "dtl/dataset.hpp"
#include "dtl/parser.hpp"
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

}  // namespace

TEST_CASE("csv records honor quoting, embedded commas and escaped quotes") {
  CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line("a,\"b,c\",d") ==
        std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv_line("\"he said \"\"hi\"\"\",x") ==
        std::vector<std::string>{"he said \"hi\"", "x"});
  CHECK(split_csv_line("a,,c") == std::vector<std::string>{"a", "", "c"});
  CHECK(split_csv_line("") == std::vector<std::string>{""});
}

TEST_CASE("declared schemas coerce cells and surface bad values precisely") {
  const Dataset d = compas_data();
  CHECK(d.size() == 15);
  CHECK(d.schema().id_column == "id");
  CHECK(std::get<long long>(d.value("4", "decile_score")) == 1);
  CHECK(std::get<long long>(d.value("4", "outcome")) == 1);
  CHECK(std::get<std::string>(d.value("4", "race")) == "B");

  const std::string bad = paths::temp_write(
      "bad.csv", "id,age\nr1,19\nr2,abc\n");
  Schema s;
  s.columns = {{"id", ColumnType::Categorical}, {"age", ColumnType::Integer}};
  try {
    load_csv(bad, s);
    FAIL("expected a coercion error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    CHECK(std::string(e.what()).find("'age'") != std::string::npos);
    CHECK(std::string(e.what()).find("'abc'") != std::string::npos);
  }
}

TEST_CASE("structural dataset errors") {
  Schema s;
  s.columns = {{"id", ColumnType::Categorical}, {"v", ColumnType::Integer}};

  const std::string dup = paths::temp_write("dup.csv", "id,v\na,1\na,2\n");
  CHECK_THROWS_WITH_AS(load_csv(dup, s), doctest::Contains("duplicate row id"),
                       DataError);

  const std::string empty = paths::temp_write("empty.csv", "id,v\n");
  CHECK_THROWS_WITH_AS(load_csv(empty, s),
                       doctest::Contains("at least one row"), DataError);

  const std::string missing = paths::temp_write("missing.csv", "id,x\na,1\n");
  CHECK_THROWS_WITH_AS(load_csv(missing, s),
                       doctest::Contains("missing column 'v'"), DataError);

  CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", s), DataError);
}

TEST_CASE("embedded newlines inside quotes stay in one record") {
  Schema s;
  s.columns = {{"id", ColumnType::Categorical}, {"note", ColumnType::Categorical}};
  const std::string path = paths::temp_write(
      "multiline.csv", "id,note\na,\"line one\nline two\"\nb,plain\n");
  const Dataset d = load_csv(path, s);
  CHECK(d.size() == 2);
  CHECK(std::get<std::string>(d.value("a", "note")) == "line one\nline two");
}

TEST_CASE("schema-less loads infer column types from the data") {
  const std::string path = paths::temp_write(
      "infer.csv",
      "id,count,score,flag,label\n"
      "a,3,1.5,true,red\n"
      "b,-2,2,false,blue\n");
  const Dataset d = load_csv(path);
  CHECK(d.schema().at("count").type == ColumnType::Integer);
  CHECK(d.schema().at("score").type == ColumnType::Real);
  CHECK(d.schema().at("flag").type == ColumnType::Boolean);
  CHECK(d.schema().at("label").type == ColumnType::Categorical);
  CHECK(d.schema().id_column == "id");
  CHECK(std::get<bool>(d.value("a", "flag")));
  CHECK(std::get<double>(d.value("b", "score")) == 2.0);
}

TEST_CASE("missing cells are distinct from every value") {
  const std::string path = paths::temp_write(
      "gaps.csv", "id,v\na,\nb,3\n");
  Schema s;
  s.columns = {{"id", ColumnType::Categorical}, {"v", ColumnType::Integer}};
  const Dataset d = load_csv(path, s);
  CHECK(value_missing(d.value("a", "v")));
  CHECK(!value_missing(d.value("b", "v")));
  CHECK(!value_equal(d.value("a", "v"), d.value("a", "v")));
  CHECK(value_text(d.value("a", "v")) == "?");
}

TEST_CASE("numeric equality crosses the integer/real divide") {
  CHECK(value_equal(Value{static_cast<long long>(3)}, Value{3.0}));
  CHECK(!value_equal(Value{static_cast<long long>(3)}, Value{3.5}));
  CHECK(value_equal(Value{std::string("x")}, Value{std::string("x")}));
  CHECK(!value_equal(Value{std::string("3")}, Value{static_cast<long long>(3)}));
}

TEST_CASE("config files parse all sections") {
  const AuditConfig cfg = compas_config();
  CHECK(cfg.thresholds.decile_threshold == 5);
  CHECK(cfg.thresholds.sensitive_columns ==
        std::vector<std::string>{"race", "gender", "age"});
  CHECK(cfg.thresholds.nonsensitive_columns ==
        std::vector<std::string>{"priors_count", "decile_score"});
  REQUIRE(cfg.schema.has_value());
  CHECK(cfg.schema->columns.size() == 8);
  CHECK(cfg.schema->at("decile_score").type == ColumnType::Integer);

  const AuditConfig loan = loan_config();
  REQUIRE(loan.thresholds.credit_threshold.has_value());
  CHECK(*loan.thresholds.credit_threshold == 650);
  REQUIRE(loan.thresholds.income_threshold.has_value());
  CHECK(*loan.thresholds.income_threshold == 40000);
}

TEST_CASE("config errors carry file and line") {
  CHECK_THROWS_WITH_AS(
      parse_config("[thresholds]\ndecile_threshold = soon\n", "c.cfg"),
      doctest::Contains("c.cfg:2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[nope]\n", "c.cfg"),
                       doctest::Contains("unknown section"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[thresholds\n", "c.cfg"),
                       doctest::Contains("unclosed section"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("decile_threshold = 5\n", "c.cfg"),
                       doctest::Contains("before any section"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config("[thresholds]\nshoe_size = 9\n", "c.cfg"),
      doctest::Contains("unknown threshold"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(
          "[columns.sensitive]\nage\n[columns.nonsensitive]\nage\n", "c.cfg"),
      doctest::Contains("both sensitive and nonsensitive"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored in configs") {
  const AuditConfig cfg = parse_config(
      "# leading comment\n"
      "[thresholds]\n"
      "; alt comment\n"
      "decile_threshold = 7\n"
      "\n",
      "c.cfg");
  CHECK(cfg.thresholds.decile_threshold == 7);
}

TEST_CASE("default bindings evaluate the documented rules") {
  const AuditConfig cfg = compas_config();
  const Dataset d = compas_data();
  const BindingSet b = default_bindings("compas", cfg.thresholds, d.schema());

  REQUIRE(b.contains("prior_offenses"));
  REQUIRE(b.contains("recidivist"));
  REQUIRE(b.contains("assess"));
  REQUIRE(b.contains("appeals"));
  REQUIRE(b.contains("similar"));
  REQUIRE(b.contains("flip_pair"));

  // decile threshold is >= 5: row 1 scores 7, row 4 scores 1, row 11
  // sits exactly on the boundary.
  CHECK(b.at("assess").eval(d, {"1"}));
  CHECK(!b.at("assess").eval(d, {"4"}));
  CHECK(b.at("assess").eval(d, {"11"}));

  CHECK(b.at("prior_offenses").eval(d, {"1"}));   // priors 3
  CHECK(!b.at("prior_offenses").eval(d, {"4"}));  // priors 0

  CHECK(b.at("recidivist").eval(d, {"4"}));
  CHECK(!b.at("recidivist").eval(d, {"2"}));

  CHECK(b.at("appeals").eval(d, {"4"}));
  CHECK(!b.at("appeals").eval(d, {"1"}));

  CHECK(b.at("assess").rule_text() == "decile_score >= 5");
  CHECK(b.at("recidivist").rule_text() == "outcome=1");
  CHECK(b.at("prior_offenses").rule_text() == "priors_count > 0");
}

TEST_CASE("pair rules compare nonsensitive and sensitive columns") {
  const AuditConfig cfg = compas_config();
  const Dataset d = compas_data();
  const BindingSet b = default_bindings("compas", cfg.thresholds, d.schema());

  // rows 5 and 6 agree on priors/decile and differ on race.
  CHECK(b.at("similar").eval(d, {"5", "6"}));
  CHECK(b.at("flip_pair").eval(d, {"5", "6"}));
  CHECK(b.at("flip_pair").pair_detail(d, "5", "6") == "race: A vs B");

  // rows 1 and 2 differ on the nonsensitive columns.
  CHECK(!b.at("similar").eval(d, {"1", "2"}));
  CHECK(!b.at("flip_pair").eval(d, {"1", "2"}));

  // rows 8 and 9: same priors/decile, race differs.
  CHECK(b.at("flip_pair").eval(d, {"8", "9"}));

  CHECK(similar(d, "5", "6", cfg.thresholds));
  CHECK(!similar(d, "1", "2", cfg.thresholds));
  CHECK_THROWS_AS(similar(d, "5", "5", cfg.thresholds),
                  std::invalid_argument);
}

TEST_CASE("loan bindings require their thresholds") {
  const AuditConfig cfg = loan_config();
  const Dataset d = loan_data();
  const BindingSet b = default_bindings("loan", cfg.thresholds, d.schema());
  CHECK(b.at("credit_ok").eval(d, {"L01"}));   // 720 >= 650
  CHECK(!b.at("credit_ok").eval(d, {"L03"}));  // 580
  CHECK(b.at("income_ok").eval(d, {"L01"}));   // 52000 >= 40000
  CHECK(!b.at("income_ok").eval(d, {"L03"}));  // 30000
  CHECK(!b.at("applies").eval(d, {"L11"}));    // applied = 0

  ThresholdConfig no_credit = cfg.thresholds;
  no_credit.credit_threshold.reset();
  CHECK_THROWS_WITH_AS(default_bindings("loan", no_credit, d.schema()),
                       doctest::Contains("credit_threshold"), ConfigError);

  CHECK_THROWS_AS(default_bindings("unknown", cfg.thresholds, d.schema()),
                  std::out_of_range);
}

TEST_CASE("bindings reject columns absent from the schema") {
  const AuditConfig cfg = compas_config();
  Schema s;
  s.columns = {{"id", ColumnType::Categorical}};
  CHECK_THROWS_WITH_AS(default_bindings("compas", cfg.thresholds, s),
                       doctest::Contains("absent from schema"), DataError);
}

TEST_CASE("binding rule grammar and overrides") {
  const AuditConfig cfg = compas_config();
  const Dataset d = compas_data();

  const PredicateBinding ge = parse_binding_rule(
      "assess", "decile_score >= $decile_threshold", cfg.thresholds, d.schema());
  CHECK(ge.kind == RuleKind::ThresholdGE);
  CHECK(ge.threshold == 5);

  const PredicateBinding fixed =
      parse_binding_rule("assess", "decile_score >= 8", cfg.thresholds,
                         d.schema());
  CHECK(fixed.threshold == 8);
  CHECK(!fixed.eval(d, {"1"}));  // 7 < 8
  CHECK(fixed.eval(d, {"5"}));   // 8 >= 8

  const PredicateBinding gz = parse_binding_rule(
      "prior_offenses", "priors_count > 0", cfg.thresholds, d.schema());
  CHECK(gz.kind == RuleKind::GreaterThanZero);

  const PredicateBinding eq = parse_binding_rule(
      "recidivist", "outcome == 1", cfg.thresholds, d.schema());
  CHECK(eq.kind == RuleKind::EqualsValue);
  CHECK(eq.eval(d, {"1"}));

  CHECK_THROWS_AS(parse_binding_rule("p", "nosuchcol >= 1", cfg.thresholds,
                                     d.schema()),
                  DataError);

  BindingSet b = default_bindings("compas", cfg.thresholds, d.schema());
  apply_overrides(b, {{"assess", "decile_score >= 8"}}, cfg.thresholds,
                  d.schema());
  CHECK(b.at("assess").threshold == 8);
  CHECK(!b.at("assess").eval(d, {"1"}));
}

TEST_CASE("binding evaluation fails loudly on missing cells") {
  const std::string path = paths::temp_write(
      "holes.csv", "id,outcome\na,\nb,1\n");
  Schema s;
  s.columns = {{"id", ColumnType::Categorical},
               {"outcome", ColumnType::Integer}};
  const Dataset d = load_csv(path, s);

  PredicateBinding eq;
  eq.name = "recidivist";
  eq.kind = RuleKind::EqualsValue;
  eq.column = "outcome";
  eq.expected = Value{static_cast<long long>(1)};
  CHECK(eq.eval(d, {"b"}));
  CHECK_THROWS_AS(eq.eval(d, {"a"}), DataError);
}

TEST_CASE("formula files carry line numbers past comments") {
  const std::string path = paths::temp_write(
      "formulas.txt",
      "# a comment\n"
      "\n"
      "O(fair(x))\n"
      "  # indented comment\n"
      "bias(x) -> !ethical(x)\n");
  const auto parsed = parse_formula_file(path);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].first == 3);
  CHECK(render_formula(*parsed[0].second) == "O(fair(x))");
  CHECK(parsed[1].first == 5);
  CHECK(render_formula(*parsed[1].second) == "bias(x) -> !ethical(x)");
}
