#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "dtl/bindings.hpp"
#include "dtl/config.hpp"
#include "dtl/dataset.hpp"
#include "dtl/grounding.hpp"
#include "dtl/model.hpp"
#include "dtl/norms.hpp"
#include "dtl/parser.hpp"
#include "dtl/report.hpp"
#include "dtl/smtlib.hpp"
#include "dtl/suites.hpp"
#include "dtl/verdict.hpp"

namespace {

using namespace dtl;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Feed the emitted SMT-LIB to the external solver named by
// AUDIT_SOLVER_CMD and compare verdicts.
std::string cross_check(const GroundedProperty& g, const Verdict& v,
                        const std::string& solver_cmd, bool& ok) {
  char path[] = "/tmp/dtlcheck-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) {
    ok = false;
    return "error: cannot create temp file";
  }
  const std::string text = emit_smtlib(g);
  if (write(fd, text.data(), text.size()) !=
      static_cast<ssize_t>(text.size())) {
    close(fd);
    unlink(path);
    ok = false;
    return "error: cannot write temp file";
  }
  close(fd);

  const std::string cmd = solver_cmd + " " + path + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string output;
  if (pipe) {
    char buf[256];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    pclose(pipe);
  }
  unlink(path);
  if (!pipe) {
    ok = false;
    return "error: cannot run solver";
  }

  try {
    const SolverResult result = parse_solver_result(output);
    const Status external = status_from_solver(result.status);
    if (external == v.status) {
      ok = true;
      return "agree";
    }
    ok = false;
    return "disagree: internal=" + status_name(v.status) +
           " external=" + status_name(external);
  } catch (const VerifyError& e) {
    ok = false;
    return std::string("error: ") + e.what();
  }
}

int run_audit(const std::string& suite_name, const std::string& data_path,
              const std::string& config_path, const std::string& mode,
              const std::string& report_path, bool show_all,
              std::size_t max_print) {
  try {
    const AuditConfig cfg = load_config(config_path);
    const Dataset data = cfg.schema ? load_csv(data_path, *cfg.schema)
                                    : load_csv(data_path);
    BindingSet bindings =
        default_bindings(suite_name, cfg.thresholds, data.schema());
    apply_overrides(bindings, cfg.bindings, cfg.thresholds, data.schema());

    GroundOptions opts;
    opts.mode =
        mode == "strict" ? AuditMode::Strict : AuditMode::Reproduction;

    const char* solver = std::getenv("AUDIT_SOLVER_CMD");
    bool cross_ok = true;

    AuditReport report;
    report.suite = suite_name;
    report.mode = mode;
    report.dataset_path = data_path;
    report.config_path = config_path;
    report.rows = data.size();

    for (const SuiteProperty& sp : suite(suite_name)) {
      PropertyResult pr;
      pr.id = sp.id;
      pr.description = sp.description;
      pr.stated = render_formula(*sp.stated);
      const std::string audited = render_formula(*sp.audited);
      if (audited != pr.stated) pr.audited = audited;
      pr.note = sp.note;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        GroundedProperty g = ground_property(sp.audited, data, bindings, opts);
        g.property_id = sp.id;
        Verdict v = check_grounded(g);
        const auto t1 = std::chrono::steady_clock::now();
        v.property_id = sp.id;
        v.stats.elapsed_us =
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                .count();
        if (v.status == Status::Unsatisfied)
          pr.explanation = explain(v, g).steps;
        if (solver && *solver) {
          bool ok = true;
          pr.cross_check = cross_check(g, v, solver, ok);
          cross_ok = cross_ok && ok;
        }
        pr.verdict = std::move(v);
      } catch (const GroundingError& e) {
        pr.errored = true;
        pr.error = e.what();
      }
      report.properties.push_back(std::move(pr));
    }

    std::cout << render_text(report, max_print, show_all);
    if (!report_path.empty()) write_file(report_path, render_csv(report));

    if (report.any_error() || !cross_ok) return 2;
    return report.all_satisfied() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_theorems(int max_states, int max_atoms, int domain_size, bool full,
                 const std::string& out_path) {
  ModelBounds bounds;
  bounds.max_states = max_states;
  bounds.max_atoms = max_atoms;
  bounds.domain_size = domain_size;
  bounds.trace_only = !full;

  std::ostringstream lines;
  try {
    for (const std::string& id : theorem_ids()) {
      const ValidationReport r = validate_theorem(id, bounds);
      const std::string line = report_line(r);
      lines << line << "\n";
      std::cout << line << "\n";
      if (r.counterexample) {
        const ValidityCounterexample& cex = *r.counterexample;
        std::cout << "  counterexample at state " << cex.state << ":\n";
        std::istringstream model_text(render_model(cex.model));
        std::string model_line;
        while (std::getline(model_text, model_line))
          std::cout << "    " << model_line << "\n";
      }
    }
  } catch (const BoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    write_file(out_path, lines.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_emit(const std::string& suite_name, const std::string& data_path,
             const std::string& config_path, const std::string& property_id,
             const std::string& out_path) {
  try {
    const AuditConfig cfg = load_config(config_path);
    const Dataset data = cfg.schema ? load_csv(data_path, *cfg.schema)
                                    : load_csv(data_path);
    BindingSet bindings =
        default_bindings(suite_name, cfg.thresholds, data.schema());
    apply_overrides(bindings, cfg.bindings, cfg.thresholds, data.schema());

    const SuiteProperty& sp = suite_property(suite_name, property_id);
    GroundedProperty g = ground_property(sp.audited, data, bindings);
    g.property_id = property_id;
    write_file(out_path, emit_smtlib(g));
    std::cout << "wrote " << out_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_check(const std::string& model_path, const std::string& formula_text,
              const std::string& formula_file, const std::string& state_name,
              const std::vector<std::string>& assigns) {
  try {
    const KripkeModel model = load_model(model_path);

    int state = model.state_index(state_name);
    if (state < 0) {
      try {
        std::size_t pos = 0;
        const int idx = std::stoi(state_name, &pos);
        if (pos == state_name.size() && idx >= 0 &&
            idx < static_cast<int>(model.states.size()))
          state = idx;
      } catch (...) {
      }
    }
    if (state < 0) {
      std::cerr << "error: unknown state '" << state_name << "'\n";
      return 2;
    }

    Assignment sigma;
    for (const std::string& a : assigns) {
      const std::size_t eq = a.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: bad assignment '" << a << "' (want var=const)\n";
        return 2;
      }
      sigma[a.substr(0, eq)] = a.substr(eq + 1);
    }

    std::vector<FormulaPtr> formulas;
    if (!formula_text.empty()) formulas.push_back(parse_formula(formula_text));
    if (!formula_file.empty())
      for (auto& [line, f] : parse_formula_file(formula_file))
        formulas.push_back(std::move(f));
    if (formulas.empty()) {
      std::cerr << "error: no formula given (use --formula or --file)\n";
      return 2;
    }

    bool all_true = true;
    for (const FormulaPtr& f : formulas) {
      const bool value = evaluate(model, state, sigma, *f);
      all_true = all_true && value;
      std::cout << (value ? "true" : "false") << "  " << render_formula(*f)
                << "\n";
    }
    return all_true ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deontic-temporal property auditing and theorem checking"};
  app.require_subcommand(1);

  // audit
  std::string suite_name, data_path, config_path;
  std::string mode = "reproduction";
  std::string report_path;
  bool show_all = false;
  std::size_t max_print = 10;
  CLI::App* audit = app.add_subcommand("audit", "audit a dataset against a property suite");
  audit->add_option("--suite", suite_name, "property suite: compas | loan")
      ->required()
      ->check(CLI::IsMember({"compas", "loan"}));
  audit->add_option("--data", data_path, "CSV dataset")->required();
  audit->add_option("--config", config_path, "audit configuration")->required();
  audit->add_option("--mode", mode, "reproduction | strict")
      ->check(CLI::IsMember({"reproduction", "strict"}));
  audit->add_option("--report", report_path, "write CSV report here");
  audit->add_flag("--all", show_all, "print every counterexample");
  audit->add_option("--max-print", max_print, "counterexample print cap");

  // theorems
  int max_states = 3, max_atoms = 8, domain_size = 1;
  bool full_models = false;
  std::string theorems_out = "theorems.report";
  CLI::App* theorems = app.add_subcommand("theorems", "validate the theorem catalog by bounded model enumeration");
  theorems->add_option("--max-states", max_states, "state bound (default 3)");
  theorems->add_option("--max-atoms", max_atoms, "ground atom bound (default 8)");
  theorems->add_option("--domain-size", domain_size, "constant domain size (default 1)");
  theorems->add_flag("--full", full_models, "enumerate branching temporal relations, not just traces");
  theorems->add_option("--out", theorems_out, "report file (default theorems.report)");

  // emit
  std::string property_id, emit_out;
  CLI::App* emit = app.add_subcommand("emit", "emit a grounded property as SMT-LIB 2");
  emit->add_option("--suite", suite_name, "property suite: compas | loan")
      ->required()
      ->check(CLI::IsMember({"compas", "loan"}));
  emit->add_option("--data", data_path, "CSV dataset")->required();
  emit->add_option("--config", config_path, "audit configuration")->required();
  emit->add_option("--property", property_id, "property id a-e")->required();
  emit->add_option("--out", emit_out, "output file")->required();

  // check
  std::string model_path, formula_text, formula_file, state_name = "0";
  std::vector<std::string> assigns;
  CLI::App* check = app.add_subcommand("check", "evaluate formulas on a model file");
  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--formula", formula_text, "formula text");
  check->add_option("--file", formula_file, "formula file, one per line");
  check->add_option("--state", state_name, "evaluation state (name or index, default 0)");
  check->add_option("--assign", assigns, "variable binding var=const (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (audit->parsed())
    return run_audit(suite_name, data_path, config_path, mode, report_path,
                     show_all, max_print);
  if (theorems->parsed())
    return run_theorems(max_states, max_atoms, domain_size, full_models,
                        theorems_out);
  if (emit->parsed())
    return run_emit(suite_name, data_path, config_path, property_id, emit_out);
  if (check->parsed())
    return run_check(model_path, formula_text, formula_file, state_name,
                     assigns);
  return 2;
}
