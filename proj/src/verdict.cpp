#include "dtl/verdict.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace dtl {

std::string status_name(Status s) {
  return s == Status::Satisfied ? "Satisfied" : "Unsatisfied";
}

namespace {

void collect_atoms(const Circuit& c, std::vector<int>& order,
                   std::set<int>& seen) {
  if (c.op == CircuitOp::Atom) {
    if (seen.insert(c.atom).second) order.push_back(c.atom);
    return;
  }
  for (const Circuit& k : c.kids) collect_atoms(k, order, seen);
}

Counterexample make_counterexample(const GroundedProperty& g,
                                   const Circuit& clause, int index) {
  Counterexample cex;
  cex.clause_index = index;
  if (index >= 0) {
    cex.rows = g.clauses[static_cast<std::size_t>(index)].rows;
    cex.clause = g.clauses[static_cast<std::size_t>(index)].text;
  } else {
    cex.clause = render_formula(*g.normal);
  }
  std::set<int> seen;
  collect_atoms(clause, cex.atom_ids, seen);
  for (const int id : cex.atom_ids) {
    const RowAtom& a = g.atoms[static_cast<std::size_t>(id)];
    cex.atom_values.emplace_back(a.key(), a.value);
  }
  return cex;
}

}  // namespace

Verdict check_grounded(const GroundedProperty& g) {
  Verdict v;
  v.property_id = g.property_id;
  v.vacuous = g.vacuous;
  v.stats.rows_total = g.rows_total;
  v.stats.rows_eligible = g.rows_eligible;
  v.stats.rows_skipped = g.rows_skipped;
  v.stats.pairs_checked = g.pairs_expanded;

  std::vector<bool> values;
  values.reserve(g.atoms.size());
  for (const RowAtom& a : g.atoms) values.push_back(a.value);

  if (g.root.op == CircuitOp::And && !g.clauses.empty() &&
      g.root.kids.size() == g.clauses.size()) {
    for (std::size_t i = 0; i < g.root.kids.size(); ++i)
      if (!eval_circuit(g.root.kids[i], values))
        v.counterexamples.push_back(make_counterexample(
            g, g.root.kids[i], static_cast<int>(i)));
    v.status =
        v.counterexamples.empty() ? Status::Satisfied : Status::Unsatisfied;
    return v;
  }

  if (!eval_circuit(g.root, values)) {
    v.status = Status::Unsatisfied;
    v.counterexamples.push_back(make_counterexample(g, g.root, -1));
  }
  return v;
}

namespace {

const Circuit& clause_of(const GroundedProperty& g, int index) {
  if (index < 0) return g.root;
  return g.root.kids[static_cast<std::size_t>(index)];
}

std::string join_rows(const std::vector<std::string>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += rows[i];
  }
  return out;
}

// Domain-specific reading of the common failing shape
// pred_true -> conclusion_false; empty when the shape is anything else.
std::string contradiction_message(const GroundedProperty& g,
                                  const Circuit& clause) {
  if (clause.op != CircuitOp::Implies) return "";
  const Circuit& lhs = clause.kids[0];
  const Circuit& rhs = clause.kids[1];
  if (lhs.op != CircuitOp::Atom) return "";
  const RowAtom& ante = g.atoms[static_cast<std::size_t>(lhs.atom)];
  if (!ante.value) return "";

  if (rhs.op == CircuitOp::Atom) {
    const RowAtom& cons = g.atoms[static_cast<std::size_t>(rhs.atom)];
    if (cons.value) return "";
    return ante.rule_text + " requires " + cons.rule_text + ", found " +
           cons.actual;
  }

  // Pair antecedent with a compound consequent: name the rows, the
  // differing sensitive column and the decision predicate.
  if (ante.rows.size() == 2) {
    std::vector<int> order;
    std::set<int> seen;
    collect_atoms(rhs, order, seen);
    if (order.empty()) return "";
    const std::string& decision =
        g.atoms[static_cast<std::size_t>(order[0])].predicate;
    std::string msg = "rows " + ante.rows[0] + " and " + ante.rows[1];
    msg += ante.detail.empty()
               ? " have equal nonsensitive values"
               : " differ only on a sensitive column (" + ante.detail + ")";
    msg += " yet " + decision + " differs";
    return msg;
  }
  return "";
}

}  // namespace

ExplanationTrace explain(const Verdict& v, const GroundedProperty& g) {
  if (v.status != Status::Unsatisfied)
    throw std::logic_error("explain requires an Unsatisfied verdict");

  const Counterexample& cex = v.counterexamples.front();
  const Circuit& clause = clause_of(g, cex.clause_index);

  ExplanationTrace trace;
  trace.property_id = g.property_id;
  trace.clause_index = cex.clause_index;
  trace.atom_claims.reserve(cex.atom_ids.size());
  for (const int id : cex.atom_ids)
    trace.atom_claims.emplace_back(
        id, g.atoms[static_cast<std::size_t>(id)].value);

  trace.steps.push_back(
      {"negate", "negate",
       "assert (not " + render_formula(*g.normal) +
           ") and look for a witness in the dataset"});

  std::string isolate;
  if (cex.clause_index >= 0) {
    isolate = "a universal claim fails with any single failing instance; "
              "instance for row(s) [" +
              join_rows(cex.rows) + "]: " + cex.clause;
  } else {
    isolate = "the grounded formula itself is the failing clause: " +
              cex.clause;
  }
  trace.steps.push_back({"isolate", "monotonicity", isolate});

  std::ostringstream sub;
  sub << "substitute the dataset values:";
  for (std::size_t i = 0; i < cex.atom_ids.size(); ++i) {
    const RowAtom& a = g.atoms[static_cast<std::size_t>(cex.atom_ids[i])];
    sub << (i ? "; " : " ") << a.key() << " = "
        << (a.value ? "true" : "false") << " [" << a.rule_text;
    if (!a.actual.empty()) sub << ", found " << a.actual;
    if (!a.detail.empty()) sub << ", " << a.detail;
    sub << "]";
  }
  trace.steps.push_back({"substitute", "atom-eval", sub.str()});

  std::string final_msg = contradiction_message(g, clause);
  if (final_msg.empty())
    final_msg =
        "the substituted values falsify the clause, contradicting the "
        "property";
  trace.steps.push_back({"contradiction", "transitivity", final_msg});
  trace.final_message = final_msg;
  return trace;
}

bool replay(const ExplanationTrace& t, const GroundedProperty& g,
            const Dataset& d, const BindingSet& b) {
  std::vector<bool> values;
  values.reserve(g.atoms.size());
  for (const RowAtom& a : g.atoms) values.push_back(a.value);

  for (const auto& [id, claimed] : t.atom_claims) {
    if (id < 0 || static_cast<std::size_t>(id) >= g.atoms.size()) return false;
    const RowAtom& a = g.atoms[static_cast<std::size_t>(id)];
    const auto it = b.find(a.predicate);
    if (it == b.end()) return false;
    if (it->second.eval(d, a.rows) != claimed) return false;
    values[static_cast<std::size_t>(id)] = claimed;
  }

  const Circuit& clause = clause_of(g, t.clause_index);
  return !eval_circuit(clause, values);
}

}  // namespace dtl
