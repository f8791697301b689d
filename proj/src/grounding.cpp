#include "dtl/grounding.hpp"

#include <algorithm>
#include <set>

namespace dtl {

std::string RowAtom::key() const {
  std::string out = predicate;
  if (!rows.empty()) {
    out += '(';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out += ',';
      out += rows[i];
    }
    out += ')';
  }
  return out;
}

namespace {

struct Grounder {
  const Dataset& data;
  const BindingSet& bindings;
  const GroundOptions& opts;
  GroundedProperty& out;
  std::vector<std::string> eligible;         // file order
  std::vector<std::string> eligible_sorted;  // lexicographic id order
  std::map<std::pair<std::string, std::vector<std::string>>, int> interned;

  const PredicateBinding& binding_for(const std::string& pred,
                                      std::size_t argc) const {
    const auto it = bindings.find(pred);
    if (it == bindings.end())
      throw GroundingError("no binding for predicate '" + pred + "'");
    if (static_cast<std::size_t>(it->second.arity) != argc)
      throw GroundingError("predicate '" + pred + "' expects " +
                           std::to_string(it->second.arity) +
                           " argument(s), got " + std::to_string(argc));
    return it->second;
  }

  int intern(const PredicateBinding& b, std::vector<std::string> rows) {
    const auto key = std::make_pair(b.name, rows);
    const auto it = interned.find(key);
    if (it != interned.end()) return it->second;

    RowAtom atom;
    atom.predicate = b.name;
    atom.rows = rows;
    atom.value = b.eval(data, rows);
    atom.rule_text = b.rule_text();
    if (b.arity == 1)
      atom.actual = value_text(data.value(rows[0], b.column));
    else
      atom.detail = b.pair_detail(data, rows[0], rows[1]);

    const int index = static_cast<int>(out.atoms.size());
    out.atoms.push_back(std::move(atom));
    interned.emplace(key, index);
    return index;
  }

  std::string resolve(const Term& t, const Assignment& env) const {
    if (t.kind == TermKind::Constant) {
      if (!data.find(t.name))
        throw GroundingError("unknown row id: " + t.name);
      return t.name;
    }
    const auto it = env.find(t.name);
    if (it == env.end())
      throw GroundingError("unbound row variable: " + t.name);
    return it->second;
  }

  Circuit expand(const FormulaPtr& f, Assignment& env) {
    switch (f->op) {
      case Op::Atom: {
        const PredicateBinding& b = binding_for(f->label, f->args.size());
        std::vector<std::string> rows;
        rows.reserve(f->args.size());
        for (const Term& t : f->args) rows.push_back(resolve(t, env));
        Circuit c;
        c.op = CircuitOp::Atom;
        c.atom = intern(b, std::move(rows));
        return c;
      }
      case Op::Not: {
        Circuit c;
        c.op = CircuitOp::Not;
        c.kids.push_back(expand(f->left, env));
        return c;
      }
      case Op::And:
      case Op::Or: {
        Circuit c;
        c.op = f->op == Op::And ? CircuitOp::And : CircuitOp::Or;
        c.kids.push_back(expand(f->left, env));
        c.kids.push_back(expand(f->right, env));
        return c;
      }
      case Op::Implies: {
        Circuit c;
        c.op = CircuitOp::Implies;
        c.kids.push_back(expand(f->left, env));
        c.kids.push_back(expand(f->right, env));
        return c;
      }
      case Op::Forall:
      case Op::Exists: {
        const bool universal = f->op == Op::Forall;
        if (eligible.empty() && universal) out.vacuous = true;
        Circuit c;
        c.op = universal ? CircuitOp::And : CircuitOp::Or;
        if (eligible.empty() && !universal) c.op = CircuitOp::False;
        const auto prev = env.find(f->label);
        const bool had = prev != env.end();
        const std::string saved = had ? prev->second : std::string();
        for (const std::string& id : eligible) {
          env[f->label] = id;
          c.kids.push_back(expand(f->left, env));
        }
        if (had)
          env[f->label] = saved;
        else
          env.erase(f->label);
        if (c.kids.empty() && universal) c.op = CircuitOp::True;
        return c;
      }
      default:
        throw GroundingError("unexpected operator after normalization");
    }
  }
};

// Leading universal prefix of the normal form; the clause list is the
// flattened instantiation over its variables.
std::vector<std::string> leading_universals(const FormulaPtr& f,
                                            FormulaPtr& body) {
  std::vector<std::string> vars;
  FormulaPtr cur = f;
  while (cur->op == Op::Forall) {
    vars.push_back(cur->label);
    cur = cur->left;
  }
  body = cur;
  return vars;
}

FormulaPtr instantiate(const FormulaPtr& body,
                       const std::vector<std::string>& vars,
                       const std::vector<std::string>& ids) {
  FormulaPtr f = body;
  for (std::size_t i = 0; i < vars.size(); ++i)
    f = substitute(f, vars[i], ids[i]);
  return f;
}

// Pair pattern eligible for the nonsensitive-tuple index:
//   forall i. forall j. pred(i, j) -> consequent  with pred a pair rule.
const PredicateBinding* pair_pattern(const FormulaPtr& body,
                                     const std::vector<std::string>& vars,
                                     const BindingSet& bindings) {
  if (vars.size() != 2) return nullptr;
  if (body->op != Op::Implies || body->left->op != Op::Atom) return nullptr;
  const FormulaPtr& a = body->left;
  if (a->args.size() != 2 || a->args[0].kind != TermKind::Variable ||
      a->args[1].kind != TermKind::Variable)
    return nullptr;
  if (a->args[0].name != vars[0] || a->args[1].name != vars[1]) return nullptr;
  const auto it = bindings.find(a->label);
  if (it == bindings.end()) return nullptr;
  if (it->second.kind != RuleKind::SimilarRows &&
      it->second.kind != RuleKind::FlipPair)
    return nullptr;
  return &it->second;
}

}  // namespace

GroundedProperty ground_property(const FormulaPtr& p, const Dataset& d,
                                 const BindingSet& b,
                                 const GroundOptions& opts) {
  if (opts.mode == AuditMode::Strict && contains_deontic(*p))
    throw GroundingError(
        "deontic operator in a dataset audit; strict mode requires an "
        "explicit deontic model");

  GroundedProperty out;
  out.source = p;
  out.normal = audit_normal_form(p);
  out.rows_total = d.size();

  Grounder g{d, b, opts, out, {}, {}, {}};

  // Rows eligible for quantification: every column referenced by a
  // predicate of the property has a value.
  std::set<std::string> referenced;
  for (const PredicateSymbol& ps : collect_predicates(*out.normal)) {
    const PredicateBinding& pb =
        g.binding_for(ps.name, static_cast<std::size_t>(ps.arity));
    for (const std::string& col : pb.referenced_columns()) {
      d.schema().at(col);  // throws on unknown column
      referenced.insert(col);
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DataRow& r = d.row(i);
    bool ok = true;
    for (const std::string& col : referenced)
      if (value_missing(d.value(r, col))) {
        ok = false;
        break;
      }
    if (ok) g.eligible.push_back(r.id);
  }
  out.rows_eligible = g.eligible.size();
  out.rows_skipped = out.rows_total - out.rows_eligible;
  g.eligible_sorted = g.eligible;
  std::sort(g.eligible_sorted.begin(), g.eligible_sorted.end());

  FormulaPtr body;
  const std::vector<std::string> vars = leading_universals(out.normal, body);

  if (vars.empty()) {
    Assignment env;
    out.root = g.expand(out.normal, env);
    return out;
  }

  out.root.op = CircuitOp::And;
  if (g.eligible.empty()) {
    out.vacuous = true;
    out.root.op = CircuitOp::True;
    return out;
  }

  const PredicateBinding* pair = pair_pattern(body, vars, b);
  const bool use_index =
      pair && g.eligible.size() > opts.pair_group_threshold;

  // Row tuples in clause order: file order for a single variable,
  // lexicographic id order for pairs.
  std::vector<std::vector<std::string>> tuples;
  if (vars.size() == 1) {
    for (const std::string& id : g.eligible) tuples.push_back({id});
  } else if (!use_index) {
    std::vector<std::string> tuple(vars.size());
    const std::size_t n = g.eligible_sorted.size();
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < vars.size(); ++k)
        tuple[k] = g.eligible_sorted[idx[k]];
      tuples.push_back(tuple);
      std::size_t k = vars.size();
      while (k > 0 && ++idx[k - 1] == n) idx[--k] = 0;
      if (k == 0) break;
    }
    if (vars.size() == 2) out.pairs_expanded = tuples.size();
  } else {
    // Group by the nonsensitive tuple; only pairs inside a group can
    // make the pair predicate true, so other clauses are vacuous.
    out.grouped = true;
    std::map<std::vector<std::string>, std::vector<std::string>> groups;
    for (const std::string& id : g.eligible_sorted) {
      std::vector<std::string> keyv;
      keyv.reserve(pair->nonsensitive.size());
      for (const std::string& col : pair->nonsensitive)
        keyv.push_back(value_text(d.value(id, col)));
      groups[std::move(keyv)].push_back(id);
    }
    for (const auto& [keyv, ids] : groups)
      for (const std::string& i : ids)
        for (const std::string& j : ids)
          if (i != j) tuples.push_back({i, j});
    std::sort(tuples.begin(), tuples.end());
    out.pairs_expanded = tuples.size();
  }

  for (const auto& tuple : tuples) {
    Assignment env;
    for (std::size_t k = 0; k < vars.size(); ++k) env[vars[k]] = tuple[k];
    out.root.kids.push_back(g.expand(body, env));
    GroundedClause clause;
    clause.rows = tuple;
    clause.text = render_formula(*instantiate(body, vars, tuple));
    out.clauses.push_back(std::move(clause));
  }
  return out;
}

namespace {

bool eval_node(const Circuit& c, const std::vector<bool>& values) {
  switch (c.op) {
    case CircuitOp::True:
      return true;
    case CircuitOp::False:
      return false;
    case CircuitOp::Atom:
      return values[static_cast<std::size_t>(c.atom)];
    case CircuitOp::Not:
      return !eval_node(c.kids[0], values);
    case CircuitOp::And:
      for (const Circuit& k : c.kids)
        if (!eval_node(k, values)) return false;
      return true;
    case CircuitOp::Or:
      for (const Circuit& k : c.kids)
        if (eval_node(k, values)) return true;
      return false;
    case CircuitOp::Implies:
      return !eval_node(c.kids[0], values) || eval_node(c.kids[1], values);
  }
  return false;
}

}  // namespace

bool eval_circuit(const Circuit& c, const std::vector<bool>& values) {
  return eval_node(c, values);
}

bool eval_circuit(const Circuit& c, const std::vector<RowAtom>& atoms) {
  std::vector<bool> values;
  values.reserve(atoms.size());
  for (const RowAtom& a : atoms) values.push_back(a.value);
  return eval_node(c, values);
}

KripkeModel induced_row_model(const Dataset& d, const BindingSet& b,
                              const std::vector<std::string>& rows) {
  KripkeModel m;
  m.states = {"s0"};
  m.rt.resize(1);
  m.ro.resize(1);
  m.domain = rows;
  for (const auto& [name, binding] : b) {
    m.predicates[name] = binding.arity;
    if (binding.arity == 1) {
      for (const std::string& id : rows) {
        GroundAtom atom{name, {id}};
        m.truth[atom.key()] = {binding.eval(d, {id})};
      }
    } else {
      for (const std::string& i : rows)
        for (const std::string& j : rows) {
          GroundAtom atom{name, {i, j}};
          m.truth[atom.key()] = {binding.eval(d, {i, j})};
        }
    }
  }
  return m;
}

}  // namespace dtl
