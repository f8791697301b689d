#include "dtl/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dtl {

std::string GroundAtom::key() const {
  if (args.empty()) return pred;
  std::string out = pred;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i];
  }
  out += ')';
  return out;
}

int KripkeModel::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

bool KripkeModel::holds(int state, const std::string& atom_key) const {
  auto it = truth.find(atom_key);
  if (it == truth.end()) return false;
  return it->second[static_cast<std::size_t>(state)];
}

KripkeModel induced_model(const TraceModel& t) {
  KripkeModel m;
  m.states.reserve(static_cast<std::size_t>(t.length));
  for (int i = 0; i < t.length; ++i) m.states.push_back("s" + std::to_string(i));
  m.rt.resize(static_cast<std::size_t>(t.length));
  for (int i = 0; i + 1 < t.length; ++i) m.rt[static_cast<std::size_t>(i)] = {i + 1};
  m.ro = t.deontic;
  m.ro.resize(static_cast<std::size_t>(t.length));
  m.domain = t.domain;
  m.predicates = t.predicates;
  m.truth = t.truth;
  return m;
}

// ── Evaluation ────────────────────────────────────────────────────────

namespace {

// Resolves an atom's arguments against the assignment and checks it
// against the model's vocabulary, returning the valuation key.
template <typename ModelT>
std::string resolve_atom(const ModelT& m, const Assignment& sigma,
                         const Formula& f) {
  auto pit = m.predicates.find(f.label);
  if (pit == m.predicates.end())
    throw EvalError("unknown predicate symbol: " + f.label);
  if (pit->second != static_cast<int>(f.args.size()))
    throw EvalError("arity mismatch for '" + f.label + "': expected " +
                    std::to_string(pit->second) + " argument(s), got " +
                    std::to_string(f.args.size()));
  GroundAtom atom;
  atom.pred = f.label;
  for (const Term& t : f.args) {
    if (t.kind == TermKind::Variable) {
      auto vit = sigma.find(t.name);
      if (vit == sigma.end())
        throw EvalError("unbound variable: " + t.name);
      atom.args.push_back(vit->second);
    } else {
      atom.args.push_back(t.name);
    }
  }
  for (const std::string& c : atom.args)
    if (std::find(m.domain.begin(), m.domain.end(), c) == m.domain.end())
      throw EvalError("unknown constant: " + c);
  return atom.key();
}

// Reflexive-transitive R_T image of `from`, in discovery order.
std::vector<int> rt_closure(const KripkeModel& m, int from) {
  std::vector<bool> seen(m.states.size(), false);
  std::vector<int> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int succ : m.rt[static_cast<std::size_t>(queue[head])]) {
      if (!seen[static_cast<std::size_t>(succ)]) {
        seen[static_cast<std::size_t>(succ)] = true;
        queue.push_back(succ);
      }
    }
  }
  return queue;
}

}  // namespace

bool evaluate(const KripkeModel& m, int state, const Assignment& sigma,
              const Formula& f) {
  if (state < 0 || state >= static_cast<int>(m.states.size()))
    throw EvalError("state index out of range");
  switch (f.op) {
    case Op::Atom:
      return m.holds(state, resolve_atom(m, sigma, f));
    case Op::Not:
      return !evaluate(m, state, sigma, *f.left);
    case Op::And:
      return evaluate(m, state, sigma, *f.left) &&
             evaluate(m, state, sigma, *f.right);
    case Op::Or:
      return evaluate(m, state, sigma, *f.left) ||
             evaluate(m, state, sigma, *f.right);
    case Op::Implies:
      return !evaluate(m, state, sigma, *f.left) ||
             evaluate(m, state, sigma, *f.right);
    case Op::Oblig:
      for (int s : m.ro[static_cast<std::size_t>(state)])
        if (!evaluate(m, s, sigma, *f.left)) return false;
      return true;
    case Op::Perm:
      for (int s : m.ro[static_cast<std::size_t>(state)])
        if (evaluate(m, s, sigma, *f.left)) return true;
      return false;
    case Op::Forb:
      for (int s : m.ro[static_cast<std::size_t>(state)])
        if (evaluate(m, s, sigma, *f.left)) return false;
      return true;
    case Op::Always:
      for (int s : rt_closure(m, state))
        if (!evaluate(m, s, sigma, *f.left)) return false;
      return true;
    case Op::Eventually:
      for (int s : rt_closure(m, state))
        if (evaluate(m, s, sigma, *f.left)) return true;
      return false;
    case Op::Until: {
      // Least fixpoint of U(s) = psi(s) or (phi(s) and some R_T
      // successor in U), restricted to states reachable from `state`.
      const std::vector<int> reach = rt_closure(m, state);
      std::vector<bool> in_reach(m.states.size(), false);
      for (int s : reach) in_reach[static_cast<std::size_t>(s)] = true;
      std::vector<bool> phi(m.states.size(), false), sat(m.states.size(), false);
      for (int s : reach) {
        sat[static_cast<std::size_t>(s)] = evaluate(m, s, sigma, *f.right);
        phi[static_cast<std::size_t>(s)] = evaluate(m, s, sigma, *f.left);
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (int s : reach) {
          if (sat[static_cast<std::size_t>(s)] || !phi[static_cast<std::size_t>(s)])
            continue;
          for (int succ : m.rt[static_cast<std::size_t>(s)]) {
            if (in_reach[static_cast<std::size_t>(succ)] &&
                sat[static_cast<std::size_t>(succ)]) {
              sat[static_cast<std::size_t>(s)] = true;
              changed = true;
              break;
            }
          }
        }
      }
      return sat[static_cast<std::size_t>(state)];
    }
    case Op::Forall: {
      Assignment inner = sigma;
      for (const std::string& c : m.domain) {
        inner[f.label] = c;
        if (!evaluate(m, state, inner, *f.left)) return false;
      }
      return true;
    }
    case Op::Exists: {
      Assignment inner = sigma;
      for (const std::string& c : m.domain) {
        inner[f.label] = c;
        if (evaluate(m, state, inner, *f.left)) return true;
      }
      return false;
    }
  }
  throw EvalError("unreachable formula kind");
}

bool evaluate_trace(const TraceModel& t, int k, const Assignment& sigma,
                    const Formula& f) {
  if (k < 0 || k >= t.length) throw EvalError("trace position out of range");
  switch (f.op) {
    case Op::Atom: {
      const std::string key = resolve_atom(t, sigma, f);
      auto it = t.truth.find(key);
      if (it == t.truth.end()) return false;
      return it->second[static_cast<std::size_t>(k)];
    }
    case Op::Not:
      return !evaluate_trace(t, k, sigma, *f.left);
    case Op::And:
      return evaluate_trace(t, k, sigma, *f.left) &&
             evaluate_trace(t, k, sigma, *f.right);
    case Op::Or:
      return evaluate_trace(t, k, sigma, *f.left) ||
             evaluate_trace(t, k, sigma, *f.right);
    case Op::Implies:
      return !evaluate_trace(t, k, sigma, *f.left) ||
             evaluate_trace(t, k, sigma, *f.right);
    case Op::Oblig:
      for (int s : t.deontic[static_cast<std::size_t>(k)])
        if (!evaluate_trace(t, s, sigma, *f.left)) return false;
      return true;
    case Op::Perm:
      for (int s : t.deontic[static_cast<std::size_t>(k)])
        if (evaluate_trace(t, s, sigma, *f.left)) return true;
      return false;
    case Op::Forb:
      for (int s : t.deontic[static_cast<std::size_t>(k)])
        if (evaluate_trace(t, s, sigma, *f.left)) return false;
      return true;
    case Op::Always:
      for (int j = k; j < t.length; ++j)
        if (!evaluate_trace(t, j, sigma, *f.left)) return false;
      return true;
    case Op::Eventually:
      for (int j = k; j < t.length; ++j)
        if (evaluate_trace(t, j, sigma, *f.left)) return true;
      return false;
    case Op::Until:
      for (int j = k; j < t.length; ++j) {
        if (evaluate_trace(t, j, sigma, *f.right)) return true;
        if (!evaluate_trace(t, j, sigma, *f.left)) return false;
      }
      return false;
    case Op::Forall: {
      Assignment inner = sigma;
      for (const std::string& c : t.domain) {
        inner[f.label] = c;
        if (!evaluate_trace(t, k, inner, *f.left)) return false;
      }
      return true;
    }
    case Op::Exists: {
      Assignment inner = sigma;
      for (const std::string& c : t.domain) {
        inner[f.label] = c;
        if (evaluate_trace(t, k, inner, *f.left)) return true;
      }
      return false;
    }
  }
  throw EvalError("unreachable formula kind");
}

// ── Model files ───────────────────────────────────────────────────────

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

[[noreturn]] void model_error(int line, const std::string& msg) {
  throw std::runtime_error("model file line " + std::to_string(line) + ": " + msg);
}

}  // namespace

KripkeModel parse_model(const std::string& text) {
  KripkeModel m;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::tuple<int, std::string, std::string>> edges;  // kind, from, to
  std::vector<std::tuple<int, std::string, std::string, bool>> facts;
  std::vector<int> edge_lines, fact_lines;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& head = words[0];
    if (head == "states:") {
      for (std::size_t i = 1; i < words.size(); ++i) m.states.push_back(words[i]);
    } else if (head == "domain:") {
      for (std::size_t i = 1; i < words.size(); ++i) m.domain.push_back(words[i]);
    } else if (head == "pred:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto slash = words[i].find('/');
        if (slash == std::string::npos)
          model_error(lineno, "predicate declaration needs name/arity: " + words[i]);
        m.predicates[words[i].substr(0, slash)] =
            std::stoi(words[i].substr(slash + 1));
      }
    } else if (head == "RT:" || head == "RO:") {
      if (words.size() != 3) model_error(lineno, head + " needs two states");
      edges.emplace_back(head == "RT:" ? 0 : 1, words[1], words[2]);
      edge_lines.push_back(lineno);
    } else if (head == "I:") {
      if (words.size() != 3) model_error(lineno, "I: needs a state and atom=value");
      const std::string& avp = words[2];
      const auto eq = avp.find('=');
      if (eq == std::string::npos) model_error(lineno, "I: entry needs atom=value");
      const std::string value = avp.substr(eq + 1);
      if (value != "true" && value != "false")
        model_error(lineno, "I: value must be true or false");
      facts.emplace_back(0, words[1], avp.substr(0, eq), value == "true");
      fact_lines.push_back(lineno);
    } else {
      model_error(lineno, "unknown directive: " + head);
    }
  }

  if (m.states.empty()) throw std::runtime_error("model file declares no states");
  m.rt.resize(m.states.size());
  m.ro.resize(m.states.size());

  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& [kind, from, to] = edges[e];
    const int a = m.state_index(from), b = m.state_index(to);
    if (a < 0) model_error(edge_lines[e], "unknown state: " + from);
    if (b < 0) model_error(edge_lines[e], "unknown state: " + to);
    (kind == 0 ? m.rt : m.ro)[static_cast<std::size_t>(a)].push_back(b);
  }

  for (std::size_t i = 0; i < facts.size(); ++i) {
    const auto& [unused, state, atom_text, value] = facts[i];
    const int s = m.state_index(state);
    if (s < 0) model_error(fact_lines[i], "unknown state: " + state);
    GroundAtom atom;
    const auto lp = atom_text.find('(');
    if (lp == std::string::npos) {
      atom.pred = atom_text;
    } else {
      if (atom_text.back() != ')')
        model_error(fact_lines[i], "malformed atom: " + atom_text);
      atom.pred = atom_text.substr(0, lp);
      std::string inner = atom_text.substr(lp + 1, atom_text.size() - lp - 2);
      std::string cur;
      for (char c : inner + ",") {
        if (c == ',') {
          if (!cur.empty()) atom.args.push_back(cur);
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          cur += c;
        }
      }
    }
    for (const std::string& a : atom.args)
      if (std::find(m.domain.begin(), m.domain.end(), a) == m.domain.end())
        model_error(fact_lines[i], "unknown constant: " + a);
    auto pit = m.predicates.find(atom.pred);
    if (pit == m.predicates.end())
      m.predicates[atom.pred] = static_cast<int>(atom.args.size());
    else if (pit->second != static_cast<int>(atom.args.size()))
      model_error(fact_lines[i], "arity mismatch for " + atom.pred);
    auto& row = m.truth[atom.key()];
    row.resize(m.states.size(), false);
    row[static_cast<std::size_t>(s)] = value;
  }
  for (auto& [key, row] : m.truth) row.resize(m.states.size(), false);
  return m;
}

KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string render_model(const KripkeModel& m) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : m.states) os << ' ' << s;
  os << '\n';
  if (!m.domain.empty()) {
    os << "domain:";
    for (const auto& d : m.domain) os << ' ' << d;
    os << '\n';
  }
  if (!m.predicates.empty()) {
    os << "pred:";
    for (const auto& [name, arity] : m.predicates) os << ' ' << name << '/' << arity;
    os << '\n';
  }
  for (std::size_t a = 0; a < m.rt.size(); ++a)
    for (int b : m.rt[a]) os << "RT: " << m.states[a] << ' ' << m.states[static_cast<std::size_t>(b)] << '\n';
  for (std::size_t a = 0; a < m.ro.size(); ++a)
    for (int b : m.ro[a]) os << "RO: " << m.states[a] << ' ' << m.states[static_cast<std::size_t>(b)] << '\n';
  for (const auto& [key, row] : m.truth)
    for (std::size_t s = 0; s < row.size(); ++s)
      if (row[s]) os << "I: " << m.states[s] << ' ' << key << "=true\n";
  return os.str();
}

}  // namespace dtl
