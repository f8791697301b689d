// Minimal SMT-LIB 2 evaluator for the QF_UF boolean fragment where every
// constant is fixed by a (define-fun name () Bool ...) form. Since all
// asserts are then ground, satisfiability is plain evaluation: prints
// "sat" when every assert evaluates true, "unsat" otherwise.
//
// Deliberately self-contained (own reader, no shared code) so it can act
// as an independent second opinion on emitted files.

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

struct Node {
  std::string atom;  // empty for lists
  std::vector<Node> kids;
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

struct Reader {
  const std::string& text;
  std::size_t pos = 0;

  explicit Reader(const std::string& t) : text(t) {}

  void skip_space() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        return;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  Node read() {
    skip_space();
    if (pos >= text.size()) throw std::runtime_error("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      Node list;
      for (;;) {
        skip_space();
        if (pos >= text.size())
          throw std::runtime_error("unterminated list");
        if (text[pos] == ')') {
          ++pos;
          return list;
        }
        list.kids.push_back(read());
      }
    }
    if (text[pos] == ')') throw std::runtime_error("unmatched ')'");
    Node atom;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ';' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      atom.atom += text[pos++];
    return atom;
  }
};

bool eval(const Node& n, const std::map<std::string, bool>& env) {
  if (n.is_atom()) {
    if (n.atom == "true") return true;
    if (n.atom == "false") return false;
    const auto it = env.find(n.atom);
    if (it == env.end())
      throw std::runtime_error("undefined constant '" + n.atom + "'");
    return it->second;
  }
  if (n.kids.empty()) throw std::runtime_error("empty form");
  const Node& head = n.kids.front();
  if (!head.is_atom()) throw std::runtime_error("operator must be a symbol");
  const std::string& op = head.atom;
  if (op == "not") {
    if (n.kids.size() != 2) throw std::runtime_error("not takes one operand");
    return !eval(n.kids[1], env);
  }
  if (op == "and") {
    bool v = true;
    for (std::size_t i = 1; i < n.kids.size(); ++i) v = eval(n.kids[i], env) && v;
    return v;
  }
  if (op == "or") {
    bool v = false;
    for (std::size_t i = 1; i < n.kids.size(); ++i) v = eval(n.kids[i], env) || v;
    return v;
  }
  if (op == "=>") {
    if (n.kids.size() < 3) throw std::runtime_error("=> takes two operands");
    bool v = eval(n.kids.back(), env);
    for (std::size_t i = n.kids.size() - 1; i-- > 1;)
      v = !eval(n.kids[i], env) || v;
    return v;
  }
  if (op == "=") {
    if (n.kids.size() < 3) throw std::runtime_error("= takes two operands");
    const bool first = eval(n.kids[1], env);
    for (std::size_t i = 2; i < n.kids.size(); ++i)
      if (eval(n.kids[i], env) != first) return false;
    return true;
  }
  if (op == "xor") {
    bool v = false;
    for (std::size_t i = 1; i < n.kids.size(); ++i) v = v != eval(n.kids[i], env);
    return v;
  }
  throw std::runtime_error("unsupported operator '" + op + "'");
}

int run(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Reader reader(text);
  std::map<std::string, bool> env;
  std::vector<Node> asserts;

  while (!reader.at_end()) {
    const Node form = reader.read();
    if (form.kids.empty())
      throw std::runtime_error("top-level atom '" + form.atom + "'");
    const std::string& head = form.kids.front().atom;
    if (head == "set-logic" || head == "set-info" || head == "set-option" ||
        head == "exit") {
      continue;
    }
    if (head == "define-fun") {
      if (form.kids.size() != 5 || !form.kids[1].is_atom())
        throw std::runtime_error("unsupported define-fun shape");
      if (!form.kids[2].atom.empty() || !form.kids[2].kids.empty())
        throw std::runtime_error("only zero-argument define-fun is supported");
      if (form.kids[3].atom != "Bool")
        throw std::runtime_error("only Bool constants are supported");
      env[form.kids[1].atom] = eval(form.kids[4], env);
      continue;
    }
    if (head == "declare-fun" || head == "declare-const")
      throw std::runtime_error(
          "free constants are not supported; use define-fun");
    if (head == "assert") {
      if (form.kids.size() != 2)
        throw std::runtime_error("assert takes one operand");
      asserts.push_back(form.kids[1]);
      continue;
    }
    if (head == "check-sat") {
      bool all = true;
      for (const Node& a : asserts) all = eval(a, env) && all;
      std::cout << (all ? "sat" : "unsat") << "\n";
      continue;
    }
    if (head == "get-model") continue;
    throw std::runtime_error("unsupported command '" + head + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    if (argc > 2) {
      std::cerr << "usage: refsolve [file.smt2]\n";
      return 2;
    }
    if (argc == 2) {
      std::ifstream in(argv[1]);
      if (!in) {
        std::cerr << "refsolve: cannot open " << argv[1] << "\n";
        return 2;
      }
      return run(in);
    }
    return run(std::cin);
  } catch (const std::exception& e) {
    std::cerr << "refsolve: " << e.what() << "\n";
    return 1;
  }
}
