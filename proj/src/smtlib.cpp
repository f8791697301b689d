#include "dtl/smtlib.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace dtl {

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (const char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  return out;
}

std::vector<std::string> mangled_names(const GroundedProperty& g) {
  std::vector<std::string> names;
  std::set<std::string> used;
  names.reserve(g.atoms.size());
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const RowAtom& a = g.atoms[i];
    std::string name = sanitize(a.predicate);
    for (const std::string& r : a.rows) name += "_r" + sanitize(r);
    while (!used.insert(name).second) name += "_" + std::to_string(i);
    names.push_back(std::move(name));
  }
  return names;
}

void sexpr(const Circuit& c, const std::vector<std::string>& names,
           std::string& out) {
  switch (c.op) {
    case CircuitOp::True:
      out += "true";
      return;
    case CircuitOp::False:
      out += "false";
      return;
    case CircuitOp::Atom:
      out += names[static_cast<std::size_t>(c.atom)];
      return;
    case CircuitOp::Not:
      out += "(not ";
      sexpr(c.kids[0], names, out);
      out += ')';
      return;
    case CircuitOp::And:
    case CircuitOp::Or: {
      if (c.kids.empty()) {
        out += c.op == CircuitOp::And ? "true" : "false";
        return;
      }
      if (c.kids.size() == 1) {
        sexpr(c.kids[0], names, out);
        return;
      }
      out += c.op == CircuitOp::And ? "(and" : "(or";
      for (const Circuit& k : c.kids) {
        out += ' ';
        sexpr(k, names, out);
      }
      out += ')';
      return;
    }
    case CircuitOp::Implies:
      out += "(=> ";
      sexpr(c.kids[0], names, out);
      out += ' ';
      sexpr(c.kids[1], names, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string emit_smtlib(const GroundedProperty& g) {
  const std::vector<std::string> names = mangled_names(g);
  std::ostringstream out;
  out << "; grounded property" << (g.property_id.empty() ? "" : " ")
      << g.property_id << ": " << g.rows_eligible << " row(s), "
      << g.rows_skipped << " skipped\n";
  out << "; sat = property violated on this dataset (negated assert)\n";
  out << "(set-logic QF_UF)\n";
  for (std::size_t i = 0; i < g.atoms.size(); ++i)
    out << "(define-fun " << names[i] << " () Bool "
        << (g.atoms[i].value ? "true" : "false") << ")\n";
  std::string body;
  sexpr(g.root, names, body);
  out << "(assert (not " << body << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

SolverResult parse_solver_result(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  if (!(in >> token)) throw VerifyError("empty solver output");

  SolverResult result;
  if (token == "sat")
    result.status = SolverStatus::Sat;
  else if (token == "unsat")
    result.status = SolverStatus::Unsat;
  else if (token == "unknown")
    result.status = SolverStatus::Unknown;
  else
    throw VerifyError("unrecognized solver output: '" + token + "'");

  // Optional model block: collect boolean define-funs.
  std::map<std::string, bool> model;
  std::size_t pos = 0;
  bool any = false;
  while ((pos = text.find("(define-fun", pos)) != std::string::npos) {
    std::istringstream def(text.substr(pos + 11));
    std::string name, args, sort, value;
    def >> name >> args >> sort >> value;
    if (args == "()" && sort == "Bool") {
      if (!value.empty() && value.back() == ')') value.pop_back();
      if (value == "true" || value == "false") {
        model[name] = value == "true";
        any = true;
      }
    }
    pos += 11;
  }
  if (any) result.model = std::move(model);
  return result;
}

Status status_from_solver(SolverStatus s) {
  switch (s) {
    case SolverStatus::Sat:
      return Status::Unsatisfied;
    case SolverStatus::Unsat:
      return Status::Satisfied;
    case SolverStatus::Unknown:
      break;
  }
  throw VerifyError("solver returned unknown");
}

}  // namespace dtl
