#pragma once
//
// Recursive-descent parser for the formula surface syntax.
//
//   formula    := quantified
//   quantified := ('forall'|'exists') var (',' var)* '.' quantified | implies
//   implies    := or ('->' quantified)?                  (right-assoc)
//   or         := and ('|' and)*
//   and        := until ('&' until)*
//   until      := unary ('U' until)?                     (right-assoc)
//   unary      := '!' unary | '[]' unary | '<>' unary
//              | 'O' '(' formula ')' | 'P' '(' formula ')' | 'Forb' '(' formula ')'
//              | ident ('(' term (',' term)* ')')? | '(' formula ')'
//   term       := ident            (variable)
//              | '\'' ident '\''   (constant)
//
// O, P, Forb, U, forall and exists are reserved words and cannot name
// predicates or variables.

#include <stdexcept>
#include <string>
#include <vector>

#include "dtl/formula.hpp"

namespace dtl {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string found,
             std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& found() const { return found_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string found_;
  std::vector<std::string> expected_;
};

// Parses a single formula; the whole input must be consumed.
FormulaPtr parse_formula(const std::string& text);

// Parses a formula file: one formula per line, '#' starts a comment,
// blank lines are skipped. Returns (source line, formula) pairs.
std::vector<std::pair<int, FormulaPtr>> parse_formula_file(const std::string& path);

}  // namespace dtl
