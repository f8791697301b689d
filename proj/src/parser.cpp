#include "dtl/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dtl {

namespace {

std::string describe(int line, int column, const std::string& found,
                     const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "parse error at " << line << ":" << column << ": found " << found
     << ", expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << " or ";
    os << expected[i];
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::string found,
                       std::vector<std::string> expected)
    : std::runtime_error(describe(line, column, found, expected)),
      line_(line), column_(column),
      found_(std::move(found)), expected_(std::move(expected)) {}

namespace {

enum class Tok : std::uint8_t {
  Ident, Constant,
  LParen, RParen, Comma, Dot,
  Bang, Amp, Pipe, Arrow,
  Box, Diamond,
  KwO, KwP, KwForb, KwU, KwForall, KwExists,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

const char* token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Constant: return "constant";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Box: return "'[]'";
    case Tok::Diamond: return "'<>'";
    case Tok::KwO: return "'O'";
    case Tok::KwP: return "'P'";
    case Tok::KwForb: return "'Forb'";
    case Tok::KwU: return "'U'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwExists: return "'exists'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    const int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word = read_word();
      if (word == "O") return {Tok::KwO, word, line, col};
      if (word == "P") return {Tok::KwP, word, line, col};
      if (word == "Forb") return {Tok::KwForb, word, line, col};
      if (word == "U") return {Tok::KwU, word, line, col};
      if (word == "forall") return {Tok::KwForall, word, line, col};
      if (word == "exists") return {Tok::KwExists, word, line, col};
      return {Tok::Ident, word, line, col};
    }
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case ',': advance(); return {Tok::Comma, ",", line, col};
      case '.': advance(); return {Tok::Dot, ".", line, col};
      case '!': advance(); return {Tok::Bang, "!", line, col};
      case '&': advance(); return {Tok::Amp, "&", line, col};
      case '|': advance(); return {Tok::Pipe, "|", line, col};
      case '-':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {Tok::Arrow, "->", line, col};
        }
        throw ParseError(line, col, "'-'", {"'->'"});
      case '[':
        advance();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          advance();
          return {Tok::Box, "[]", line, col};
        }
        throw ParseError(line, col, "'['", {"'[]'"});
      case '<':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {Tok::Diamond, "<>", line, col};
        }
        throw ParseError(line, col, "'<'", {"'<>'"});
      case '\'': {
        advance();
        std::string word = read_word();
        if (word.empty() || pos_ >= text_.size() || text_[pos_] != '\'')
          throw ParseError(line, col, "unterminated constant", {"constant"});
        advance();
        return {Tok::Constant, word, line, col};
      }
      default:
        throw ParseError(line, col, std::string("'") + c + "'", {"a formula"});
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }
  std::string read_word() {
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

  FormulaPtr parse() {
    FormulaPtr f = quantified();
    if (cur_.kind != Tok::End) fail({"end of input"});
    return f;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = cur_.kind == Tok::End
                            ? "end of input"
                            : "'" + cur_.text + "'";
    throw ParseError(cur_.line, cur_.column, found, std::move(expected));
  }

  Token eat(Tok kind) {
    if (cur_.kind != kind) fail({token_name(kind)});
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    cur_ = lex_.next();
    return true;
  }

  FormulaPtr quantified() {
    if (cur_.kind == Tok::KwForall || cur_.kind == Tok::KwExists) {
      const bool universal = cur_.kind == Tok::KwForall;
      cur_ = lex_.next();
      std::vector<std::string> vars;
      vars.push_back(eat(Tok::Ident).text);
      while (accept(Tok::Comma)) vars.push_back(eat(Tok::Ident).text);
      eat(Tok::Dot);
      FormulaPtr body = quantified();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = universal ? make_forall(*it, std::move(body))
                         : make_exists(*it, std::move(body));
      return body;
    }
    return implies();
  }

  FormulaPtr implies() {
    FormulaPtr l = disjunction();
    if (accept(Tok::Arrow)) return make_implies(std::move(l), quantified());
    return l;
  }

  FormulaPtr disjunction() {
    FormulaPtr l = conjunction();
    while (accept(Tok::Pipe)) l = make_or(std::move(l), conjunction());
    return l;
  }

  FormulaPtr conjunction() {
    FormulaPtr l = until();
    while (accept(Tok::Amp)) l = make_and(std::move(l), until());
    return l;
  }

  FormulaPtr until() {
    FormulaPtr l = unary();
    if (accept(Tok::KwU)) return make_until(std::move(l), until());
    return l;
  }

  FormulaPtr unary() {
    switch (cur_.kind) {
      case Tok::Bang:
        cur_ = lex_.next();
        return make_not(unary());
      case Tok::Box:
        cur_ = lex_.next();
        return make_always(unary());
      case Tok::Diamond:
        cur_ = lex_.next();
        return make_eventually(unary());
      case Tok::KwO:
      case Tok::KwP:
      case Tok::KwForb: {
        const Tok kw = cur_.kind;
        cur_ = lex_.next();
        eat(Tok::LParen);
        FormulaPtr body = quantified();
        eat(Tok::RParen);
        if (kw == Tok::KwO) return make_oblig(std::move(body));
        if (kw == Tok::KwP) return make_perm(std::move(body));
        return make_forb(std::move(body));
      }
      case Tok::LParen: {
        cur_ = lex_.next();
        FormulaPtr f = quantified();
        eat(Tok::RParen);
        return f;
      }
      case Tok::Ident: {
        std::string pred = cur_.text;
        cur_ = lex_.next();
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
          eat(Tok::RParen);
        }
        return make_atom(std::move(pred), std::move(args));
      }
      default:
        fail({"'!'", "'[]'", "'<>'", "'O'", "'P'", "'Forb'", "'('",
              "identifier"});
    }
  }

  Term term() {
    if (cur_.kind == Tok::Ident) {
      Term t = Term::var(cur_.text);
      cur_ = lex_.next();
      return t;
    }
    if (cur_.kind == Tok::Constant) {
      Term t = Term::constant(cur_.text);
      cur_ = lex_.next();
      return t;
    }
    fail({"identifier", "constant"});
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  return Parser(text).parse();
}

std::vector<std::pair<int, FormulaPtr>> parse_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open formula file: " + path);
  std::vector<std::pair<int, FormulaPtr>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) continue;
    try {
      out.emplace_back(lineno, parse_formula(line));
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.column(), e.found(), e.expected());
    }
  }
  return out;
}

}  // namespace dtl
