/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "rankforge/formula.hpp"

namespace rankforge {

namespace {

std::string at_position(const std::string& what, int line, int column) {
  std::ostringstream os;
  os << what << " at line " << line << ", column " << column;
  return os.str();
}

struct token {
  enum class kind { ident, integer, sym, end };
  kind k = kind::end;
  std::string text;
  int line = 1;
  int col = 1;
};

class lexer {
public:
  explicit lexer(const std::string& text) : text_(text) { advance(); }

  const token& peek() const { return tok_; }

  token take() {
    token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_blank();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.k = token::kind::end;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        bump();
      if (pos_ < text_.size() && text_[pos_] == '\'') bump();
      tok_.k = token::kind::ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
      tok_.k = token::kind::integer;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    tok_.k = token::kind::sym;
    auto two = [&](char second) {
      return pos_ + 1 < text_.size() && text_[pos_ + 1] == second;
    };
    switch (c) {
      case '&':
        if (!two('&')) throw parse_error("expected '&&'", line_, col_);
        bump(); bump();
        tok_.text = "&&";
        return;
      case '|':
        if (!two('|')) throw parse_error("expected '||'", line_, col_);
        bump(); bump();
        tok_.text = "||";
        return;
      case '=':
        if (!two('=')) throw parse_error("expected '=='", line_, col_);
        bump(); bump();
        tok_.text = "==";
        return;
      case '<':
      case '>':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          tok_.text = std::string(1, c) + "=";
        } else {
          tok_.text = std::string(1, c);
        }
        return;
      case ':': case ';': case '!': case '(': case ')':
      case '+': case '-': case '*': case '/':
        bump();
        tok_.text = std::string(1, c);
        return;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  token tok_;
};

const std::set<std::string> kReserved = {"vars", "stem", "loop", "true", "false"};

class program_parser {
public:
  explicit program_parser(const std::string& text) : lex_(text) {}

  lasso_program run() {
    lasso_program prog;
    expect_keyword("vars");
    expect_sym(":");
    while (lex_.peek().k == token::kind::ident) {
      token t = lex_.take();
      if (kReserved.count(t.text))
        throw parse_error("reserved word '" + t.text + "' cannot name a variable", t.line, t.col);
      if (is_primed(t.text))
        throw parse_error("declared variable may not be primed", t.line, t.col);
      if (!declared_.insert(t.text).second)
        throw parse_error("duplicate variable '" + t.text + "'", t.line, t.col);
      prog.vars.push_back(t.text);
    }
    if (prog.vars.empty()) {
      const token& t = lex_.peek();
      throw parse_error("expected at least one variable", t.line, t.col);
    }
    expect_sym(";");

    if (lex_.peek().k == token::kind::ident && lex_.peek().text == "stem") {
      lex_.take();
      expect_sym(":");
      formula f = parse_formula(false);
      expect_sym(";");
      prog.stem = to_dnf(f);
    } else {
      prog.stem = {{}};
    }

    expect_keyword("loop");
    expect_sym(":");
    formula f = parse_formula(true);
    expect_sym(";");
    prog.loop = to_dnf(f);

    const token& t = lex_.peek();
    if (t.k != token::kind::end)
      throw parse_error("trailing input after program", t.line, t.col);
    return prog;
  }

private:
  void expect_keyword(const std::string& kw) {
    token t = lex_.take();
    if (t.k != token::kind::ident || t.text != kw)
      throw parse_error("expected '" + kw + "'", t.line, t.col);
  }

  void expect_sym(const std::string& s) {
    token t = lex_.take();
    if (t.k != token::kind::sym || t.text != s)
      throw parse_error("expected '" + s + "'", t.line, t.col);
  }

  formula parse_formula(bool allow_primed) {
    formula left = parse_conj(allow_primed);
    std::vector<formula> kids;
    kids.push_back(std::move(left));
    while (lex_.peek().k == token::kind::sym && lex_.peek().text == "||") {
      lex_.take();
      kids.push_back(parse_conj(allow_primed));
    }
    if (kids.size() == 1) return std::move(kids[0]);
    return formula::disj(std::move(kids));
  }

  formula parse_conj(bool allow_primed) {
    std::vector<formula> kids;
    kids.push_back(parse_unit(allow_primed));
    while (lex_.peek().k == token::kind::sym && lex_.peek().text == "&&") {
      lex_.take();
      kids.push_back(parse_unit(allow_primed));
    }
    if (kids.size() == 1) return std::move(kids[0]);
    return formula::conj(std::move(kids));
  }

  formula parse_unit(bool allow_primed) {
    const token& t = lex_.peek();
    if (t.k == token::kind::sym && t.text == "!") {
      lex_.take();
      return formula::neg(parse_unit(allow_primed));
    }
    if (t.k == token::kind::sym && t.text == "(") {
      lex_.take();
      formula f = parse_formula(allow_primed);
      expect_sym(")");
      return f;
    }
    if (t.k == token::kind::ident && t.text == "true") {
      lex_.take();
      return formula::conj({});
    }
    if (t.k == token::kind::ident && t.text == "false") {
      lex_.take();
      linear_atom a;
      a.rel = rel_op::lt;  // 0 < 0
      return formula::atom(std::move(a));
    }
    return parse_atom(allow_primed);
  }

  formula parse_atom(bool allow_primed) {
    affine_expr lhs = parse_linexp(allow_primed);
    token t = lex_.take();
    if (t.k != token::kind::sym ||
        (t.text != "<" && t.text != "<=" && t.text != "==" && t.text != ">=" && t.text != ">"))
      throw parse_error("expected comparison operator", t.line, t.col);
    affine_expr rhs = parse_linexp(allow_primed);
    affine_expr diff = lhs - rhs;
    auto atom = [](affine_expr e, rel_op rel) {
      linear_atom a;
      a.expr = std::move(e);
      a.rel = rel;
      return formula::atom(std::move(a));
    };
    if (t.text == "<") return atom(std::move(diff), rel_op::lt);
    if (t.text == "<=") return atom(std::move(diff), rel_op::le);
    if (t.text == ">") return atom(-diff, rel_op::lt);
    if (t.text == ">=") return atom(-diff, rel_op::le);
    std::vector<formula> both;
    both.push_back(atom(diff, rel_op::le));
    both.push_back(atom(-diff, rel_op::le));
    return formula::conj(std::move(both));
  }

  affine_expr parse_linexp(bool allow_primed) {
    affine_expr e = parse_term(allow_primed);
    while (lex_.peek().k == token::kind::sym &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      bool minus = lex_.take().text == "-";
      affine_expr t = parse_term(allow_primed);
      if (minus)
        e -= t;
      else
        e += t;
    }
    return e;
  }

  affine_expr parse_term(bool allow_primed) {
    const token& t = lex_.peek();
    if (t.k == token::kind::ident) return affine_expr::var(check_var(lex_.take(), allow_primed));
    bool negative = false;
    if (t.k == token::kind::sym && t.text == "-") {
      lex_.take();
      negative = true;
    }
    token num = lex_.take();
    if (num.k != token::kind::integer)
      throw parse_error("expected number or variable", num.line, num.col);
    std::string lit = (negative ? "-" : "") + num.text;
    if (lex_.peek().k == token::kind::sym && lex_.peek().text == "/") {
      lex_.take();
      token den = lex_.take();
      if (den.k != token::kind::integer)
        throw parse_error("expected denominator", den.line, den.col);
      if (mpz_class(den.text, 10) == 0)
        throw parse_error("zero denominator", den.line, den.col);
      lit += "/" + den.text;
    }
    rational coeff = rational::parse(lit);
    if (lex_.peek().k == token::kind::sym && lex_.peek().text == "*") {
      lex_.take();
      token v = lex_.take();
      if (v.k != token::kind::ident || v.text == "true" || v.text == "false")
        throw parse_error("expected variable after '*'", v.line, v.col);
      return affine_expr::var(check_var(std::move(v), allow_primed), coeff);
    }
    return affine_expr(coeff);
  }

  std::string check_var(token t, bool allow_primed) {
    std::string base = unprime(t.text);
    if (is_primed(t.text) && !allow_primed)
      throw parse_error("primed variable '" + t.text + "' not allowed here", t.line, t.col);
    if (kReserved.count(base))
      throw parse_error("reserved word '" + base + "'", t.line, t.col);
    if (!declared_.count(base))
      throw parse_error("undeclared variable '" + base + "'", t.line, t.col);
    return t.text;
  }

  lexer lex_;
  std::set<std::string> declared_;
};

}  // namespace

parse_error::parse_error(const std::string& what, int l, int c)
    : error(at_position(what, l, c)), line(l), column(c) {}

lasso_program parse_program(const std::string& text) {
  program_parser p(text);
  return p.run();
}

}  // namespace rankforge
