/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/smtlib.hpp"

#include <cctype>
#include <sstream>

namespace rankforge {

std::string smt_rational(const rational& r) {
  bool negative = r.sign() < 0;
  rational a = negative ? -r : r;
  std::string core;
  if (a.is_integer()) {
    core = a.num().get_str();
  } else {
    core = "(/ " + a.num().get_str() + " " + a.den().get_str() + ")";
  }
  return negative ? "(- " + core + ")" : core;
}

namespace {

std::string term_text(const std::vector<std::string>& factors, const rational& coeff) {
  if (factors.empty()) return smt_rational(coeff);
  std::ostringstream os;
  bool with_coeff = coeff != rational(1);
  if (factors.size() == 1 && !with_coeff) return factors[0];
  os << "(*";
  if (with_coeff) os << " " << smt_rational(coeff);
  for (const auto& f : factors) os << " " << f;
  os << ")";
  return os.str();
}

std::string sum_text(const polynomial& p) {
  if (p.terms().empty()) return "0";
  if (p.terms().size() == 1) {
    const auto& [fs, c] = *p.terms().begin();
    return term_text(fs, c);
  }
  std::ostringstream os;
  os << "(+";
  for (const auto& [fs, c] : p.terms()) os << " " << term_text(fs, c);
  os << ")";
  return os.str();
}

const char* rel_text(poly_rel r) {
  switch (r) {
    case poly_rel::eq: return "=";
    case poly_rel::le: return "<=";
    case poly_rel::lt: return "<";
    case poly_rel::gt: return ">";
    case poly_rel::ge: return ">=";
  }
  return "=";
}

std::string atom_text(const poly_atom& a) {
  std::ostringstream os;
  os << "(" << rel_text(a.rel) << " " << sum_text(a.lhs) << " 0)";
  return os.str();
}

}  // namespace

std::string emit_smtlib(const exists_constraint& c, smt_logic logic,
                        const std::vector<std::string>& value_unknowns) {
  std::ostringstream os;
  os << "(set-logic " << (logic == smt_logic::qf_nra ? "QF_NRA" : "QF_LRA") << ")\n";
  for (const auto& u : c.unknowns) os << "(declare-const " << u.name << " Real)\n";
  for (const auto& clause : c.clauses) {
    if (logic == smt_logic::qf_lra)
      for (const auto& a : clause.alternatives)
        if (a.lhs.degree() > 1)
          throw error("emit_smtlib: nonlinear atom under QF_LRA: " + a.str());
    os << "(assert ";
    if (clause.alternatives.size() == 1) {
      os << atom_text(clause.alternatives[0]);
    } else {
      os << "(or";
      for (const auto& a : clause.alternatives) os << " " << atom_text(a);
      os << ")";
    }
    os << ")\n";
  }
  os << "(check-sat)\n";
  if (!value_unknowns.empty()) {
    os << "(get-value (";
    for (std::size_t i = 0; i < value_unknowns.size(); ++i) {
      if (i) os << " ";
      os << value_unknowns[i];
    }
    os << "))\n";
  }
  return os.str();
}

std::string smt_state_var(const std::string& var) {
  if (is_primed(var)) return "v!" + unprime(var) + "!p";
  return "v!" + var;
}

namespace {

std::string affine_text(const affine_expr& e) {
  std::vector<std::string> parts;
  for (const auto& [v, c] : e.coeffs()) {
    if (c == rational(1))
      parts.push_back(smt_state_var(v));
    else
      parts.push_back("(* " + smt_rational(c) + " " + smt_state_var(v) + ")");
  }
  if (!e.constant().is_zero() || parts.empty()) parts.push_back(smt_rational(e.constant()));
  if (parts.size() == 1) return parts[0];
  std::ostringstream os;
  os << "(+";
  for (const auto& p : parts) os << " " << p;
  os << ")";
  return os.str();
}

std::string formula_text(const formula& f) {
  switch (f.k) {
    case formula::kind::atom: {
      std::ostringstream os;
      os << "(" << (f.at.rel == rel_op::le ? "<=" : "<") << " " << affine_text(f.at.expr)
         << " 0)";
      return os.str();
    }
    case formula::kind::neg:
      return "(not " + formula_text(f.kids[0]) + ")";
    case formula::kind::conj:
    case formula::kind::disj: {
      if (f.kids.empty()) return f.k == formula::kind::conj ? "true" : "false";
      if (f.kids.size() == 1) return formula_text(f.kids[0]);
      std::ostringstream os;
      os << (f.k == formula::kind::conj ? "(and" : "(or");
      for (const auto& kid : f.kids) os << " " << formula_text(kid);
      os << ")";
      return os.str();
    }
  }
  throw error("formula: corrupt node");
}

}  // namespace

std::string emit_formula_script(const std::vector<std::string>& vars,
                                const std::vector<formula>& asserts,
                                bool get_primed_values) {
  std::ostringstream os;
  os << "(set-logic QF_LRA)\n";
  for (const auto& v : vars) os << "(declare-const " << smt_state_var(v) << " Real)\n";
  for (const auto& v : vars) os << "(declare-const " << smt_state_var(primed(v)) << " Real)\n";
  for (const auto& f : asserts) os << "(assert " << formula_text(f) << ")\n";
  os << "(check-sat)\n";
  if (get_primed_values) {
    os << "(get-value (";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) os << " ";
      os << smt_state_var(primed(vars[i]));
    }
    os << "))\n";
  }
  return os.str();
}

namespace {

struct sexpr_reader {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return pos >= text.size();
  }

  sexpr read() {
    skip();
    if (pos >= text.size()) throw error("sexpr: unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      sexpr node;
      node.kids = {};
      for (;;) {
        skip();
        if (pos >= text.size()) throw error("sexpr: unbalanced parenthesis");
        if (text[pos] == ')') {
          ++pos;
          // An empty list stays a list; mark with empty atom and no kids is
          // ambiguous with default, so keep a sentinel kid-free list by
          // leaving atom empty. Callers never need empty lists here.
          return node;
        }
        node.kids.push_back(read());
      }
    }
    if (c == ')') throw error("sexpr: unexpected ')'");
    if (c == '"') {
      std::size_t start = pos++;
      while (pos < text.size() && text[pos] != '"') ++pos;
      if (pos >= text.size()) throw error("sexpr: unterminated string");
      ++pos;
      sexpr node;
      node.atom = text.substr(start, pos - start);
      return node;
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    sexpr node;
    node.atom = text.substr(start, pos - start);
    return node;
  }
};

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::vector<sexpr> parse_sexprs(const std::string& text) {
  sexpr_reader r{text};
  std::vector<sexpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

rational parse_model_value(const sexpr& v) {
  if (v.is_atom()) {
    const std::string& a = v.atom;
    auto dot = a.find('.');
    if (dot != std::string::npos) {
      // Exact decimal: d.ddd = (integer part joined with fraction digits)
      // over 10^k. Solvers print model reals like 1.5 or 0.0.
      std::size_t start = a[0] == '-' ? 1 : 0;
      if (!all_digits(a, start, dot) || !all_digits(a, dot + 1, a.size()))
        throw error("unsupported model value '" + a + "'");
      std::string digits = a.substr(0, dot) + a.substr(dot + 1);
      mpz_class num(digits, 10);  // base 0 would misread a leading zero as octal
      mpz_class den(1);
      for (std::size_t i = dot + 1; i < a.size(); ++i) den *= 10;
      rational r(num);
      return r / rational(den);
    }
    std::size_t start = a[0] == '-' ? 1 : 0;
    if (!all_digits(a, start, a.size())) throw error("unsupported model value '" + a + "'");
    return rational(mpz_class(a, 10));
  }
  if (!v.kids.empty() && v.kids[0].is_atom()) {
    const std::string& op = v.kids[0].atom;
    if (op == "-" && v.kids.size() == 2) return -parse_model_value(v.kids[1]);
    if (op == "/" && v.kids.size() == 3) {
      rational den = parse_model_value(v.kids[2]);
      if (den.is_zero()) throw error("unsupported model value: zero denominator");
      return parse_model_value(v.kids[1]) / den;
    }
  }
  throw error("unsupported model value");
}

assignment parse_model(const std::string& text, const std::vector<std::string>& requested) {
  auto roots = parse_sexprs(text);
  assignment out;
  // get-value responds with one list of (name value) pairs; be lenient and
  // scan every top-level list for such pairs.
  for (const auto& root : roots) {
    if (root.is_atom()) continue;
    for (const auto& pair : root.kids) {
      if (pair.is_atom() || pair.kids.size() != 2 || !pair.kids[0].is_atom()) continue;
      out[pair.kids[0].atom] = parse_model_value(pair.kids[1]);
    }
  }
  assignment filtered;
  for (const auto& name : requested) {
    auto it = out.find(name);
    if (it == out.end()) throw error("model missing value for '" + name + "'");
    filtered[name] = it->second;
  }
  return filtered;
}

}  // namespace rankforge
