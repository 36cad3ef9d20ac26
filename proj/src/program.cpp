/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/program.hpp"

#include <sstream>

namespace rankforge {

std::string primed(const std::string& name) { return name + "'"; }

bool is_primed(const std::string& name) {
  return !name.empty() && name.back() == '\'';
}

std::string unprime(const std::string& name) {
  if (!is_primed(name)) return name;
  return name.substr(0, name.size() - 1);
}

bool linear_atom::holds(const std::map<std::string, rational>& valuation) const {
  rational v = expr.evaluate(valuation);
  return rel == rel_op::le ? v.sign() <= 0 : v.sign() < 0;
}

bool linear_atom::uses_primed() const {
  for (const auto& [v, c] : expr.coeffs())
    if (is_primed(v)) return true;
  return false;
}

std::string linear_atom::str() const {
  // expr = pos - neg with positive parts only, so "pos rel neg" needs no
  // leading unary minus and re-parses to the identical atom.
  affine_expr pos, neg;
  for (const auto& [v, c] : expr.coeffs()) {
    if (c.sign() > 0)
      pos.set_coeff(v, c);
    else
      neg.set_coeff(v, -c);
  }
  if (expr.constant().sign() > 0)
    pos.add_constant(expr.constant());
  else
    neg.add_constant(-expr.constant());
  return pos.str() + (rel == rel_op::le ? " <= " : " < ") + neg.str();
}

bool holds(const guard& g, const std::map<std::string, rational>& valuation) {
  for (const auto& a : g)
    if (!a.holds(valuation)) return false;
  return true;
}

std::string guard_str(const guard& g) {
  if (g.empty()) return "true";
  std::ostringstream os;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << " && ";
    os << g[i].str();
  }
  return os.str();
}

bool lasso_program::has_nontrivial_stem() const {
  return !(stem.size() == 1 && stem[0].empty());
}

std::vector<std::string> lasso_program::transition_vars() const {
  std::vector<std::string> out = vars;
  for (const auto& v : vars) out.push_back(primed(v));
  return out;
}

std::string lasso_program::str() const {
  std::ostringstream os;
  os << "vars:";
  for (const auto& v : vars) os << " " << v;
  os << ";\n";
  auto dump = [&](const char* label, const std::vector<guard>& disjuncts) {
    os << label << ":";
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
      os << (i ? "\n  || " : " ");
      os << "(" << guard_str(disjuncts[i]) << ")";
    }
    os << ";\n";
  };
  if (has_nontrivial_stem()) dump("stem", stem);
  dump("loop", loop);
  return os.str();
}

}  // namespace rankforge
