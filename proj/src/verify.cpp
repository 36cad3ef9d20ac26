/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/verify.hpp"

#include <sstream>

namespace rankforge {

namespace {

formula guard_formula(const guard& g) {
  std::vector<formula> kids;
  kids.reserve(g.size());
  for (const auto& a : g) kids.push_back(formula::atom(a));
  return formula::conj(std::move(kids));
}

linear_atom prime_atom(const linear_atom& a) {
  affine_expr e(a.expr.constant());
  for (const auto& [v, c] : a.expr.coeffs()) e.set_coeff(primed(v), c);
  return {e, a.rel};
}

bool query_unsat(const lasso_program& prog, const std::vector<formula>& asserts,
                 const solver_config& config, const std::string& what,
                 std::string* failure_reason) {
  std::string script = emit_formula_script(prog.vars, asserts);
  solver_verdict v = run_solver(script, config);
  if (v.k == solver_verdict::kind::unsat) return true;
  if (failure_reason) {
    std::ostringstream os;
    os << what << ": ";
    if (v.k == solver_verdict::kind::sat)
      os << "counterexample state exists";
    else
      os << "solver verdict unknown (" << v.reason << ")";
    *failure_reason = os.str();
  }
  return false;
}

}  // namespace

bool verify_assignment(const lasso_program& prog, const ranking_template& tmpl,
                       const assignment& nu, const std::vector<linear_atom>& invariants,
                       const solver_config& config, std::string* failure_reason) {
  formula inst = instantiate(tmpl, prog.vars, nu);

  for (std::size_t i = 0; i < prog.loop.size(); ++i) {
    std::vector<formula> asserts;
    asserts.push_back(guard_formula(prog.loop[i]));
    for (const auto& psi : invariants) asserts.push_back(formula::atom(psi));
    asserts.push_back(formula::neg(inst));
    std::ostringstream what;
    what << "loop disjunct " << i + 1 << " does not imply the instantiated template";
    if (!query_unsat(prog, asserts, config, what.str(), failure_reason)) return false;
  }

  for (std::size_t s = 0; s < prog.stem.size(); ++s) {
    for (std::size_t j = 0; j < invariants.size(); ++j) {
      std::vector<formula> asserts;
      asserts.push_back(guard_formula(prog.stem[s]));
      asserts.push_back(formula::neg(formula::atom(invariants[j])));
      std::ostringstream what;
      what << "stem disjunct " << s + 1 << " does not establish invariant " << j + 1;
      if (!query_unsat(prog, asserts, config, what.str(), failure_reason)) return false;
    }
  }

  for (std::size_t r = 0; r < prog.loop.size(); ++r) {
    for (std::size_t j = 0; j < invariants.size(); ++j) {
      std::vector<formula> asserts;
      asserts.push_back(formula::atom(invariants[j]));
      asserts.push_back(guard_formula(prog.loop[r]));
      asserts.push_back(formula::neg(formula::atom(prime_atom(invariants[j]))));
      std::ostringstream what;
      what << "loop disjunct " << r + 1 << " does not preserve invariant " << j + 1;
      if (!query_unsat(prog, asserts, config, what.str(), failure_reason)) return false;
    }
  }

  return true;
}

}  // namespace rankforge
