/* SPDX-License-Identifier: Apache-2.0 */
#pragma once
#include <string>
#include <vector>

#include "rankforge/program.hpp"
#include "rankforge/solver.hpp"
#include "rankforge/templates.hpp"

namespace rankforge {

// Independent certificate check. Substitutes nu into the template and asserts
// the negation of each required implication in QF_LRA; every query must come
// back unsat:
//   per loop disjunct i:  loop_i and all psi(x) and not nu(T)
//   per (stem s, psi):    stem_s and not psi(x)
//   per (loop r, psi):    psi(x) and loop_r and not psi(x')
// Unknown verdicts count as failure. When failure_reason is non-null it
// receives a description of the first failing query.
bool verify_assignment(const lasso_program& prog, const ranking_template& tmpl,
                       const assignment& nu, const std::vector<linear_atom>& invariants,
                       const solver_config& config, std::string* failure_reason = nullptr);

}  // namespace rankforge
