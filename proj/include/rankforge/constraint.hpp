/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankforge/program.hpp"
#include "rankforge/templates.hpp"

namespace rankforge {

// Polynomial over named unknowns, kept canonical: factor lists sorted,
// zero coefficients dropped. Total degree stays <= 2 here because every
// product is a Motzkin multiplier times an unknown-affine row entry.
class polynomial {
public:
  polynomial() = default;
  explicit polynomial(const rational& c) { add_term(c, {}); }

  void add_term(rational coeff, std::vector<std::string> factors);
  void add(const polynomial& o);

  // Adds multiplier * e, where e is affine over unknowns.
  void add_scaled(const std::string& multiplier, const affine_expr& e);

  const std::map<std::vector<std::string>, rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;

  std::string str() const;

private:
  std::map<std::vector<std::string>, rational> terms_;
};

enum class poly_rel { eq, le, lt, gt, ge };

// lhs rel 0
struct poly_atom {
  polynomial lhs;
  poly_rel rel = poly_rel::eq;
  std::string str() const;
};

// Conjunction of atoms and of disjunctions of atoms; this is all the
// structure the transformation ever produces.
struct poly_clause {
  std::vector<poly_atom> alternatives;  // disjunction; size 1 = plain atom
};

enum class unknown_role { parameter, fun_coeff, inv_coeff, mult_nonstrict, mult_strict };

struct unknown {
  std::string name;
  unknown_role role = unknown_role::parameter;
};

// One supporting-invariant template psi(x) = sum coeff*x + offset rel 0,
// attached to the (disjunct, clause) system it strengthens.
struct invariant_info {
  std::size_t disjunct = 0;  // 1-based loop disjunct index i
  std::size_t clause = 0;    // 1-based template clause index j
  std::size_t index = 0;     // 1-based invariant index l
  std::map<std::string, std::string> coeff_names;  // program var -> unknown
  std::string offset_name;
  bool strict = false;  // psi > 0 instead of psi >= 0
};

struct exists_constraint {
  std::vector<unknown> unknowns;       // declaration order
  std::vector<poly_clause> clauses;    // big conjunction
  std::vector<invariant_info> invariants;

  std::string str() const;  // one clause per line, for debugging
};

// One row "coeffs * z <= bound" (or < for strict rows) of a linear system
// whose entries are affine in the unknowns.
struct lin_row {
  std::map<std::string, affine_expr> coeffs;  // universal variable -> entry
  affine_expr bound;
};

// Infeasibility certificate for { nonstrict rows, strict rows } over the
// given universally quantified variables: multipliers lam_<tag>_<r> and
// mu_<tag>_<r> (1-based r), nonnegative, cancelling every variable column,
// with the combined bound nonpositive and either the nonstrict bound
// negative or some strict multiplier positive. Appends the multipliers to
// out.unknowns and the atoms to out.clauses.
void motzkin_transform(const std::vector<lin_row>& nonstrict,
                       const std::vector<lin_row>& strict,
                       const std::vector<std::string>& universal_vars,
                       const std::string& tag, exists_constraint& out);

// Existential constraint equivalent to: every pair (loop disjunct i,
// template clause j) yields an infeasible system "disjunct i and the
// negation of every atom of clause j".
exists_constraint generate_synthesis_constraint(const std::vector<guard>& loop,
                                                const cnf_template& tmpl,
                                                const std::vector<std::string>& vars);

struct lasso_options {
  std::size_t invariants = 0;      // m per (i, j) system
  bool strict_invariants = false;  // psi > 0 instead of psi >= 0
  bool nondecreasing = false;      // also require psi's function nondecreasing
};

// Lasso variant: each (i, j) system assumes m invariant templates
// psi_{i,j,l}(x); every psi must hold after the stem and be preserved by
// every loop disjunct. m = 0 is exactly generate_synthesis_constraint.
exists_constraint generate_lasso_constraint(const lasso_program& prog,
                                            const cnf_template& tmpl,
                                            const lasso_options& opts);

}  // namespace rankforge
