/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankforge/affine.hpp"

namespace rankforge {

// Relation of an atom's affine expression against zero.
enum class rel_op { le, lt };

// name -> name', the primed (post-state) copy of a program variable.
std::string primed(const std::string& name);
bool is_primed(const std::string& name);
std::string unprime(const std::string& name);

// expr <= 0 or expr < 0 over (possibly primed) program variables.
struct linear_atom {
  affine_expr expr;
  rel_op rel = rel_op::le;

  bool holds(const std::map<std::string, rational>& valuation) const;
  bool uses_primed() const;
  std::string str() const;

  friend bool operator==(const linear_atom& a, const linear_atom& b) {
    return a.rel == b.rel && a.expr == b.expr;
  }
};

// Conjunction of atoms; empty means true.
using guard = std::vector<linear_atom>;

bool holds(const guard& g, const std::map<std::string, rational>& valuation);
std::string guard_str(const guard& g);

// A lasso: stem predicate over x (disjunction of guards) entered once,
// then a loop predicate over x and x' taken forever. A plain loop program
// is the special case where the stem is the single empty guard.
struct lasso_program {
  std::vector<std::string> vars;  // declaration order
  std::vector<guard> stem;        // disjunction; {{}} = true
  std::vector<guard> loop;        // disjunction, never empty

  bool has_nontrivial_stem() const;

  // Universal variable order used throughout: vars then their primed copies.
  std::vector<std::string> transition_vars() const;

  std::string str() const;
};

}  // namespace rankforge
