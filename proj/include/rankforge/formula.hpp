/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <cstddef>
#include <vector>

#include "rankforge/program.hpp"

namespace rankforge {

// Boolean combination of linear atoms, as produced by the parser.
struct formula {
  enum class kind { atom, conj, disj, neg };

  kind k = kind::conj;
  linear_atom at;              // valid when k == atom
  std::vector<formula> kids;   // conj/disj children; neg has exactly one

  static formula atom(linear_atom a);
  static formula conj(std::vector<formula> kids);
  static formula disj(std::vector<formula> kids);
  static formula neg(formula f);

  bool holds(const std::map<std::string, rational>& valuation) const;
};

// Negation of a single atom stays a single atom with flipped strictness:
// !(e <= 0) is -e < 0 and !(e < 0) is -e <= 0.
linear_atom negate_atom(const linear_atom& a);

// Disjunctive normal form: negations pushed to atoms, then distributed.
// Syntactically equal disjuncts are emitted once. Throws when the result
// would exceed max_disjuncts.
std::vector<guard> to_dnf(const formula& f, std::size_t max_disjuncts = 4096);

}  // namespace rankforge
