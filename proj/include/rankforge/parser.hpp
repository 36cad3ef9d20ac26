/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <string>

#include "rankforge/program.hpp"

namespace rankforge {

// Syntax or semantic problem in program text; line/column are 1-based.
struct parse_error : error {
  parse_error(const std::string& what, int line, int column);
  int line;
  int column;
};

// Parses a program of the form
//
//   vars: q y;             # declaration order fixes the variable order
//   stem: y == 1;          # optional, over unprimed variables only
//   loop: q > 0 && q' == q - y && y' == y + 1;
//
// Formulas combine atoms with && || ! and parentheses; atoms compare two
// linear expressions with < <= == >= >; literals are exact rationals
// (p or p/q); "true" and "false" are atoms; "#" comments to end of line.
// Stem and loop are normalized to disjunctions of {<=, <}-conjunctions.
lasso_program parse_program(const std::string& text);

}  // namespace rankforge
