/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankforge/constraint.hpp"
#include "rankforge/formula.hpp"

namespace rankforge {

enum class smt_logic { qf_nra, qf_lra };

// SMT-LIB2 script for an existential constraint: set-logic, one
// declare-const per unknown in declaration order, one assert per clause,
// check-sat, and get-value over value_unknowns (omitted when empty).
// Byte-deterministic. QF_LRA rejects atoms of degree 2.
std::string emit_smtlib(const exists_constraint& c, smt_logic logic,
                        const std::vector<std::string>& value_unknowns);

// Exact rational literal: 2, (- 2), (/ 1 2), (- (/ 1 2)).
std::string smt_rational(const rational& r);

// Program-variable name as an SMT symbol: q -> v!q, q' -> v!q!p.
std::string smt_state_var(const std::string& var);

// QF_LRA script asserting each formula (over program variables, primed
// allowed); declares exactly the variables in vars and their primes.
std::string emit_formula_script(const std::vector<std::string>& vars,
                                const std::vector<formula>& asserts,
                                bool get_primed_values = false);

// Parsed s-expression: either an atom token or a list.
struct sexpr {
  std::string atom;         // nonempty iff leaf
  std::vector<sexpr> kids;  // nonempty only for lists
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

std::vector<sexpr> parse_sexprs(const std::string& text);

// Value of a get-value pair: integer, decimal (exact), (/ p q), (- v),
// recursively. Anything else (root-obj etc.) raises "unsupported model value".
rational parse_model_value(const sexpr& v);

// get-value response -> name/value map restricted to requested names;
// throws if a requested name is missing.
assignment parse_model(const std::string& text, const std::vector<std::string>& requested);

}  // namespace rankforge
