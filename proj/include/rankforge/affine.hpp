/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <string>

#include "rankforge/rational.hpp"

namespace rankforge {

// Affine expression sum_v c_v * v + k over named variables. Zero
// coefficients are never stored, so ==/iteration see a canonical form.
class affine_expr {
public:
  affine_expr() = default;
  explicit affine_expr(rational constant) : constant_(std::move(constant)) {}

  static affine_expr var(const std::string& name, rational coeff = rational(1));

  const std::map<std::string, rational>& coeffs() const { return coeffs_; }
  const rational& constant() const { return constant_; }
  rational coeff(const std::string& name) const;
  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }

  void set_coeff(const std::string& name, rational c);
  void add_term(const std::string& name, const rational& c);
  void add_constant(const rational& c) { constant_ += c; }

  affine_expr& operator+=(const affine_expr& o);
  affine_expr& operator-=(const affine_expr& o);
  affine_expr& operator*=(const rational& c);
  affine_expr operator-() const;

  friend affine_expr operator+(affine_expr a, const affine_expr& b) { return a += b; }
  friend affine_expr operator-(affine_expr a, const affine_expr& b) { return a -= b; }
  friend affine_expr operator*(affine_expr a, const rational& c) { return a *= c; }

  friend bool operator==(const affine_expr& a, const affine_expr& b) {
    return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
  }

  rational evaluate(const std::map<std::string, rational>& valuation) const;

  // Substitutes each variable by the expression the map assigns it;
  // unmapped variables stay themselves.
  affine_expr substitute(const std::map<std::string, affine_expr>& by) const;

  // Human-readable form, e.g. "q - y + 1/2"; "0" when empty.
  std::string str() const;

private:
  std::map<std::string, rational> coeffs_;
  rational constant_;
};

}  // namespace rankforge
