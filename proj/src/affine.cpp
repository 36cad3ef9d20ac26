/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/affine.hpp"

#include <sstream>

namespace rankforge {

affine_expr affine_expr::var(const std::string& name, rational coeff) {
  affine_expr e;
  e.set_coeff(name, std::move(coeff));
  return e;
}

rational affine_expr::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? rational(0) : it->second;
}

void affine_expr::set_coeff(const std::string& name, rational c) {
  if (c.is_zero())
    coeffs_.erase(name);
  else
    coeffs_[name] = std::move(c);
}

void affine_expr::add_term(const std::string& name, const rational& c) {
  set_coeff(name, coeff(name) + c);
}

affine_expr& affine_expr::operator+=(const affine_expr& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, c);
  constant_ += o.constant_;
  return *this;
}

affine_expr& affine_expr::operator-=(const affine_expr& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
  constant_ -= o.constant_;
  return *this;
}

affine_expr& affine_expr::operator*=(const rational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    constant_ = rational(0);
    return *this;
  }
  for (auto& [v, cv] : coeffs_) cv *= c;
  constant_ *= c;
  return *this;
}

affine_expr affine_expr::operator-() const {
  affine_expr e = *this;
  e *= rational(-1);
  return e;
}

rational affine_expr::evaluate(const std::map<std::string, rational>& valuation) const {
  rational r = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = valuation.find(v);
    if (it == valuation.end()) throw error("affine_expr: no value for variable '" + v + "'");
    r += c * it->second;
  }
  return r;
}

affine_expr affine_expr::substitute(const std::map<std::string, affine_expr>& by) const {
  affine_expr r(constant_);
  for (const auto& [v, c] : coeffs_) {
    auto it = by.find(v);
    if (it == by.end())
      r.add_term(v, c);
    else
      r += it->second * c;
  }
  return r;
}

std::string affine_expr::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (first) {
      if (c == rational(1)) {
        os << v;
      } else if (c == rational(-1)) {
        os << "-" << v;
      } else {
        os << c.str() << "*" << v;
      }
      first = false;
      continue;
    }
    rational a = c;
    os << (a.sign() < 0 ? " - " : " + ");
    if (a.sign() < 0) a = -a;
    if (a == rational(1))
      os << v;
    else
      os << a.str() << "*" << v;
  }
  if (!constant_.is_zero()) {
    if (first) {
      os << constant_.str();
    } else {
      rational a = constant_;
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
      os << a.str();
    }
  }
  return os.str();
}

}  // namespace rankforge
