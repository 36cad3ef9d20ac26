/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace rankforge {

// Ordinal below w^w in Cantor normal form: sum of w^e * c with strictly
// descending natural exponents and positive integer coefficients. The
// empty sum is 0. Addition and multiplication are the usual ordinal
// operations (non-commutative); natural_sum is the Hessenberg sum.
class ordinal {
public:
  ordinal() = default;
  static ordinal from_integer(const mpz_class& n);
  static ordinal omega_power(unsigned exponent, mpz_class coeff = 1);
  static ordinal omega() { return omega_power(1); }

  const std::vector<std::pair<unsigned, mpz_class>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend ordinal operator+(const ordinal& a, const ordinal& b);
  friend ordinal operator*(const ordinal& a, const ordinal& b);
  friend ordinal natural_sum(const ordinal& a, const ordinal& b);

  friend bool operator==(const ordinal& a, const ordinal& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const ordinal& a, const ordinal& b);

  // "w^2*3 + w + 2"; "0" for zero.
  std::string str() const;

private:
  std::vector<std::pair<unsigned, mpz_class>> terms_;
};

}  // namespace rankforge
