/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace rankforge {

// Base class for everything this library throws.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational number. Always stored reduced with a positive denominator;
// the wrapper exists so no caller ever observes an uncanonical value.
class rational {
public:
  rational() : q_(0) {}
  rational(long n) : q_(n) {}
  rational(const mpz_class& n) : q_(n) {}
  rational(long num, long den);

  // Accepts "p", "-p", "p/q" with q > 0. Throws rankforge::error otherwise.
  static rational parse(const std::string& text);

  const mpz_class num() const { return q_.get_num(); }
  const mpz_class den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  // Least integer >= value / greatest integer <= value.
  mpz_class ceil() const;
  mpz_class floor() const;

  rational operator-() const;
  rational& operator+=(const rational& o) { q_ += o.q_; return *this; }
  rational& operator-=(const rational& o) { q_ -= o.q_; return *this; }
  rational& operator*=(const rational& o) { q_ *= o.q_; return *this; }
  rational& operator/=(const rational& o);

  friend rational operator+(rational a, const rational& b) { return a += b; }
  friend rational operator-(rational a, const rational& b) { return a -= b; }
  friend rational operator*(rational a, const rational& b) { return a *= b; }
  friend rational operator/(rational a, const rational& b) { return a /= b; }

  friend bool operator==(const rational& a, const rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  // "p" when integral, "p/q" otherwise; the sign sits on the numerator.
  std::string str() const;

private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const rational& r);

}  // namespace rankforge
