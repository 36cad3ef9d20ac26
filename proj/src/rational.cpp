/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/rational.hpp"

#include <cctype>
#include <ostream>

namespace rankforge {

rational::rational(long num, long den) {
  if (den == 0) throw error("rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

rational rational::parse(const std::string& text) {
  // mpq_class's own parser accepts whitespace and leading '+'; we want the
  // exact surface grammar of the input language, so validate by hand.
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t num_end = digits(i);
  if (num_end == i) throw error("rational: cannot parse '" + text + "'");
  i = num_end;
  if (i < text.size()) {
    if (text[i] != '/') throw error("rational: cannot parse '" + text + "'");
    std::size_t den_end = digits(i + 1);
    if (den_end == i + 1 || den_end != text.size())
      throw error("rational: cannot parse '" + text + "'");
    mpz_class den(text.substr(i + 1), 10);
    if (den == 0) throw error("rational: zero denominator in '" + text + "'");
  } else if (num_end != text.size()) {
    throw error("rational: cannot parse '" + text + "'");
  }
  rational r;
  // base 10 always: mpq_class's default base 0 reads leading zeros as octal
  r.q_ = mpq_class(text, 10);
  r.q_.canonicalize();
  return r;
}

mpz_class rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return q;
}

mpz_class rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return q;
}

rational rational::operator-() const {
  rational r;
  r.q_ = -q_;
  return r;
}

rational& rational::operator/=(const rational& o) {
  if (o.is_zero()) throw error("rational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::string rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const rational& r) {
  return os << r.str();
}

}  // namespace rankforge
