/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/ordinal.hpp"

#include <sstream>

#include "rankforge/rational.hpp"

namespace rankforge {

ordinal ordinal::from_integer(const mpz_class& n) {
  if (n < 0) throw error("ordinal: negative integer");
  ordinal o;
  if (n > 0) o.terms_.emplace_back(0u, n);
  return o;
}

ordinal ordinal::omega_power(unsigned exponent, mpz_class coeff) {
  if (coeff < 0) throw error("ordinal: negative coefficient");
  ordinal o;
  if (coeff > 0) o.terms_.emplace_back(exponent, std::move(coeff));
  return o;
}

ordinal operator+(const ordinal& a, const ordinal& b) {
  if (b.is_zero()) return a;
  unsigned lead = b.terms_.front().first;
  ordinal out;
  // a's terms below b's leading exponent are absorbed.
  for (const auto& t : a.terms_) {
    if (t.first > lead) out.terms_.push_back(t);
  }
  out.terms_.push_back(b.terms_.front());
  for (const auto& t : a.terms_) {
    if (t.first == lead) {
      out.terms_.back().second += t.second;
      break;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
  return out;
}

ordinal operator*(const ordinal& a, const ordinal& b) {
  ordinal out;
  if (a.is_zero()) return out;
  for (const auto& [e, d] : b.terms_) {
    ordinal part;
    if (e > 0) {
      // a * w^e*d = w^(e1+e)*d where e1 is a's leading exponent.
      part.terms_.emplace_back(a.terms_.front().first + e, d);
    } else {
      // a * d scales a's leading coefficient and keeps the tail.
      part.terms_ = a.terms_;
      part.terms_.front().second *= d;
    }
    out = out + part;
  }
  return out;
}

ordinal natural_sum(const ordinal& a, const ordinal& b) {
  ordinal out;
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() ||
        (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      out.terms_.emplace_back(a.terms_[i].first, a.terms_[i].second + b.terms_[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const ordinal& a, const ordinal& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].first != b.terms_[i].first)
      return a.terms_[i].first <=> b.terms_[i].first;
    int c = cmp(a.terms_[i].second, b.terms_[i].second);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string ordinal::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << c.get_str();
      continue;
    }
    os << "w";
    if (e > 1) os << "^" << e;
    if (c != 1) os << "*" << c.get_str();
  }
  return os.str();
}

}  // namespace rankforge
