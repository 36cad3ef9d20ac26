/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rankforge {

formula formula::atom(linear_atom a) {
  formula f;
  f.k = kind::atom;
  f.at = std::move(a);
  return f;
}

formula formula::conj(std::vector<formula> kids) {
  formula f;
  f.k = kind::conj;
  f.kids = std::move(kids);
  return f;
}

formula formula::disj(std::vector<formula> kids) {
  formula f;
  f.k = kind::disj;
  f.kids = std::move(kids);
  return f;
}

formula formula::neg(formula inner) {
  formula f;
  f.k = kind::neg;
  f.kids.push_back(std::move(inner));
  return f;
}

bool formula::holds(const std::map<std::string, rational>& valuation) const {
  switch (k) {
    case kind::atom:
      return at.holds(valuation);
    case kind::conj:
      for (const auto& kid : kids)
        if (!kid.holds(valuation)) return false;
      return true;
    case kind::disj:
      for (const auto& kid : kids)
        if (kid.holds(valuation)) return true;
      return false;
    case kind::neg:
      return !kids[0].holds(valuation);
  }
  return false;
}

linear_atom negate_atom(const linear_atom& a) {
  linear_atom out;
  out.expr = -a.expr;
  out.rel = a.rel == rel_op::le ? rel_op::lt : rel_op::le;
  return out;
}

namespace {

formula to_nnf(const formula& f, bool negated) {
  switch (f.k) {
    case formula::kind::atom:
      return formula::atom(negated ? negate_atom(f.at) : f.at);
    case formula::kind::neg:
      return to_nnf(f.kids[0], !negated);
    case formula::kind::conj:
    case formula::kind::disj: {
      bool make_conj = (f.k == formula::kind::conj) != negated;
      std::vector<formula> kids;
      kids.reserve(f.kids.size());
      for (const auto& kid : f.kids) kids.push_back(to_nnf(kid, negated));
      return make_conj ? formula::conj(std::move(kids)) : formula::disj(std::move(kids));
    }
  }
  throw error("formula: corrupt node");
}

std::string guard_key(const guard& g) {
  std::vector<std::string> parts;
  parts.reserve(g.size());
  for (const auto& a : g) parts.push_back(a.str());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::ostringstream os;
  for (const auto& p : parts) os << p << ";";
  return os.str();
}

std::vector<guard> dnf_rec(const formula& f, std::size_t cap) {
  switch (f.k) {
    case formula::kind::atom:
      return {{f.at}};
    case formula::kind::disj: {
      std::vector<guard> out;
      for (const auto& kid : f.kids) {
        auto sub = dnf_rec(kid, cap);
        out.insert(out.end(), sub.begin(), sub.end());
        if (out.size() > cap) throw error("to_dnf: disjunct limit exceeded");
      }
      return out;
    }
    case formula::kind::conj: {
      std::vector<guard> out = {{}};
      for (const auto& kid : f.kids) {
        auto sub = dnf_rec(kid, cap);
        std::vector<guard> next;
        if (out.size() * sub.size() > cap) throw error("to_dnf: disjunct limit exceeded");
        next.reserve(out.size() * sub.size());
        for (const auto& left : out)
          for (const auto& right : sub) {
            guard g = left;
            g.insert(g.end(), right.begin(), right.end());
            next.push_back(std::move(g));
          }
        out = std::move(next);
      }
      return out;
    }
    case formula::kind::neg:
      throw error("to_dnf: unexpected negation after normalization");
  }
  throw error("formula: corrupt node");
}

}  // namespace

std::vector<guard> to_dnf(const formula& f, std::size_t max_disjuncts) {
  auto raw = dnf_rec(to_nnf(f, false), max_disjuncts);
  std::vector<guard> out;
  std::set<std::string> seen;
  for (auto& g : raw)
    if (seen.insert(guard_key(g)).second) out.push_back(std::move(g));
  return out;
}

}  // namespace rankforge
