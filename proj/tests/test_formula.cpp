/* SPDX-License-Identifier: Apache-2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rankforge/formula.hpp"

using namespace rankforge;

namespace {

const std::vector<std::string> kVars = {"x", "y"};

linear_atom make_atom(std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<int> strict(0, 1);
  linear_atom a;
  for (const auto& v : kVars) a.expr.add_term(v, rational(c(rng)));
  a.expr.add_constant(rational(c(rng)));
  a.rel = strict(rng) ? rel_op::lt : rel_op::le;
  return a;
}

formula make_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> shape(0, depth <= 0 ? 0 : 3);
  std::uniform_int_distribution<int> width(1, 3);
  switch (shape(rng)) {
    case 0:
      return formula::atom(make_atom(rng));
    case 1:
      return formula::neg(make_formula(rng, depth - 1));
    default: {
      bool conj = shape(rng) % 2 == 0;
      std::vector<formula> kids;
      int n = width(rng);
      for (int i = 0; i < n; ++i) kids.push_back(make_formula(rng, depth - 1));
      return conj ? formula::conj(std::move(kids)) : formula::disj(std::move(kids));
    }
  }
}

std::map<std::string, rational> make_point(std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-4, 4);
  std::uniform_int_distribution<long> d(1, 2);
  std::map<std::string, rational> v;
  for (const auto& name : kVars) v[name] = rational(c(rng), d(rng));
  return v;
}

bool dnf_holds(const std::vector<guard>& dnf, const std::map<std::string, rational>& v) {
  for (const auto& g : dnf)
    if (holds(g, v)) return true;
  return false;
}

}  // namespace

TEST_CASE("negating an atom lands exactly on the complement") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    linear_atom a = make_atom(rng);
    linear_atom n = negate_atom(a);
    auto v = make_point(rng);
    CHECK(a.holds(v) != n.holds(v));
  }

  // Boundary: e(v) == 0 satisfies <= but not the < complement.
  linear_atom a;
  a.expr.add_term("x", rational(1));
  a.rel = rel_op::le;
  linear_atom n = negate_atom(a);
  CHECK(n.rel == rel_op::lt);
  std::map<std::string, rational> zero{{"x", rational(0)}};
  CHECK(a.holds(zero));
  CHECK_FALSE(n.holds(zero));
  CHECK(negate_atom(n) == a);
}

TEST_CASE("dnf preserves satisfaction on random formulas") {
  std::mt19937 rng(20250212);
  for (int i = 0; i < 200; ++i) {
    formula f = make_formula(rng, 4);
    auto dnf = to_dnf(f);
    for (int t = 0; t < 20; ++t) {
      auto v = make_point(rng);
      CHECK(f.holds(v) == dnf_holds(dnf, v));
    }
  }
}

TEST_CASE("dnf structure on fixtures") {
  linear_atom a = {affine_expr::var("x"), rel_op::lt};
  linear_atom b = {affine_expr::var("y"), rel_op::le};
  linear_atom c = {affine_expr::var("x", rational(-1)), rel_op::lt};

  // (a || b) && c distributes to two disjuncts.
  formula f = formula::conj({formula::disj({formula::atom(a), formula::atom(b)}),
                             formula::atom(c)});
  auto dnf = to_dnf(f);
  REQUIRE(dnf.size() == 2);
  CHECK(dnf[0] == guard{a, c});
  CHECK(dnf[1] == guard{b, c});

  // Repeating a disjunct emits it once.
  formula rep = formula::disj({formula::conj({formula::atom(a), formula::atom(b)}),
                               formula::conj({formula::atom(a), formula::atom(b)})});
  CHECK(to_dnf(rep).size() == 1);

  // Double negation cancels.
  formula dn = formula::neg(formula::neg(formula::atom(a)));
  auto dnf2 = to_dnf(dn);
  REQUIRE(dnf2.size() == 1);
  REQUIRE(dnf2[0].size() == 1);
  CHECK(dnf2[0][0] == a);

  // Negated conjunction splits into a disjunct per flipped atom.
  formula nc = formula::neg(formula::conj({formula::atom(a), formula::atom(b)}));
  auto dnf3 = to_dnf(nc);
  REQUIRE(dnf3.size() == 2);
  CHECK(dnf3[0][0] == negate_atom(a));
  CHECK(dnf3[1][0] == negate_atom(b));

  // Empty conjunction is true: one empty disjunct.
  auto dnf4 = to_dnf(formula::conj({}));
  REQUIRE(dnf4.size() == 1);
  CHECK(dnf4[0].empty());
}

TEST_CASE("dnf size cap throws instead of exploding") {
  // (a1 || b1) && ... && (a12 || b12) has 4096 disjuncts; cap one lower.
  std::mt19937 rng(99);
  std::vector<formula> clauses;
  for (int i = 0; i < 12; ++i)
    clauses.push_back(formula::disj({formula::atom(make_atom(rng)),
                                     formula::atom(make_atom(rng))}));
  formula f = formula::conj(clauses);
  CHECK_THROWS_WITH_AS(to_dnf(f, 4095), doctest::Contains("disjunct limit"), error);
  CHECK_NOTHROW(to_dnf(f, 4096));
}
