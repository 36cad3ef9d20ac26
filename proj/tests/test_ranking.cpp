/* SPDX-License-Identifier: Apache-2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "rankforge/ranking.hpp"
#include "rankforge/recipe.hpp"

using namespace rankforge;

namespace {

using state = std::map<std::string, rational>;

void set_fn(assignment& nu, const std::string& sym, const std::vector<std::string>& vars,
            const std::map<std::string, rational>& coeffs, const rational& offset) {
  for (const auto& v : vars) {
    auto it = coeffs.find(v);
    nu[coeff_unknown(sym, v)] = it == coeffs.end() ? rational(0) : it->second;
  }
  nu[offset_unknown(sym)] = offset;
}

const std::vector<std::string> kQY = {"q", "y"};
const std::vector<std::string> kQXY = {"q", "x", "y"};

}  // namespace

TEST_CASE("integer equivalent of an affine component") {
  affine_expr f = affine_expr::var("q") + affine_expr(rational(1));
  CHECK(ordinal_equiv(f, rational(1, 2), {{"q", rational(3)}}) == 8);
  CHECK(ordinal_equiv(f, rational(2), {{"q", rational(2)}}) == 2);  // ceil(3/2)
  CHECK(ordinal_equiv(f, rational(1), {{"q", rational(-1)}}) == 0);
  CHECK(ordinal_equiv(f, rational(1), {{"q", rational(-5)}}) == 0);
  CHECK_THROWS_WITH_AS(ordinal_equiv(f, rational(0), {{"q", rational(3)}}),
                       doctest::Contains("positive step size"), error);
  CHECK_THROWS_WITH_AS(ordinal_equiv(f, rational(-1), {{"q", rational(3)}}),
                       doctest::Contains("positive step size"), error);
}

TEST_CASE("extraction reads the model through the shape") {
  assignment nu;
  set_fn(nu, "f", kQY, {{"q", rational(1)}}, rational(1));
  nu["delta"] = rational(1, 2);
  ranking_function rf = extract_ranking_function(build_template("pr").shape, kQY, nu);
  CHECK(rf.k == ranking_function::kind::pr);
  REQUIRE(rf.components.size() == 1);
  CHECK(rf.components[0].f == affine_expr::var("q") + affine_expr(rational(1)));
  CHECK(rf.components[0].delta == rational(1, 2));
  CHECK(ranking_kind_name(rf.k) == "pr");

  assignment missing = nu;
  missing.erase("t_f");
  CHECK_THROWS_WITH_AS(extract_ranking_function(build_template("pr").shape, kQY, missing),
                       doctest::Contains("missing value for 't_f'"), error);

  assignment negative = nu;
  negative["delta"] = rational(-1);
  CHECK_THROWS_WITH_AS(extract_ranking_function(build_template("pr").shape, kQY, negative),
                       doctest::Contains("is not positive"), error);

  shape_node bogus;
  bogus.composed = true;
  bogus.k = shape_node::kind::pr;
  CHECK_THROWS_WITH_AS(extract_ranking_function(bogus, kQY, nu),
                       doctest::Contains("phase, lex or parallel"), error);
}

TEST_CASE("nested models lift into shifted phase components") {
  assignment nu;
  set_fn(nu, "f_1", kQY, {{"q", rational(1)}}, rational(0));
  set_fn(nu, "f_2", kQY, {{"y", rational(1)}}, rational(0));
  nu["delta"] = rational(1);
  ranking_function rf =
      extract_ranking_function(build_template("nested:2").shape, kQY, nu);
  CHECK(rf.k == ranking_function::kind::nested_phase);
  REQUIRE(rf.components.size() == 2);
  // Outer component gains the step size; the innermost does not.
  CHECK(rf.components[0].f == affine_expr::var("q") + affine_expr(rational(1)));
  CHECK(rf.components[1].f == affine_expr::var("y"));
  CHECK(rf.components[0].delta == rational(1));
  CHECK(ranking_kind_name(rf.k) == "nested-via-phase");
}

TEST_CASE("phase models convert to nested models and back through lifting") {
  assignment nu;
  set_fn(nu, "f_1", kQY, {{"y", rational(-1)}}, rational(1));
  set_fn(nu, "f_2", kQY, {{"q", rational(1)}}, rational(1));
  nu["delta_1"] = rational(1, 2);
  nu["delta_2"] = rational(1, 2);

  assignment converted = phase_to_nested(nu, kQY, 2);
  CHECK(converted.at("delta") == rational(1, 2));
  CHECK(converted.at("t_f_1") == rational(1, 2));  // shifted down by delta_2
  CHECK(converted.at("t_f_2") == rational(1));
  CHECK(converted.at("s_f_1_y") == rational(-1));
  CHECK(converted.size() == 7);  // 2 symbols x (2 coeffs + offset) + delta

  // Extraction lifts the converted model back to the original components.
  ranking_function from_phase =
      extract_ranking_function(build_template("phase:2").shape, kQY, nu);
  ranking_function from_nested =
      extract_ranking_function(build_template("nested:2").shape, kQY, converted);
  REQUIRE(from_nested.components.size() == from_phase.components.size());
  for (std::size_t i = 0; i < from_phase.components.size(); ++i) {
    CHECK(from_nested.components[i].f == from_phase.components[i].f);
    CHECK(from_nested.components[i].delta == from_phase.components[i].delta);
  }

  CHECK_THROWS_WITH_AS(phase_to_nested(nu, kQY, 0), doctest::Contains("at least 1"),
                       error);
}

TEST_CASE("phase evaluation steps down through the phases") {
  assignment nu;
  set_fn(nu, "f_1", kQY, {{"y", rational(-1)}}, rational(1));
  set_fn(nu, "f_2", kQY, {{"q", rational(1)}}, rational(1));
  nu["delta_1"] = rational(1, 2);
  nu["delta_2"] = rational(1, 2);
  ranking_function rf =
      extract_ranking_function(build_template("phase:2").shape, kQY, nu);

  // First phase active: w + ceil((1-y)/delta).
  CHECK(evaluate_ranking(rf, {{"q", rational(3)}, {"y", rational(0)}}) ==
        ordinal::omega() + ordinal::from_integer(2));
  // Second phase active once 1-y turns nonpositive.
  CHECK(evaluate_ranking(rf, {{"q", rational(3)}, {"y", rational(2)}}) ==
        ordinal::from_integer(8));
  // Both nonpositive: zero.
  CHECK(evaluate_ranking(rf, {{"q", rational(-2)}, {"y", rational(2)}}).is_zero());

  CHECK(codomain_bound(rf) == ordinal::omega_power(1, 2));
  CHECK(ranks_positive(rf, {{"q", rational(-2)}, {"y", rational(0)}}));
  CHECK_FALSE(ranks_positive(rf, {{"q", rational(-2)}, {"y", rational(2)}}));
}

TEST_CASE("piece evaluation takes the best applicable piece") {
  const std::vector<std::string> pq = {"p", "q"};
  assignment nu;
  set_fn(nu, "f_1", pq, {{"p", rational(1)}}, rational(0));
  set_fn(nu, "f_2", pq, {{"q", rational(1)}}, rational(0));
  set_fn(nu, "g_1", pq, {{"q", rational(1)}, {"p", rational(-1)}}, rational(0));
  set_fn(nu, "g_2", pq, {{"p", rational(1)}, {"q", rational(-1)}}, rational(0));
  nu["delta"] = rational(1, 2);
  ranking_function rf =
      extract_ranking_function(build_template("piece:2").shape, pq, nu);
  CHECK(rf.k == ranking_function::kind::piece);
  REQUIRE(rf.discriminators.size() == 2);

  // p < q: only the first piece applies.
  bool gap = true;
  CHECK(evaluate_ranking(rf, {{"p", rational(3)}, {"q", rational(5)}}, &gap) ==
        ordinal::from_integer(6));
  CHECK_FALSE(gap);
  // Tie: both apply, same value.
  CHECK(evaluate_ranking(rf, {{"p", rational(3)}, {"q", rational(3)}}) ==
        ordinal::from_integer(6));
  CHECK(codomain_bound(rf) == ordinal::omega());

  // A state no discriminator covers reports the gap and values to zero.
  ranking_function stranded;
  stranded.k = ranking_function::kind::piece;
  stranded.components.push_back({affine_expr::var("p"), rational(1)});
  stranded.discriminators.push_back(affine_expr::var("p") + affine_expr(rational(-10)));
  gap = false;
  CHECK(evaluate_ranking(stranded, {{"p", rational(3)}}, &gap).is_zero());
  CHECK(gap);
}

TEST_CASE("lex and parallel evaluation") {
  const std::vector<std::string> ab = {"a", "b"};
  assignment nu;
  set_fn(nu, "f_1", ab, {{"a", rational(1)}}, rational(0));
  set_fn(nu, "f_2", ab, {{"b", rational(1)}}, rational(0));
  nu["delta_1"] = rational(1, 2);
  nu["delta_2"] = rational(1, 2);

  ranking_function lex = extract_ranking_function(build_template("lex:2").shape, ab, nu);
  state s{{"a", rational(2)}, {"b", rational(3)}};
  CHECK(evaluate_ranking(lex, s) ==
        ordinal::omega_power(1, 4) + ordinal::from_integer(6));
  CHECK(codomain_bound(lex) == ordinal::omega_power(2));
  CHECK(ranks_positive(lex, s));
  CHECK_FALSE(ranks_positive(lex, {{"a", rational(2)}, {"b", rational(0)}}));

  ranking_function par =
      extract_ranking_function(build_template("parallel:2").shape, ab, nu);
  CHECK(evaluate_ranking(par, s) == ordinal::from_integer(10));
  CHECK(codomain_bound(par) == ordinal::omega());
  CHECK(ranks_positive(par, {{"a", rational(2)}, {"b", rational(0)}}));
  CHECK_FALSE(ranks_positive(par, {{"a", rational(0)}, {"b", rational(0)}}));
}

TEST_CASE("two-level lexicographic composition scales by child bounds") {
  template_recipe r = build_recipe("lex(phase(pr,pr),phase(pr,pr))");
  assignment nu;
  set_fn(nu, "f_1_1", kQXY, {{"x", rational(-1)}}, rational(1));
  set_fn(nu, "f_1_2", kQXY, {{"q", rational(1)}}, rational(0));
  set_fn(nu, "f_2_1", kQXY, {{"y", rational(1)}}, rational(0));
  set_fn(nu, "f_2_2", kQXY, {{"q", rational(1)}}, rational(0));
  for (const auto& d : r.parameters) nu[d] = rational(1, 2);

  ranking_function rf = extract_ranking_function(r.shape, kQXY, nu);
  CHECK(rf.k == ranking_function::kind::composed_lex);
  REQUIRE(rf.children.size() == 2);
  CHECK(rf.children[0].k == ranking_function::kind::composed_phase);

  // Child bounds are w*2 each; place value of the first child is w*2.
  CHECK(codomain_bound(rf.children[0]) == ordinal::omega_power(1, 2));
  CHECK(codomain_bound(rf) == ordinal::omega_power(2, 2));

  // rho = (w*2)*(w+2) + (w+6) = w^2 + w*5 + 6.
  state s{{"q", rational(2)}, {"x", rational(0)}, {"y", rational(3)}};
  ordinal expected = ordinal::omega_power(2) + ordinal::omega_power(1, 5) +
                     ordinal::from_integer(6);
  CHECK(evaluate_ranking(rf, s) == expected);
  CHECK(ranks_positive(rf, s));

  // Lex positivity needs every child; kill the second (q and y both
  // nonpositive) while the first stays alive through 1-x.
  state dead{{"q", rational(0)}, {"x", rational(0)}, {"y", rational(0)}};
  CHECK(ranks_positive(rf.children[0], dead));
  CHECK_FALSE(ranks_positive(rf.children[1], dead));
  CHECK_FALSE(ranks_positive(rf, dead));
}

TEST_CASE("phase composition offsets by the bounds of later parts") {
  template_recipe r = build_recipe("phase(pr,lex(pr,pr))");
  assignment nu;
  set_fn(nu, "f_1", kQXY, {{"q", rational(1)}}, rational(0));
  set_fn(nu, "f_2_1", kQXY, {{"x", rational(1)}}, rational(0));
  set_fn(nu, "f_2_2", kQXY, {{"y", rational(1)}}, rational(0));
  for (const auto& d : r.parameters) nu[d] = rational(1, 2);
  ranking_function rf = extract_ranking_function(r.shape, kQXY, nu);
  CHECK(rf.k == ranking_function::kind::composed_phase);

  // Order matters: the second part's bound w^2 comes first and the sum
  // w^2 + w must not collapse.
  CHECK(codomain_bound(rf) == ordinal::omega_power(2) + ordinal::omega());

  state first{{"q", rational(1)}, {"x", rational(2)}, {"y", rational(3)}};
  CHECK(evaluate_ranking(rf, first) ==
        ordinal::omega_power(2) + ordinal::from_integer(2));

  state second{{"q", rational(0)}, {"x", rational(2)}, {"y", rational(3)}};
  CHECK(evaluate_ranking(rf, second) ==
        ordinal::omega_power(1, 4) + ordinal::from_integer(6));

  state none{{"q", rational(0)}, {"x", rational(0)}, {"y", rational(3)}};
  CHECK(evaluate_ranking(rf, none).is_zero());
  CHECK_FALSE(ranks_positive(rf, none));
  CHECK(ranks_positive(rf, second));
}

TEST_CASE("parallel composition adds values with the natural sum") {
  template_recipe r = build_recipe("parallel(pr,lex(pr,pr))");
  assignment nu;
  set_fn(nu, "f_1", kQXY, {{"q", rational(1)}}, rational(0));
  set_fn(nu, "f_2_1", kQXY, {{"x", rational(1)}}, rational(0));
  set_fn(nu, "f_2_2", kQXY, {{"y", rational(1)}}, rational(0));
  for (const auto& d : r.parameters) nu[d] = rational(1, 2);
  ranking_function rf = extract_ranking_function(r.shape, kQXY, nu);
  CHECK(rf.k == ranking_function::kind::composed_parallel);

  // Finite part from the first child must survive next to the w-part of
  // the second; the plain ordinal sum would swallow it.
  state s{{"q", rational(3)}, {"x", rational(4)}, {"y", rational(0)}};
  CHECK(evaluate_ranking(rf, s) ==
        ordinal::omega_power(1, 8) + ordinal::from_integer(6));
  CHECK(codomain_bound(rf) == natural_sum(ordinal::omega(), ordinal::omega_power(2)));
  CHECK(ranks_positive(rf, s));
  CHECK_FALSE(ranks_positive(rf, {{"q", rational(0)},
                                  {"x", rational(0)},
                                  {"y", rational(5)}}));
}

TEST_CASE("rendered text and json carry exact values") {
  assignment nu;
  set_fn(nu, "f_1", kQY, {{"y", rational(-1)}}, rational(1));
  set_fn(nu, "f_2", kQY, {{"q", rational(1)}}, rational(1));
  nu["delta_1"] = rational(1, 2);
  nu["delta_2"] = rational(1, 2);
  ranking_function rf =
      extract_ranking_function(build_template("phase:2").shape, kQY, nu);

  std::string text = render_ranking_text(rf);
  CHECK(text.find("2-phase ranking function") != std::string::npos);
  CHECK(text.find("f_1(x) = -y + 1, delta_1 = 1/2") != std::string::npos);
  CHECK(text.find("codomain bound: w*2") != std::string::npos);

  nlohmann::json j = ranking_json(rf);
  CHECK(j["kind"] == "phase");
  CHECK(j["bound"] == "w*2");
  REQUIRE(j["components"].size() == 2);
  CHECK(j["components"][0]["delta"] == "1/2");
  CHECK(j["components"][0]["f"]["coefficients"]["y"] == "-1");
  CHECK(j["components"][0]["f"]["offset"] == "1");
  CHECK(j["components"][1]["f"]["text"] == "q + 1");

  // Piece components carry their discriminators.
  const std::vector<std::string> pq = {"p", "q"};
  assignment pnu;
  set_fn(pnu, "f_1", pq, {{"p", rational(1)}}, rational(0));
  set_fn(pnu, "f_2", pq, {{"q", rational(1)}}, rational(0));
  set_fn(pnu, "g_1", pq, {{"q", rational(1)}}, rational(0));
  set_fn(pnu, "g_2", pq, {{"p", rational(1)}}, rational(0));
  pnu["delta"] = rational(1);
  nlohmann::json pj = ranking_json(
      extract_ranking_function(build_template("piece:2").shape, pq, pnu));
  CHECK(pj["components"][0].contains("g"));

  // Composed nodes nest children.
  template_recipe r = build_recipe("phase(pr,pr)");
  assignment cnu;
  set_fn(cnu, "f_1", kQY, {{"q", rational(1)}}, rational(0));
  set_fn(cnu, "f_2", kQY, {{"y", rational(1)}}, rational(0));
  cnu["delta_1"] = rational(1);
  cnu["delta_2"] = rational(1);
  nlohmann::json cj = ranking_json(extract_ranking_function(r.shape, kQY, cnu));
  CHECK(cj["kind"] == "composed-phase");
  REQUIRE(cj["children"].size() == 2);
  CHECK(cj["children"][0]["kind"] == "pr");
  std::string ctext = render_ranking_text(extract_ranking_function(r.shape, kQY, cnu));
  CHECK(ctext.find("phase composition of 2 parts") != std::string::npos);
}
