/* SPDX-License-Identifier: Apache-2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "rankforge/parser.hpp"
#include "rankforge/smtlib.hpp"

using namespace rankforge;

TEST_CASE("rational literals") {
  CHECK(smt_rational(rational(0)) == "0");
  CHECK(smt_rational(rational(2)) == "2");
  CHECK(smt_rational(rational(-2)) == "(- 2)");
  CHECK(smt_rational(rational(1, 2)) == "(/ 1 2)");
  CHECK(smt_rational(rational(-1, 2)) == "(- (/ 1 2))");
  CHECK(smt_rational(rational(6, 4)) == "(/ 3 2)");
}

TEST_CASE("state variable symbols") {
  CHECK(smt_state_var("q") == "v!q");
  CHECK(smt_state_var("q'") == "v!q!p");
  CHECK(smt_state_var("total_2") == "v!total_2");
}

TEST_CASE("constraint script layout") {
  exists_constraint c;
  c.unknowns = {{"a", unknown_role::parameter}, {"b", unknown_role::fun_coeff}};
  poly_atom one;
  one.lhs.add_term(rational(1), {"a"});
  one.lhs.add_term(rational(-1, 2), {});
  one.rel = poly_rel::ge;
  poly_atom two;
  two.lhs.add_term(rational(2), {"a", "b"});
  two.rel = poly_rel::lt;
  poly_atom three;
  three.lhs.add_term(rational(1), {"b"});
  three.rel = poly_rel::gt;
  c.clauses.push_back({{one}});
  c.clauses.push_back({{two, three}});

  std::string script = emit_smtlib(c, smt_logic::qf_nra, {"a", "b"});
  CHECK(script ==
        "(set-logic QF_NRA)\n"
        "(declare-const a Real)\n"
        "(declare-const b Real)\n"
        "(assert (>= (+ (- (/ 1 2)) a) 0))\n"
        "(assert (or (< (* 2 a b) 0) (> b 0)))\n"
        "(check-sat)\n"
        "(get-value (a b))\n");

  // Same input, same bytes.
  CHECK(emit_smtlib(c, smt_logic::qf_nra, {"a", "b"}) == script);

  // No value request, no get-value.
  CHECK(emit_smtlib(c, smt_logic::qf_nra, {}).find("get-value") == std::string::npos);

  // The quadratic atom is rejected under the linear logic.
  CHECK_THROWS_WITH_AS(emit_smtlib(c, smt_logic::qf_lra, {}),
                       doctest::Contains("nonlinear atom under QF_LRA"), error);
}

TEST_CASE("emission is deterministic across rebuilds") {
  auto make = [] {
    lasso_program prog = parse_program("vars: q y;\nloop: q > 0 && q' <= q - y;");
    cnf_template cnf = to_cnf(build_template("phase:2"), prog.vars);
    exists_constraint c = generate_synthesis_constraint(prog.loop, cnf, prog.vars);
    std::vector<std::string> all;
    for (const auto& u : c.unknowns) all.push_back(u.name);
    return emit_smtlib(c, smt_logic::qf_nra, all);
  };
  CHECK(make() == make());
}

TEST_CASE("formula script layout") {
  formula f = formula::disj(
      {formula::atom({affine_expr::var("q") - affine_expr(rational(1)), rel_op::le}),
       formula::neg(formula::atom({affine_expr::var("y'"), rel_op::lt}))});
  std::string script = emit_formula_script({"q", "y"}, {f}, true);
  CHECK(script ==
        "(set-logic QF_LRA)\n"
        "(declare-const v!q Real)\n"
        "(declare-const v!y Real)\n"
        "(declare-const v!q!p Real)\n"
        "(declare-const v!y!p Real)\n"
        "(assert (or (<= (+ v!q (- 1)) 0) (not (< v!y!p 0))))\n"
        "(check-sat)\n"
        "(get-value (v!q!p v!y!p))\n");

  // Nullary and unary connectives normalize away.
  CHECK(emit_formula_script({"q"}, {formula::conj({})}, false)
            .find("(assert true)") != std::string::npos);
  CHECK(emit_formula_script({"q"}, {formula::disj({})}, false)
            .find("(assert false)") != std::string::npos);
  formula single = formula::conj({formula::atom({affine_expr::var("q"), rel_op::lt})});
  CHECK(emit_formula_script({"q"}, {single}, false).find("(assert (< v!q 0))") !=
        std::string::npos);
}

TEST_CASE("s-expression reader") {
  auto roots = parse_sexprs("sat\n((a 1) (b c)) ; trailing comment\n");
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].is_atom());
  CHECK(roots[0].atom == "sat");
  REQUIRE(roots[1].kids.size() == 2);
  CHECK(roots[1].kids[0].kids[0].atom == "a");
  CHECK(roots[1].kids[0].kids[1].atom == "1");

  CHECK(parse_sexprs("; only a comment").empty());
  CHECK(parse_sexprs("\"one atom\"")[0].atom == "\"one atom\"");
  CHECK_THROWS_WITH_AS(parse_sexprs("((a)"), doctest::Contains("unbalanced"), error);
  CHECK_THROWS_WITH_AS(parse_sexprs(")"), doctest::Contains("unexpected ')'"), error);
  CHECK_THROWS_WITH_AS(parse_sexprs("\"open"), doctest::Contains("unterminated"), error);
}

TEST_CASE("model values cover solver output styles") {
  auto value = [](const std::string& text) {
    auto roots = parse_sexprs(text);
    REQUIRE(roots.size() == 1);
    return parse_model_value(roots[0]);
  };
  CHECK(value("7") == rational(7));
  CHECK(value("-3") == rational(-3));
  CHECK(value("(- 2)") == rational(-2));
  CHECK(value("(/ 1 2)") == rational(1, 2));
  CHECK(value("(- (/ 1 2))") == rational(-1, 2));
  CHECK(value("1.0") == rational(1));
  CHECK(value("0.125") == rational(1, 8));
  CHECK(value("007") == rational(7));  // decimal, never octal
  CHECK(value("-1.5") == rational(-3, 2));
  CHECK(value("(- 1.5)") == rational(-3, 2));
  CHECK(value("(/ 1.0 2.0)") == rational(1, 2));
  CHECK(value("(- (/ 3.0 2.0))") == rational(-3, 2));
  CHECK_THROWS_WITH_AS(value("(root-obj (+ (^ x 2) (- 2)) 2)"),
                       doctest::Contains("unsupported model value"), error);
  CHECK_THROWS_WITH_AS(value("x!0"), doctest::Contains("unsupported model value"), error);
  CHECK_THROWS_WITH_AS(value("(/ 1 0)"), doctest::Contains("zero denominator"), error);
}

TEST_CASE("model extraction") {
  std::string text = "sat\n((a 1) (b (/ 1.0 2.0)) (c (- 1.5)))";
  assignment m = parse_model(text, {"a", "b", "c"});
  CHECK(m.at("a") == rational(1));
  CHECK(m.at("b") == rational(1, 2));
  CHECK(m.at("c") == rational(-3, 2));

  // Subset requests filter; unknown names are an error.
  CHECK(parse_model(text, {"b"}).size() == 1);
  CHECK_THROWS_WITH_AS(parse_model(text, {"zz"}),
                       doctest::Contains("model missing value for 'zz'"), error);

  // Stray atoms and malformed pairs are ignored.
  CHECK(parse_model("sat\nnoise\n((a 2) (bad) extra)", {"a"}).at("a") == rational(2));
}
