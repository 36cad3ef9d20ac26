/* SPDX-License-Identifier: Apache-2.0 */
#pragma once
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rankforge/ordinal.hpp"
#include "rankforge/templates.hpp"

namespace rankforge {

// hat f(x) = ceil(f(x)/delta) when f(x) > 0, else 0. Throws on delta <= 0.
mpz_class ordinal_equiv(const affine_expr& f, const rational& delta,
                        const std::map<std::string, rational>& x);

// One ranked component: an affine function over the program variables and
// the positive step size its decrease is measured against.
struct ranked_component {
  affine_expr f;
  rational delta;
};

struct ranking_function {
  enum class kind {
    pr,
    phase,
    nested_phase,  // nested certificate, evaluated through its phase form
    piece,
    lex,
    parallel,
    composed_phase,
    composed_lex,
    composed_parallel,
  };

  kind k = kind::pr;
  std::vector<ranked_component> components;  // leaf kinds
  std::vector<affine_expr> discriminators;   // piece only, parallel to components
  std::vector<ranking_function> children;    // composed kinds only
};

std::string ranking_kind_name(ranking_function::kind k);

// Builds the ranking function of a solved template from its shape and the
// model. Nested certificates are lifted to the phase form whose relation
// contains theirs (add delta to every component except the innermost).
// Throws on missing assignment entries and on nonpositive step sizes.
ranking_function extract_ranking_function(const shape_node& shape,
                                          const std::vector<std::string>& vars,
                                          const assignment& nu);

// Least strict upper bound of the values evaluate_ranking can produce.
ordinal codomain_bound(const ranking_function& rf);

// Whether x lies in the region the ranking function bounds below; this is
// the component the active-child selection of phase compositions tests.
bool ranks_positive(const ranking_function& rf,
                    const std::map<std::string, rational>& x);

// Exact ordinal value at a state. A piece node where no discriminator is
// nonnegative contributes 0 and sets *no_piece_applies when given; such
// states cannot occur inside the instantiated relation.
ordinal evaluate_ranking(const ranking_function& rf,
                         const std::map<std::string, rational>& x,
                         bool* no_piece_applies = nullptr);

// Converts a total k-phase assignment into the k-nested assignment whose
// instantiated relation the phase one contains: nu'(delta) = nu(delta_1),
// nu'(f_i) = nu(f_i) - nu(delta_{i+1}) for i < k, nu'(f_k) = nu(f_k).
// Only the offsets t_f_i move; coefficients carry over.
assignment phase_to_nested(const assignment& nu, const std::vector<std::string>& vars,
                           unsigned k);

// Multi-line human description listing components, steps and the value rule.
std::string render_ranking_text(const ranking_function& rf);

// Kind-specific object with every rational as an exact "p/q" string.
nlohmann::json ranking_json(const ranking_function& rf);

}  // namespace rankforge
