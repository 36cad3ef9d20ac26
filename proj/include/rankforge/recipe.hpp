/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <string>
#include <vector>

#include "rankforge/templates.hpp"

namespace rankforge {

// Recipe triple: T_leq ("component does not increase"), T_lt ("component
// decreases"), T_pos ("component is positive"), over one shared pool of
// parameters and function symbols.
struct template_recipe {
  std::string spec;
  template_body leq;
  template_body lt;
  template_body pos;
  std::vector<std::string> parameters;
  std::vector<std::string> symbols;
  shape_node shape;
};

// Recipe grammar: "pr" | "piece:K" | ("phase"|"lex"|"parallel") "(" e, ... ")".
// pr and piece:K are the leaves; the three composition rules are interior
// nodes whose children receive disjoint fresh names (suffixed by tree path).
template_recipe build_recipe(const std::string& expr);

bool is_recipe_spec(const std::string& expr);

// The composed template T_lt and T_pos taken together.
ranking_template recipe_to_template(const template_recipe& r);

}  // namespace rankforge
