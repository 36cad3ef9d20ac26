/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankforge/formula.hpp"

namespace rankforge {

// One template atom: sum over function symbols f of
// alpha_f*f(x) + beta_f*f(x') plus sum over parameters d of gamma_d*d,
// compared against 0. Only > and >= occur.
struct template_atom {
  std::map<std::string, rational> alpha;  // f -> coefficient of f(x)
  std::map<std::string, rational> beta;   // f -> coefficient of f(x')
  std::map<std::string, rational> gamma;  // parameter -> coefficient
  bool strict = true;                     // true: > 0, false: >= 0
};

// Negation-free and/or tree over template atoms.
struct template_body {
  enum class kind { atom, conj, disj };
  kind k = kind::conj;
  template_atom at;                 // valid when k == atom
  std::vector<template_body> kids;  // conj/disj children

  static template_body atom(template_atom a);
  static template_body conj(std::vector<template_body> kids);
  static template_body disj(std::vector<template_body> kids);
};

// Structural descriptor a ranking-function extractor dispatches on.
// A basic template is a single node carrying its symbol names; a recipe
// is a tree whose interior nodes are phase/lex/parallel compositions.
struct shape_node {
  enum class kind { pr, phase, nested, piece, lex, parallel };

  kind k = kind::pr;
  bool composed = false;            // interior node of a recipe
  std::vector<std::string> fs;      // ranking symbols (leaf nodes)
  std::vector<std::string> gs;      // discriminators (piece only)
  std::vector<std::string> deltas;  // step-size parameters (leaf nodes)
  std::vector<shape_node> children; // composed nodes only
};

std::string shape_kind_name(shape_node::kind k);

struct ranking_template {
  std::string spec;                     // e.g. "phase:2" or "lex(pr,pr)"
  std::vector<std::string> parameters;  // step sizes, declaration order
  std::vector<std::string> symbols;     // function symbols, declaration order
  template_body body;
  shape_node shape;
};

// Template atom flattened against a concrete variable list: the atom
// sum_v row[v]*v + offset > 0 (or >= 0), where row entries and offset are
// affine expressions over the template unknowns (s_<f>_<v>, t_<f>, deltas).
struct normalized_atom {
  std::map<std::string, affine_expr> row;  // transition variable -> unknown-affine
  affine_expr offset;                      // unknown-affine
  bool strict = true;
};

struct cnf_template {
  std::string spec;
  std::vector<std::vector<normalized_atom>> clauses;  // conj of disjunctions
  std::vector<std::string> unknowns;                  // declaration order
  std::vector<std::string> parameter_unknowns;        // subset: the step sizes
  shape_node shape;
};

// Unknown names a function symbol expands to over a variable list.
std::string coeff_unknown(const std::string& symbol, const std::string& var);
std::string offset_unknown(const std::string& symbol);

// Builders for the named templates; k >= 1 (pr ignores k).
ranking_template build_template(shape_node::kind kind, unsigned k);

// "pr" | "phase:K" | "nested:K" | "piece:K" | "lex:K" | "parallel:K"
ranking_template build_template(const std::string& spec);
bool is_template_spec(const std::string& spec);

// Distributes the body into CNF over the program's variables.
cnf_template to_cnf(const ranking_template& t, const std::vector<std::string>& vars,
                    std::size_t max_clauses = 65536);

struct template_statistics {
  std::size_t parameters = 0;
  std::size_t symbols = 0;
  std::size_t cnf_conjuncts = 0;
  std::size_t cnf_atoms = 0;
};

template_statistics template_stats(const ranking_template& t,
                                   std::size_t max_clauses = 65536);

// Assignment of rational values to all template unknowns.
using assignment = std::map<std::string, rational>;

// Replaces unknowns by their values; the result is a formula over the
// program's plain and primed variables, evaluable by holds().
formula instantiate(const ranking_template& t, const std::vector<std::string>& vars,
                    const assignment& nu);

}  // namespace rankforge
