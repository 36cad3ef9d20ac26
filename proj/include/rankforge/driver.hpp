/* SPDX-License-Identifier: Apache-2.0 */
#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rankforge/constraint.hpp"
#include "rankforge/program.hpp"
#include "rankforge/ranking.hpp"
#include "rankforge/recipe.hpp"
#include "rankforge/solver.hpp"
#include "rankforge/verify.hpp"

namespace rankforge {

struct pool_entry {
  enum class origin { named, recipe };

  std::string spec;
  ranking_template tmpl;
  origin from = origin::named;
};

// Resolves a named template spec ("pr", "phase:2", ...) or a recipe
// expression ("lex(phase(pr,pr),pr)") into a pool entry.
pool_entry make_pool_entry(const std::string& spec);

// The built-in pool, cheapest constraint systems first.
std::vector<pool_entry> default_pool();

struct prove_options {
  // Supporting invariants per implication; defaults to 1 for programs with
  // a nontrivial stem and 0 otherwise.
  std::optional<std::size_t> invariants;
  bool strict_invariants = false;
  bool nondecreasing = false;
  bool verify = true;
  bool concurrent = false;  // race the whole pool instead of trying in order
  std::string dump_dir;     // when set, write each synthesis script here
  solver_config solver;
};

struct attempt_log {
  std::string spec;
  std::string verdict;  // sat | unsat | unknown
  long long millis = 0;
  std::string note;  // human-report extra: unsat meaning, unknown reason
};

struct prove_result {
  enum class status { proved, no_template, error };

  status st = status::no_template;
  std::string program_text;
  std::vector<attempt_log> attempts;
  std::string template_spec;            // proved only
  assignment nu;                        // parameter, coefficient and invariant unknowns
  ranking_function rf;                  // proved only
  bool verified = false;                // proved only, false when verification is off
  std::vector<linear_atom> invariants;  // instantiated psi's over plain variables
  std::string message;                  // error only
};

// Tries each pool entry in order (or concurrently): build the CNF template,
// generate the existential constraint, solve, and on sat extract and verify
// the ranking function. The first entry that proves wins; unsat and unknown
// verdicts are logged and the loop continues.
prove_result prove(const lasso_program& prog, const std::vector<pool_entry>& pool,
                   const prove_options& opts);

std::string render_report(const prove_result& r, bool as_json);

}  // namespace rankforge
