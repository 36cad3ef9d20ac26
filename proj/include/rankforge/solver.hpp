/* SPDX-License-Identifier: Apache-2.0 */
#pragma once
#include <string>
#include <vector>

#include "rankforge/smtlib.hpp"

namespace rankforge {

// Command template for the external SMT solver process. "{script}" is
// replaced by the script path; when absent the path is appended as a final
// argument. RANKFORGE_SOLVER overrides the built-in default "z3 {script}".
std::string default_solver_command();

struct solver_config {
  std::string command = default_solver_command();
  double timeout_seconds = 60.0;  // must be positive
  smt_logic logic = smt_logic::qf_nra;
};

struct solver_verdict {
  enum class kind { sat, unsat, unknown };
  kind k = kind::unknown;
  assignment model;    // filled for sat when unknowns were requested
  std::string reason;  // filled for unknown
  std::string raw;     // full solver stdout, kept for diagnostics
};

// Runs one solver process to completion on the given script. The child gets
// its own process group and the whole group is killed on timeout, yielding
// Unknown("timeout"). RANKFORGE_SOLVER_TIMEOUT_MS carries the budget in
// milliseconds so wrapper scripts can forward it to the underlying solver.
// A sat answer whose model omits a requested unknown, or carries a value
// outside the rational fragment, degrades to Unknown with the parse error
// as the reason.
solver_verdict run_solver(const std::string& script, const solver_config& config,
                          const std::vector<std::string>& requested = {});

}  // namespace rankforge
