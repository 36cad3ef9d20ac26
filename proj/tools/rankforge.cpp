/* SPDX-License-Identifier: Apache-2.0 */
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rankforge/driver.hpp"
#include "rankforge/parser.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rankforge::error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A single invariant is one atom in program syntax ("1 <= y"); reuse the
// program parser by wrapping it into a one-disjunct loop.
std::vector<rankforge::linear_atom> parse_invariant(const std::string& text,
                                                    const std::vector<std::string>& vars) {
  std::ostringstream os;
  os << "vars:";
  for (const auto& v : vars) os << " " << v;
  os << ";\nloop: " << text << ";\n";
  rankforge::lasso_program p = rankforge::parse_program(os.str());
  if (p.loop.size() != 1)
    throw rankforge::error("invariant '" + text + "' must be a conjunction of atoms");
  return p.loop[0];
}

int run_prove(const std::string& file, const std::vector<std::string>& specs,
              const rankforge::prove_options& opts, bool as_json) {
  rankforge::lasso_program prog = rankforge::parse_program(read_file(file));
  std::vector<rankforge::pool_entry> pool;
  if (specs.empty()) {
    pool = rankforge::default_pool();
  } else {
    for (const auto& s : specs) pool.push_back(rankforge::make_pool_entry(s));
  }
  rankforge::prove_result r = rankforge::prove(prog, pool, opts);
  std::cout << rankforge::render_report(r, as_json);
  switch (r.st) {
    case rankforge::prove_result::status::proved: return 0;
    case rankforge::prove_result::status::no_template: return 1;
    case rankforge::prove_result::status::error: return 2;
  }
  return 2;
}

int run_stats(const std::string& spec) {
  rankforge::pool_entry e = rankforge::make_pool_entry(spec);
  rankforge::template_statistics st = rankforge::template_stats(e.tmpl);
  std::cout << "template: " << e.spec << "\n"
            << "parameters: " << st.parameters << "\n"
            << "function symbols: " << st.symbols << "\n"
            << "cnf conjuncts: " << st.cnf_conjuncts << "\n"
            << "cnf atoms: " << st.cnf_atoms << "\n";
  return 0;
}

int run_check(const std::string& file, const std::string& assignment_file,
              const rankforge::solver_config& solver) {
  rankforge::lasso_program prog = rankforge::parse_program(read_file(file));
  nlohmann::json j = nlohmann::json::parse(read_file(assignment_file));
  if (!j.contains("template") || !j.contains("assignment"))
    throw rankforge::error("assignment file needs \"template\" and \"assignment\" fields");
  rankforge::pool_entry e = rankforge::make_pool_entry(j["template"].get<std::string>());
  rankforge::assignment nu;
  for (const auto& [name, value] : j["assignment"].items())
    nu[name] = rankforge::rational::parse(value.get<std::string>());
  std::vector<rankforge::linear_atom> invariants;
  if (j.contains("invariants")) {
    for (const auto& inv : j["invariants"]) {
      auto atoms = parse_invariant(inv.get<std::string>(), prog.vars);
      invariants.insert(invariants.end(), atoms.begin(), atoms.end());
    }
  }
  std::string why;
  bool ok = rankforge::verify_assignment(prog, e.tmpl, nu, invariants, solver, &why);
  if (ok) {
    std::cout << "verified: the assignment is a valid " << e.spec << " certificate\n";
    return 0;
  }
  std::cout << "not verified: " << why << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rankforge: ranking-function synthesis for linear lasso programs"};
  app.require_subcommand(1);

  auto* prove_cmd = app.add_subcommand("prove", "synthesize a ranking function for FILE");
  std::string prove_file;
  prove_cmd->add_option("file", prove_file, "program in .llp syntax")->required();
  std::vector<std::string> templates, recipes;
  prove_cmd->add_option("--template", templates,
                        "named template spec; repeatable; replaces the default pool");
  prove_cmd->add_option("--recipe", recipes,
                        "template recipe expression; repeatable; replaces the default pool");
  long long invariants = -1;
  prove_cmd->add_option("--invariants", invariants,
                        "supporting invariants per implication (default: 1 with a stem, else 0)");
  bool invariant_strict = false, nondecreasing = false, no_verify = false;
  bool as_json = false, concurrent = false;
  prove_cmd->add_flag("--invariant-strict", invariant_strict, "use strict invariants psi > 0");
  prove_cmd->add_flag("--nondecreasing", nondecreasing,
                      "require invariant functions nondecreasing along the loop");
  prove_cmd->add_flag("--no-verify", no_verify, "skip the independent certificate check");
  prove_cmd->add_flag("--json", as_json, "machine-readable report");
  prove_cmd->add_flag("--parallel", concurrent, "race all pool entries concurrently");
  std::string solver_cmd = rankforge::default_solver_command();
  double timeout = 60.0;
  std::string dump_dir;
  prove_cmd->add_option("--solver", solver_cmd, "solver command with {script} placeholder");
  prove_cmd->add_option("--timeout", timeout, "per-template solver timeout in seconds");
  prove_cmd->add_option("--dump-smt", dump_dir, "write each synthesis script into this directory");

  auto* stats_cmd = app.add_subcommand("stats", "print template size statistics");
  std::string stats_spec;
  stats_cmd->add_option("--template", stats_spec, "template spec or recipe expression")
      ->required();

  auto* check_cmd = app.add_subcommand("check", "verify a user-supplied assignment for FILE");
  std::string check_file, check_assignment;
  check_cmd->add_option("file", check_file, "program in .llp syntax")->required();
  check_cmd->add_option("--assignment", check_assignment,
                        "JSON file with \"template\", \"assignment\" and optional \"invariants\"")
      ->required();
  std::string check_solver = rankforge::default_solver_command();
  double check_timeout = 60.0;
  check_cmd->add_option("--solver", check_solver, "solver command with {script} placeholder");
  check_cmd->add_option("--timeout", check_timeout, "solver timeout in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prove_cmd->parsed()) {
      rankforge::prove_options opts;
      if (prove_cmd->count("--invariants")) {
        if (invariants < 0) throw rankforge::error("--invariants must be nonnegative");
        opts.invariants = static_cast<std::size_t>(invariants);
      }
      opts.strict_invariants = invariant_strict;
      opts.nondecreasing = nondecreasing;
      opts.verify = !no_verify;
      opts.concurrent = concurrent;
      opts.dump_dir = dump_dir;
      opts.solver.command = solver_cmd;
      opts.solver.timeout_seconds = timeout;
      std::vector<std::string> specs = templates;
      specs.insert(specs.end(), recipes.begin(), recipes.end());
      return run_prove(prove_file, specs, opts, as_json);
    }
    if (stats_cmd->parsed()) return run_stats(stats_spec);
    if (check_cmd->parsed()) {
      rankforge::solver_config solver;
      solver.command = check_solver;
      solver.timeout_seconds = check_timeout;
      return run_check(check_file, check_assignment, solver);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
