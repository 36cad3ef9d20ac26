/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/driver.hpp"

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace rankforge {

pool_entry make_pool_entry(const std::string& spec) {
  pool_entry e;
  e.spec = spec;
  if (is_template_spec(spec)) {
    e.tmpl = build_template(spec);
    e.from = pool_entry::origin::named;
  } else if (is_recipe_spec(spec)) {
    e.tmpl = recipe_to_template(build_recipe(spec));
    e.from = pool_entry::origin::recipe;
  } else {
    throw error("unknown template spec '" + spec + "'");
  }
  return e;
}

std::vector<pool_entry> default_pool() {
  static const char* specs[] = {"pr",    "nested:2", "nested:3",   "phase:2", "phase:3",
                                "lex:2", "lex:3",    "parallel:2", "piece:2"};
  std::vector<pool_entry> pool;
  for (const char* s : specs) pool.push_back(make_pool_entry(s));
  return pool;
}

namespace {

struct entry_outcome {
  attempt_log log;
  bool proved = false;
  bool aborted = false;
  std::string error_msg;
  assignment nu;
  ranking_function rf;
  std::vector<linear_atom> inv_atoms;
  bool verified = false;
};

std::string sanitize(const std::string& spec) {
  std::string out;
  for (char c : spec) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

entry_outcome run_entry(const lasso_program& prog, const pool_entry& entry,
                        const prove_options& opts, std::size_t m, std::size_t index) {
  entry_outcome out;
  out.log.spec = entry.spec;
  auto started = std::chrono::steady_clock::now();
  try {
    cnf_template cnf = to_cnf(entry.tmpl, prog.vars);
    lasso_options lopts;
    lopts.invariants = m;
    lopts.strict_invariants = opts.strict_invariants;
    lopts.nondecreasing = opts.nondecreasing;
    exists_constraint ec = generate_lasso_constraint(prog, cnf, lopts);

    std::vector<std::string> wanted;
    for (const auto& u : ec.unknowns) {
      if (u.role == unknown_role::parameter || u.role == unknown_role::fun_coeff ||
          u.role == unknown_role::inv_coeff)
        wanted.push_back(u.name);
    }
    std::string script = emit_smtlib(ec, smt_logic::qf_nra, wanted);

    if (!opts.dump_dir.empty()) {
      std::filesystem::create_directories(opts.dump_dir);
      std::ostringstream name;
      name << std::setw(2) << std::setfill('0') << index + 1 << "-" << sanitize(entry.spec)
           << ".smt2";
      std::ofstream f(std::filesystem::path(opts.dump_dir) / name.str());
      f << script;
    }

    solver_verdict sv = run_solver(script, opts.solver, wanted);
    switch (sv.k) {
      case solver_verdict::kind::unsat:
        out.log.verdict = "unsat";
        if (!prog.has_nontrivial_stem() && m == 0)
          out.log.note = "no ranking function of this template's form exists";
        break;
      case solver_verdict::kind::unknown:
        out.log.verdict = "unknown";
        out.log.note = sv.reason;
        break;
      case solver_verdict::kind::sat: {
        out.log.verdict = "sat";
        out.nu = sv.model;
        out.rf = extract_ranking_function(cnf.shape, prog.vars, sv.model);
        for (const auto& inv : ec.invariants) {
          affine_expr e(-sv.model.at(inv.offset_name));
          for (const auto& [v, name] : inv.coeff_names) e.set_coeff(v, -sv.model.at(name));
          out.inv_atoms.push_back({e, inv.strict ? rel_op::lt : rel_op::le});
        }
        if (opts.verify) {
          std::string why;
          out.verified =
              verify_assignment(prog, entry.tmpl, sv.model, out.inv_atoms, opts.solver, &why);
          if (!out.verified) {
            out.aborted = true;
            out.error_msg = "verification failed for " + entry.spec + ": " + why;
            break;
          }
        }
        out.proved = true;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.aborted = true;
    out.error_msg = e.what();
    if (out.log.verdict.empty()) out.log.verdict = "unknown";
    out.log.note = e.what();
  }
  out.log.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return out;
}

}  // namespace

prove_result prove(const lasso_program& prog, const std::vector<pool_entry>& pool,
                   const prove_options& opts) {
  if (pool.empty()) throw error("template pool is empty");
  prove_result r;
  r.program_text = prog.str();
  std::size_t m = opts.invariants.value_or(prog.has_nontrivial_stem() ? 1 : 0);

  std::vector<entry_outcome> outcomes;
  if (opts.concurrent) {
    outcomes.resize(pool.size());
    std::vector<std::thread> threads;
    threads.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
      threads.emplace_back(
          [&, i] { outcomes[i] = run_entry(prog, pool[i], opts, m, i); });
    for (auto& t : threads) t.join();
  } else {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      outcomes.push_back(run_entry(prog, pool[i], opts, m, i));
      if (outcomes.back().proved || outcomes.back().aborted) break;
    }
  }

  for (const auto& o : outcomes) r.attempts.push_back(o.log);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (o.aborted) {
      r.st = prove_result::status::error;
      r.message = o.error_msg;
      return r;
    }
    if (o.proved) {
      r.st = prove_result::status::proved;
      r.template_spec = pool[i].spec;
      r.nu = std::move(o.nu);
      r.rf = std::move(o.rf);
      r.verified = o.verified;
      r.invariants = std::move(o.inv_atoms);
      return r;
    }
  }
  r.st = prove_result::status::no_template;
  return r;
}

namespace {

const char* status_name(prove_result::status s) {
  switch (s) {
    case prove_result::status::proved: return "proved";
    case prove_result::status::no_template: return "no-template-applies";
    case prove_result::status::error: return "error";
  }
  return "?";
}

void indent_into(std::ostream& os, const std::string& text, const std::string& pad) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) os << pad << line << "\n";
}

}  // namespace

std::string render_report(const prove_result& r, bool as_json) {
  if (as_json) {
    nlohmann::json j;
    j["status"] = status_name(r.st);
    j["program"] = r.program_text;
    auto arr = nlohmann::json::array();
    for (const auto& a : r.attempts)
      arr.push_back({{"template", a.spec}, {"verdict", a.verdict}, {"millis", a.millis}});
    j["attempts"] = arr;
    if (r.st == prove_result::status::proved) {
      j["template"] = r.template_spec;
      nlohmann::json nu = nlohmann::json::object();
      for (const auto& [name, value] : r.nu) nu[name] = value.str();
      j["assignment"] = nu;
      j["ranking_function"] = ranking_json(r.rf);
      j["verified"] = r.verified;
      if (!r.invariants.empty()) {
        auto inv = nlohmann::json::array();
        for (const auto& a : r.invariants) inv.push_back(a.str());
        j["invariants"] = inv;
      }
    }
    if (r.st == prove_result::status::error) j["message"] = r.message;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "program:\n";
  indent_into(os, r.program_text, "  ");
  if (!r.attempts.empty()) {
    os << "attempts:\n";
    for (const auto& a : r.attempts) {
      os << "  " << a.spec << ": " << a.verdict << ", " << a.millis << " ms";
      if (!a.note.empty()) os << " (" << a.note << ")";
      os << "\n";
    }
  }
  os << "status: " << status_name(r.st) << "\n";
  if (r.st == prove_result::status::proved) {
    os << "template: " << r.template_spec << "\n";
    os << "assignment:\n";
    for (const auto& [name, value] : r.nu) os << "  " << name << " = " << value.str() << "\n";
    if (!r.invariants.empty()) {
      os << "supporting invariants:\n";
      for (const auto& a : r.invariants) os << "  " << a.str() << "\n";
    }
    os << "ranking function:\n";
    indent_into(os, render_ranking_text(r.rf), "  ");
    os << "verified: " << (r.verified ? "yes" : "no") << "\n";
  }
  if (r.st == prove_result::status::error) os << "message: " << r.message << "\n";
  return os.str();
}

}  // namespace rankforge
