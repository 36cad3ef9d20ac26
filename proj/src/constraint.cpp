/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/constraint.hpp"

#include <algorithm>
#include <sstream>

namespace rankforge {

void polynomial::add_term(rational coeff, std::vector<std::string> factors) {
  if (coeff.is_zero()) return;
  std::sort(factors.begin(), factors.end());
  auto [it, inserted] = terms_.emplace(std::move(factors), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void polynomial::add(const polynomial& o) {
  for (const auto& [fs, c] : o.terms_) add_term(c, fs);
}

void polynomial::add_scaled(const std::string& multiplier, const affine_expr& e) {
  for (const auto& [u, c] : e.coeffs()) add_term(c, {multiplier, u});
  add_term(e.constant(), {multiplier});
}

std::size_t polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [fs, c] : terms_) d = std::max(d, fs.size());
  return d;
}

std::string polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [fs, c] : terms_) {
    rational a = c;
    if (first) {
      if (a.sign() < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool need_coeff = fs.empty() || a != rational(1);
    if (need_coeff) os << a.str();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (need_coeff || i) os << "*";
      os << fs[i];
    }
  }
  return os.str();
}

std::string poly_atom::str() const {
  const char* rel_text = "";
  switch (rel) {
    case poly_rel::eq: rel_text = " = 0"; break;
    case poly_rel::le: rel_text = " <= 0"; break;
    case poly_rel::lt: rel_text = " < 0"; break;
    case poly_rel::gt: rel_text = " > 0"; break;
    case poly_rel::ge: rel_text = " >= 0"; break;
  }
  return lhs.str() + rel_text;
}

std::string exists_constraint::str() const {
  std::ostringstream os;
  for (const auto& clause : clauses) {
    for (std::size_t i = 0; i < clause.alternatives.size(); ++i) {
      if (i) os << "  or  ";
      os << clause.alternatives[i].str();
    }
    os << "\n";
  }
  return os.str();
}

void motzkin_transform(const std::vector<lin_row>& nonstrict,
                       const std::vector<lin_row>& strict,
                       const std::vector<std::string>& universal_vars,
                       const std::string& tag, exists_constraint& out) {
  if (nonstrict.empty() && strict.empty())
    throw error("motzkin_transform: empty system has no infeasibility certificate");

  std::vector<std::string> lams, mus;
  for (std::size_t r = 1; r <= nonstrict.size(); ++r)
    lams.push_back("lam_" + tag + "_" + std::to_string(r));
  for (std::size_t r = 1; r <= strict.size(); ++r)
    mus.push_back("mu_" + tag + "_" + std::to_string(r));
  for (const auto& n : lams) out.unknowns.push_back({n, unknown_role::mult_nonstrict});
  for (const auto& n : mus) out.unknowns.push_back({n, unknown_role::mult_strict});

  auto nonneg = [&](const std::string& n) {
    poly_atom a;
    a.lhs.add_term(rational(1), {n});
    a.rel = poly_rel::ge;
    out.clauses.push_back({{a}});
  };
  for (const auto& n : lams) nonneg(n);
  for (const auto& n : mus) nonneg(n);

  // One cancellation equation per universally quantified variable.
  for (const auto& v : universal_vars) {
    poly_atom eq;
    eq.rel = poly_rel::eq;
    for (std::size_t r = 0; r < nonstrict.size(); ++r) {
      auto it = nonstrict[r].coeffs.find(v);
      if (it != nonstrict[r].coeffs.end()) eq.lhs.add_scaled(lams[r], it->second);
    }
    for (std::size_t r = 0; r < strict.size(); ++r) {
      auto it = strict[r].coeffs.find(v);
      if (it != strict[r].coeffs.end()) eq.lhs.add_scaled(mus[r], it->second);
    }
    out.clauses.push_back({{eq}});
  }

  polynomial lam_bound, full_bound;
  for (std::size_t r = 0; r < nonstrict.size(); ++r)
    lam_bound.add_scaled(lams[r], nonstrict[r].bound);
  full_bound = lam_bound;
  for (std::size_t r = 0; r < strict.size(); ++r)
    full_bound.add_scaled(mus[r], strict[r].bound);

  {
    poly_atom le;
    le.lhs = full_bound;
    le.rel = poly_rel::le;
    out.clauses.push_back({{le}});
  }

  // lam*b < 0, or some strict multiplier is positive. A side with no
  // multipliers is an empty sum and drops out of the disjunction.
  poly_clause final_clause;
  if (!nonstrict.empty()) {
    poly_atom neg;
    neg.lhs = lam_bound;
    neg.rel = poly_rel::lt;
    final_clause.alternatives.push_back(std::move(neg));
  }
  if (!strict.empty()) {
    poly_atom some_mu;
    for (const auto& n : mus) some_mu.lhs.add_term(rational(1), {n});
    some_mu.rel = poly_rel::gt;
    final_clause.alternatives.push_back(std::move(some_mu));
  }
  out.clauses.push_back(std::move(final_clause));
}

namespace {

// Loop atom "expr <= 0" (or < 0) as the row "coeffs * z <= -constant".
lin_row row_of_program_atom(const linear_atom& a) {
  lin_row r;
  for (const auto& [v, c] : a.expr.coeffs()) r.coeffs[v] = affine_expr(c);
  r.bound = affine_expr(-a.expr.constant());
  return r;
}

// Negated template atom: "row*z + offset > 0" denies as "row*z <= -offset"
// (nonstrict), "row*z + offset >= 0" denies as "row*z < -offset" (strict).
lin_row row_of_negated_template_atom(const normalized_atom& a) {
  lin_row r;
  r.coeffs = a.row;
  r.bound = -a.offset;
  return r;
}

void append_guard_rows(const guard& g, std::vector<lin_row>& nonstrict,
                       std::vector<lin_row>& strict) {
  for (const auto& a : g)
    (a.rel == rel_op::le ? nonstrict : strict).push_back(row_of_program_atom(a));
}

struct invariant_rows {
  // psi(x) as an assumption row over x, and building blocks for the
  // negated forms used by the initiation and consecution systems.
  invariant_info info;
  affine_expr psi;  // over inv unknowns paired with program vars via names
};

std::string inv_coeff_name(std::size_t i, std::size_t j, std::size_t l,
                           const std::string& var) {
  std::ostringstream os;
  os << "inv_" << i << "_" << j << "_" << l << "_" << var;
  return os.str();
}

std::string inv_offset_name(std::size_t i, std::size_t j, std::size_t l) {
  std::ostringstream os;
  os << "inv0_" << i << "_" << j << "_" << l;
  return os.str();
}

// psi = sum_v w_v * v + w0, rel >= 0 (or > 0). Assumption row: -psi <= 0.
// On primed variables the same coefficients apply to x'.
lin_row psi_assumption_row(const invariant_info& inv,
                           const std::vector<std::string>& vars, bool on_primed) {
  lin_row r;
  for (const auto& v : vars) {
    affine_expr e;
    e.add_term(inv.coeff_names.at(v), rational(-1));
    r.coeffs[on_primed ? primed(v) : v] = std::move(e);
  }
  r.bound = affine_expr();
  r.bound.add_term(inv.offset_name, rational(1));
  return r;
}

// Negation of psi rel 0: for psi >= 0 the denial is psi < 0 (strict row
// psi*z < -w0); for psi > 0 the denial is psi <= 0 (nonstrict row).
lin_row psi_negation_row(const invariant_info& inv, const std::vector<std::string>& vars,
                         bool on_primed) {
  lin_row r;
  for (const auto& v : vars) {
    affine_expr e;
    e.add_term(inv.coeff_names.at(v), rational(1));
    r.coeffs[on_primed ? primed(v) : v] = std::move(e);
  }
  r.bound = affine_expr();
  r.bound.add_term(inv.offset_name, rational(-1));
  return r;
}

// Certificates scale: multiplying one system's multipliers by a positive
// factor preserves every condition, so capping each multiplier at 1 keeps
// the same template unknowns solvable. The cap closes the open multiplier
// cone into a box, which nonlinear solvers search far better.
void cap_multipliers(exists_constraint& out) {
  for (const auto& u : out.unknowns) {
    if (u.role != unknown_role::mult_nonstrict && u.role != unknown_role::mult_strict)
      continue;
    poly_atom cap;
    cap.lhs.add_term(rational(1), {});
    cap.lhs.add_term(rational(-1), {u.name});
    cap.rel = poly_rel::ge;
    out.clauses.push_back({{cap}});
  }
}

}  // namespace

exists_constraint generate_synthesis_constraint(const std::vector<guard>& loop,
                                                const cnf_template& tmpl,
                                                const std::vector<std::string>& vars) {
  lasso_program p;
  p.vars = vars;
  p.stem = {{}};
  p.loop = loop;
  lasso_options opts;
  opts.invariants = 0;
  return generate_lasso_constraint(p, tmpl, opts);
}

exists_constraint generate_lasso_constraint(const lasso_program& prog,
                                            const cnf_template& tmpl,
                                            const lasso_options& opts) {
  exists_constraint out;
  for (const auto& u : tmpl.unknowns) {
    bool is_param = std::find(tmpl.parameter_unknowns.begin(), tmpl.parameter_unknowns.end(),
                              u) != tmpl.parameter_unknowns.end();
    out.unknowns.push_back({u, is_param ? unknown_role::parameter : unknown_role::fun_coeff});
  }

  // Step sizes are existentially quantified positive. Composed templates
  // keep their positivity atoms inside disjunctive clauses, where an unused
  // part could leave its step at zero; pinned here they never do.
  for (const auto& p : tmpl.parameter_unknowns) {
    poly_atom pos;
    pos.lhs.add_term(rational(1), {p});
    pos.rel = poly_rel::gt;
    out.clauses.push_back({{pos}});
  }

  const std::vector<std::string> trans_vars = prog.transition_vars();

  // Invariant templates, m per (i, j) system.
  std::vector<std::vector<std::vector<invariant_info>>> invs;  // [i][j] -> list
  if (opts.invariants > 0) {
    invs.resize(prog.loop.size());
    for (std::size_t i = 0; i < prog.loop.size(); ++i) {
      invs[i].resize(tmpl.clauses.size());
      for (std::size_t j = 0; j < tmpl.clauses.size(); ++j) {
        for (std::size_t l = 1; l <= opts.invariants; ++l) {
          invariant_info inv;
          inv.disjunct = i + 1;
          inv.clause = j + 1;
          inv.index = l;
          inv.strict = opts.strict_invariants;
          for (const auto& v : prog.vars)
            inv.coeff_names[v] = inv_coeff_name(i + 1, j + 1, l, v);
          inv.offset_name = inv_offset_name(i + 1, j + 1, l);
          invs[i][j].push_back(inv);
        }
      }
    }
    for (const auto& per_i : invs)
      for (const auto& per_j : per_i)
        for (const auto& inv : per_j) {
          for (const auto& v : prog.vars)
            out.unknowns.push_back({inv.coeff_names.at(v), unknown_role::inv_coeff});
          out.unknowns.push_back({inv.offset_name, unknown_role::inv_coeff});
          out.invariants.push_back(inv);
        }
  }

  // Main systems: disjunct i, invariants for (i, j), negated clause j.
  for (std::size_t i = 0; i < prog.loop.size(); ++i) {
    for (std::size_t j = 0; j < tmpl.clauses.size(); ++j) {
      std::vector<lin_row> nonstrict, strict;
      append_guard_rows(prog.loop[i], nonstrict, strict);
      if (opts.invariants > 0)
        for (const auto& inv : invs[i][j])
          (inv.strict ? strict : nonstrict).push_back(psi_assumption_row(inv, prog.vars, false));
      for (const auto& a : tmpl.clauses[j])
        (a.strict ? nonstrict : strict).push_back(row_of_negated_template_atom(a));
      std::ostringstream tag;
      tag << (i + 1) << "_" << (j + 1);
      motzkin_transform(nonstrict, strict, trans_vars, tag.str(), out);
    }
  }

  if (opts.invariants == 0) {
    cap_multipliers(out);
    return out;
  }

  // Initiation: after any stem disjunct, every invariant holds.
  for (std::size_t s = 0; s < prog.stem.size(); ++s) {
    for (const auto& per_i : invs)
      for (const auto& per_j : per_i)
        for (const auto& inv : per_j) {
          std::vector<lin_row> nonstrict, strict;
          append_guard_rows(prog.stem[s], nonstrict, strict);
          (inv.strict ? nonstrict : strict).push_back(psi_negation_row(inv, prog.vars, false));
          std::ostringstream tag;
          tag << "ii_" << (s + 1) << "_" << inv.disjunct << "_" << inv.clause << "_"
              << inv.index;
          motzkin_transform(nonstrict, strict, prog.vars, tag.str(), out);
        }
  }

  // Consecution: every loop disjunct preserves every invariant.
  for (std::size_t r = 0; r < prog.loop.size(); ++r) {
    for (const auto& per_i : invs)
      for (const auto& per_j : per_i)
        for (const auto& inv : per_j) {
          std::vector<lin_row> nonstrict, strict;
          append_guard_rows(prog.loop[r], nonstrict, strict);
          (inv.strict ? strict : nonstrict).push_back(psi_assumption_row(inv, prog.vars, false));
          (inv.strict ? nonstrict : strict).push_back(psi_negation_row(inv, prog.vars, true));
          std::ostringstream tag;
          tag << "ic_" << (r + 1) << "_" << inv.disjunct << "_" << inv.clause << "_"
              << inv.index;
          motzkin_transform(nonstrict, strict, trans_vars, tag.str(), out);

          if (opts.nondecreasing) {
            // The invariant's affine function may never decrease along the
            // loop: deny psi(x) and the loop and f(x') < f(x).
            std::vector<lin_row> nd_nonstrict, nd_strict;
            append_guard_rows(prog.loop[r], nd_nonstrict, nd_strict);
            (inv.strict ? nd_strict : nd_nonstrict)
                .push_back(psi_assumption_row(inv, prog.vars, false));
            lin_row drop;
            for (const auto& v : prog.vars) {
              affine_expr up, down;
              up.add_term(inv.coeff_names.at(v), rational(1));
              down.add_term(inv.coeff_names.at(v), rational(-1));
              drop.coeffs[primed(v)] = std::move(up);
              drop.coeffs[v] = std::move(down);
            }
            drop.bound = affine_expr();
            nd_strict.push_back(std::move(drop));
            std::ostringstream nd_tag;
            nd_tag << "nd_" << (r + 1) << "_" << inv.disjunct << "_" << inv.clause << "_"
                   << inv.index;
            motzkin_transform(nd_nonstrict, nd_strict, trans_vars, nd_tag.str(), out);
          }
        }
  }

  cap_multipliers(out);
  return out;
}

}  // namespace rankforge
