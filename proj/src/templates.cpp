/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/templates.hpp"

#include <cctype>
#include <sstream>

namespace rankforge {

template_body template_body::atom(template_atom a) {
  template_body b;
  b.k = kind::atom;
  b.at = std::move(a);
  return b;
}

template_body template_body::conj(std::vector<template_body> kids) {
  template_body b;
  b.k = kind::conj;
  b.kids = std::move(kids);
  return b;
}

template_body template_body::disj(std::vector<template_body> kids) {
  template_body b;
  b.k = kind::disj;
  b.kids = std::move(kids);
  return b;
}

std::string shape_kind_name(shape_node::kind k) {
  switch (k) {
    case shape_node::kind::pr: return "pr";
    case shape_node::kind::phase: return "phase";
    case shape_node::kind::nested: return "nested";
    case shape_node::kind::piece: return "piece";
    case shape_node::kind::lex: return "lex";
    case shape_node::kind::parallel: return "parallel";
  }
  return "?";
}

std::string coeff_unknown(const std::string& symbol, const std::string& var) {
  return "s_" + symbol + "_" + var;
}

std::string offset_unknown(const std::string& symbol) { return "t_" + symbol; }

namespace {

// Atom factories; names refer to declared symbols of the template.

template_atom a_param_pos(const std::string& d) {
  template_atom a;
  a.gamma[d] = rational(1);  // d > 0
  return a;
}

template_atom a_pos(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(1);  // f(x) > 0
  return a;
}

template_atom a_neg_now(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(-1);  // -f(x) > 0, i.e. f(x) < 0
  return a;
}

template_atom a_neg_next(const std::string& f) {
  template_atom a;
  a.beta[f] = rational(-1);  // -f(x') > 0, i.e. f(x') < 0
  return a;
}

template_atom a_nonneg_now(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(1);
  a.strict = false;  // f(x) >= 0
  return a;
}

// f(x) - f(x') - d > 0, i.e. f decreases by more than d.
template_atom a_dec(const std::string& f, const std::string& d) {
  template_atom a;
  a.alpha[f] = rational(1);
  a.beta[f] = rational(-1);
  a.gamma[d] = rational(-1);
  return a;
}

// f(x) - f(x') >= 0, i.e. f does not increase.
template_atom a_noninc(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(1);
  a.beta[f] = rational(-1);
  a.strict = false;
  return a;
}

std::string indexed(const std::string& base, unsigned i) {
  std::ostringstream os;
  os << base << "_" << i;
  return os.str();
}

ranking_template make_pr() {
  ranking_template t;
  t.spec = "pr";
  t.parameters = {"delta"};
  t.symbols = {"f"};
  t.body = template_body::conj({
      template_body::atom(a_param_pos("delta")),
      template_body::atom(a_pos("f")),
      template_body::atom(a_dec("f", "delta")),
  });
  t.shape.k = shape_node::kind::pr;
  t.shape.fs = {"f"};
  t.shape.deltas = {"delta"};
  return t;
}

ranking_template make_phase(unsigned k) {
  ranking_template t;
  t.spec = "phase:" + std::to_string(k);
  std::vector<template_body> kids;
  for (unsigned i = 1; i <= k; ++i) {
    t.parameters.push_back(indexed("delta", i));
    t.symbols.push_back(indexed("f", i));
  }
  for (const auto& d : t.parameters) kids.push_back(template_body::atom(a_param_pos(d)));
  std::vector<template_body> some_pos;
  for (const auto& f : t.symbols) some_pos.push_back(template_body::atom(a_pos(f)));
  kids.push_back(template_body::disj(std::move(some_pos)));
  kids.push_back(template_body::atom(a_dec(t.symbols[0], t.parameters[0])));
  for (unsigned i = 2; i <= k; ++i) {
    kids.push_back(template_body::disj({
        template_body::atom(a_dec(t.symbols[i - 1], t.parameters[i - 1])),
        template_body::atom(a_pos(t.symbols[i - 2])),
    }));
  }
  t.body = template_body::conj(std::move(kids));
  t.shape.k = shape_node::kind::phase;
  t.shape.fs = t.symbols;
  t.shape.deltas = t.parameters;
  return t;
}

ranking_template make_nested(unsigned k) {
  ranking_template t;
  t.spec = "nested:" + std::to_string(k);
  t.parameters = {"delta"};
  for (unsigned i = 1; i <= k; ++i) t.symbols.push_back(indexed("f", i));
  std::vector<template_body> kids;
  kids.push_back(template_body::atom(a_param_pos("delta")));
  kids.push_back(template_body::atom(a_pos(t.symbols[k - 1])));
  kids.push_back(template_body::atom(a_dec(t.symbols[0], "delta")));
  for (unsigned i = 2; i <= k; ++i) {
    // f_i(x) + f_{i-1}(x) - f_i(x') > 0
    template_atom a;
    a.alpha[t.symbols[i - 1]] = rational(1);
    a.alpha[t.symbols[i - 2]] = rational(1);
    a.beta[t.symbols[i - 1]] = rational(-1);
    kids.push_back(template_body::atom(std::move(a)));
  }
  t.body = template_body::conj(std::move(kids));
  t.shape.k = shape_node::kind::nested;
  t.shape.fs = t.symbols;
  t.shape.deltas = t.parameters;
  return t;
}

ranking_template make_piece(unsigned k) {
  ranking_template t;
  t.spec = "piece:" + std::to_string(k);
  t.parameters = {"delta"};
  std::vector<std::string> fs, gs;
  for (unsigned i = 1; i <= k; ++i) fs.push_back(indexed("f", i));
  for (unsigned i = 1; i <= k; ++i) gs.push_back(indexed("g", i));
  t.symbols = fs;
  t.symbols.insert(t.symbols.end(), gs.begin(), gs.end());
  std::vector<template_body> kids;
  kids.push_back(template_body::atom(a_param_pos("delta")));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      // g_i(x) < 0 or g_j(x') < 0 or f_j(x') < f_i(x) - delta
      template_atom cross;
      cross.alpha[fs[i]] = rational(1);
      cross.beta[fs[j]] = rational(-1);
      cross.gamma["delta"] = rational(-1);
      kids.push_back(template_body::disj({
          template_body::atom(a_neg_now(gs[i])),
          template_body::atom(a_neg_next(gs[j])),
          template_body::atom(std::move(cross)),
      }));
    }
  for (const auto& f : fs) kids.push_back(template_body::atom(a_pos(f)));
  std::vector<template_body> covers;
  for (const auto& g : gs) covers.push_back(template_body::atom(a_nonneg_now(g)));
  kids.push_back(template_body::disj(std::move(covers)));
  t.body = template_body::conj(std::move(kids));
  t.shape.k = shape_node::kind::piece;
  t.shape.fs = fs;
  t.shape.gs = gs;
  t.shape.deltas = {"delta"};
  return t;
}

ranking_template make_lex(unsigned k) {
  ranking_template t;
  t.spec = "lex:" + std::to_string(k);
  for (unsigned i = 1; i <= k; ++i) {
    t.parameters.push_back(indexed("delta", i));
    t.symbols.push_back(indexed("f", i));
  }
  std::vector<template_body> kids;
  for (const auto& d : t.parameters) kids.push_back(template_body::atom(a_param_pos(d)));
  for (const auto& f : t.symbols) kids.push_back(template_body::atom(a_pos(f)));
  for (unsigned i = 1; i + 1 <= k; ++i) {
    std::vector<template_body> alts;
    alts.push_back(template_body::atom(a_noninc(t.symbols[i - 1])));
    for (unsigned j = 1; j < i; ++j)
      alts.push_back(template_body::atom(a_dec(t.symbols[j - 1], t.parameters[j - 1])));
    kids.push_back(alts.size() == 1 ? std::move(alts[0])
                                    : template_body::disj(std::move(alts)));
  }
  std::vector<template_body> some_dec;
  for (unsigned i = 0; i < k; ++i)
    some_dec.push_back(template_body::atom(a_dec(t.symbols[i], t.parameters[i])));
  kids.push_back(template_body::disj(std::move(some_dec)));
  t.body = template_body::conj(std::move(kids));
  t.shape.k = shape_node::kind::lex;
  t.shape.fs = t.symbols;
  t.shape.deltas = t.parameters;
  return t;
}

ranking_template make_parallel(unsigned k) {
  ranking_template t;
  t.spec = "parallel:" + std::to_string(k);
  for (unsigned i = 1; i <= k; ++i) {
    t.parameters.push_back(indexed("delta", i));
    t.symbols.push_back(indexed("f", i));
  }
  std::vector<template_body> kids;
  for (const auto& d : t.parameters) kids.push_back(template_body::atom(a_param_pos(d)));
  for (const auto& f : t.symbols) kids.push_back(template_body::atom(a_noninc(f)));
  std::vector<template_body> tasks;
  for (unsigned i = 0; i < k; ++i)
    tasks.push_back(template_body::conj({
        template_body::atom(a_pos(t.symbols[i])),
        template_body::atom(a_dec(t.symbols[i], t.parameters[i])),
    }));
  kids.push_back(template_body::disj(std::move(tasks)));
  t.body = template_body::conj(std::move(kids));
  t.shape.k = shape_node::kind::parallel;
  t.shape.fs = t.symbols;
  t.shape.deltas = t.parameters;
  return t;
}

}  // namespace

ranking_template build_template(shape_node::kind kind, unsigned k) {
  if (k == 0) throw error("build_template: k must be at least 1");
  switch (kind) {
    case shape_node::kind::pr: return make_pr();
    case shape_node::kind::phase: return make_phase(k);
    case shape_node::kind::nested: return make_nested(k);
    case shape_node::kind::piece: return make_piece(k);
    case shape_node::kind::lex: return make_lex(k);
    case shape_node::kind::parallel: return make_parallel(k);
  }
  throw error("build_template: unknown kind");
}

namespace {

bool split_spec(const std::string& spec, std::string& name, unsigned& k) {
  auto colon = spec.find(':');
  name = spec.substr(0, colon);
  k = 1;
  if (colon == std::string::npos) return name == "pr";
  const std::string num = spec.substr(colon + 1);
  if (num.empty()) return false;
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  unsigned long v = std::stoul(num);
  if (v == 0 || v > 64) return false;
  k = static_cast<unsigned>(v);
  return name == "phase" || name == "nested" || name == "piece" || name == "lex" ||
         name == "parallel";
}

}  // namespace

bool is_template_spec(const std::string& spec) {
  std::string name;
  unsigned k;
  return split_spec(spec, name, k);
}

ranking_template build_template(const std::string& spec) {
  std::string name;
  unsigned k;
  if (!split_spec(spec, name, k))
    throw error("unknown template spec '" + spec + "'");
  if (name == "pr") return build_template(shape_node::kind::pr, 1);
  if (name == "phase") return build_template(shape_node::kind::phase, k);
  if (name == "nested") return build_template(shape_node::kind::nested, k);
  if (name == "piece") return build_template(shape_node::kind::piece, k);
  if (name == "lex") return build_template(shape_node::kind::lex, k);
  return build_template(shape_node::kind::parallel, k);
}

namespace {

using atom_cnf = std::vector<std::vector<const template_atom*>>;

atom_cnf body_cnf(const template_body& b, std::size_t cap) {
  switch (b.k) {
    case template_body::kind::atom:
      return {{&b.at}};
    case template_body::kind::conj: {
      atom_cnf out;
      for (const auto& kid : b.kids) {
        atom_cnf sub = body_cnf(kid, cap);
        out.insert(out.end(), sub.begin(), sub.end());
        if (out.size() > cap) throw error("to_cnf: clause limit exceeded");
      }
      return out;
    }
    case template_body::kind::disj: {
      atom_cnf out = {{}};
      for (const auto& kid : b.kids) {
        atom_cnf sub = body_cnf(kid, cap);
        if (out.size() * sub.size() > cap) throw error("to_cnf: clause limit exceeded");
        atom_cnf next;
        next.reserve(out.size() * sub.size());
        for (const auto& left : out)
          for (const auto& right : sub) {
            auto clause = left;
            clause.insert(clause.end(), right.begin(), right.end());
            next.push_back(std::move(clause));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  throw error("template_body: corrupt node");
}

normalized_atom normalize(const template_atom& a, const std::vector<std::string>& vars) {
  normalized_atom n;
  n.strict = a.strict;
  for (const auto& [f, c] : a.alpha) {
    for (const auto& v : vars) {
      affine_expr& cell = n.row[v];
      cell.add_term(coeff_unknown(f, v), c);
    }
    n.offset.add_term(offset_unknown(f), c);
  }
  for (const auto& [f, c] : a.beta) {
    for (const auto& v : vars) {
      affine_expr& cell = n.row[primed(v)];
      cell.add_term(coeff_unknown(f, v), c);
    }
    n.offset.add_term(offset_unknown(f), c);
  }
  for (const auto& [d, c] : a.gamma) n.offset.add_term(d, c);
  // Drop rows that cancelled to zero so the map stays sparse.
  for (auto it = n.row.begin(); it != n.row.end();)
    it = it->second.is_zero() ? n.row.erase(it) : std::next(it);
  return n;
}

}  // namespace

cnf_template to_cnf(const ranking_template& t, const std::vector<std::string>& vars,
                    std::size_t max_clauses) {
  cnf_template out;
  out.spec = t.spec;
  out.shape = t.shape;
  for (const auto& f : t.symbols) {
    for (const auto& v : vars) out.unknowns.push_back(coeff_unknown(f, v));
    out.unknowns.push_back(offset_unknown(f));
  }
  for (const auto& d : t.parameters) out.unknowns.push_back(d);
  out.parameter_unknowns = t.parameters;
  for (const auto& clause : body_cnf(t.body, max_clauses)) {
    std::vector<normalized_atom> c;
    c.reserve(clause.size());
    for (const template_atom* a : clause) c.push_back(normalize(*a, vars));
    out.clauses.push_back(std::move(c));
  }
  return out;
}

template_statistics template_stats(const ranking_template& t, std::size_t max_clauses) {
  template_statistics s;
  s.parameters = t.parameters.size();
  s.symbols = t.symbols.size();
  auto cnf = body_cnf(t.body, max_clauses);
  s.cnf_conjuncts = cnf.size();
  for (const auto& clause : cnf) s.cnf_atoms += clause.size();
  return s;
}

namespace {

rational lookup(const assignment& nu, const std::string& name) {
  auto it = nu.find(name);
  if (it == nu.end()) throw error("instantiate: no value for unknown '" + name + "'");
  return it->second;
}

formula instantiate_body(const template_body& b, const std::vector<std::string>& vars,
                         const assignment& nu) {
  switch (b.k) {
    case template_body::kind::atom: {
      affine_expr e;
      for (const auto& [f, c] : b.at.alpha) {
        for (const auto& v : vars) e.add_term(v, c * lookup(nu, coeff_unknown(f, v)));
        e.add_constant(c * lookup(nu, offset_unknown(f)));
      }
      for (const auto& [f, c] : b.at.beta) {
        for (const auto& v : vars) e.add_term(primed(v), c * lookup(nu, coeff_unknown(f, v)));
        e.add_constant(c * lookup(nu, offset_unknown(f)));
      }
      for (const auto& [d, c] : b.at.gamma) e.add_constant(c * lookup(nu, d));
      // e > 0 becomes -e < 0; e >= 0 becomes -e <= 0.
      linear_atom a;
      a.expr = -e;
      a.rel = b.at.strict ? rel_op::lt : rel_op::le;
      return formula::atom(std::move(a));
    }
    case template_body::kind::conj:
    case template_body::kind::disj: {
      std::vector<formula> kids;
      kids.reserve(b.kids.size());
      for (const auto& kid : b.kids) kids.push_back(instantiate_body(kid, vars, nu));
      return b.k == template_body::kind::conj ? formula::conj(std::move(kids))
                                              : formula::disj(std::move(kids));
    }
  }
  throw error("template_body: corrupt node");
}

}  // namespace

formula instantiate(const ranking_template& t, const std::vector<std::string>& vars,
                    const assignment& nu) {
  return instantiate_body(t.body, vars, nu);
}

}  // namespace rankforge
