/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/ranking.hpp"

#include <sstream>

namespace rankforge {

mpz_class ordinal_equiv(const affine_expr& f, const rational& delta,
                        const std::map<std::string, rational>& x) {
  if (delta.sign() <= 0) throw error("ordinal equivalent needs a positive step size");
  rational v = f.evaluate(x);
  if (v.sign() <= 0) return 0;
  return (v / delta).ceil();
}

std::string ranking_kind_name(ranking_function::kind k) {
  switch (k) {
    case ranking_function::kind::pr: return "pr";
    case ranking_function::kind::phase: return "phase";
    case ranking_function::kind::nested_phase: return "nested-via-phase";
    case ranking_function::kind::piece: return "piece";
    case ranking_function::kind::lex: return "lex";
    case ranking_function::kind::parallel: return "parallel";
    case ranking_function::kind::composed_phase: return "composed-phase";
    case ranking_function::kind::composed_lex: return "composed-lex";
    case ranking_function::kind::composed_parallel: return "composed-parallel";
  }
  return "?";
}

namespace {

rational lookup(const assignment& nu, const std::string& name) {
  auto it = nu.find(name);
  if (it == nu.end()) throw error("assignment missing value for '" + name + "'");
  return it->second;
}

affine_expr symbol_fn(const std::string& sym, const std::vector<std::string>& vars,
                      const assignment& nu) {
  affine_expr e(lookup(nu, offset_unknown(sym)));
  for (const auto& v : vars) e.set_coeff(v, lookup(nu, coeff_unknown(sym, v)));
  return e;
}

rational positive_step(const assignment& nu, const std::string& name) {
  rational d = lookup(nu, name);
  if (d.sign() <= 0) throw error("step size " + name + " = " + d.str() + " is not positive");
  return d;
}

}  // namespace

ranking_function extract_ranking_function(const shape_node& shape,
                                          const std::vector<std::string>& vars,
                                          const assignment& nu) {
  ranking_function rf;
  if (shape.composed) {
    switch (shape.k) {
      case shape_node::kind::phase: rf.k = ranking_function::kind::composed_phase; break;
      case shape_node::kind::lex: rf.k = ranking_function::kind::composed_lex; break;
      case shape_node::kind::parallel: rf.k = ranking_function::kind::composed_parallel; break;
      default: throw error("composed shape must be phase, lex or parallel");
    }
    for (const auto& c : shape.children)
      rf.children.push_back(extract_ranking_function(c, vars, nu));
    return rf;
  }
  switch (shape.k) {
    case shape_node::kind::pr:
      rf.k = ranking_function::kind::pr;
      rf.components.push_back(
          {symbol_fn(shape.fs[0], vars, nu), positive_step(nu, shape.deltas[0])});
      return rf;
    case shape_node::kind::phase:
      rf.k = ranking_function::kind::phase;
      for (std::size_t i = 0; i < shape.fs.size(); ++i)
        rf.components.push_back(
            {symbol_fn(shape.fs[i], vars, nu), positive_step(nu, shape.deltas[i])});
      return rf;
    case shape_node::kind::nested: {
      // Lift to the phase assignment that maps back to this one: every
      // component but the innermost gains delta as an offset.
      rf.k = ranking_function::kind::nested_phase;
      rational d = positive_step(nu, shape.deltas[0]);
      for (std::size_t i = 0; i < shape.fs.size(); ++i) {
        affine_expr f = symbol_fn(shape.fs[i], vars, nu);
        if (i + 1 < shape.fs.size()) f.add_constant(d);
        rf.components.push_back({std::move(f), d});
      }
      return rf;
    }
    case shape_node::kind::piece: {
      rf.k = ranking_function::kind::piece;
      rational d = positive_step(nu, shape.deltas[0]);
      for (std::size_t i = 0; i < shape.fs.size(); ++i) {
        rf.components.push_back({symbol_fn(shape.fs[i], vars, nu), d});
        rf.discriminators.push_back(symbol_fn(shape.gs[i], vars, nu));
      }
      return rf;
    }
    case shape_node::kind::lex:
      rf.k = ranking_function::kind::lex;
      for (std::size_t i = 0; i < shape.fs.size(); ++i)
        rf.components.push_back(
            {symbol_fn(shape.fs[i], vars, nu), positive_step(nu, shape.deltas[i])});
      return rf;
    case shape_node::kind::parallel:
      rf.k = ranking_function::kind::parallel;
      for (std::size_t i = 0; i < shape.fs.size(); ++i)
        rf.components.push_back(
            {symbol_fn(shape.fs[i], vars, nu), positive_step(nu, shape.deltas[i])});
      return rf;
  }
  throw error("unknown template shape");
}

ordinal codomain_bound(const ranking_function& rf) {
  switch (rf.k) {
    case ranking_function::kind::pr:
    case ranking_function::kind::piece:
    case ranking_function::kind::parallel:
      return ordinal::omega();
    case ranking_function::kind::phase:
    case ranking_function::kind::nested_phase:
      return ordinal::omega_power(1, mpz_class(static_cast<unsigned long>(rf.components.size())));
    case ranking_function::kind::lex:
      return ordinal::omega_power(static_cast<unsigned>(rf.components.size()));
    case ranking_function::kind::composed_phase: {
      // alpha_k + ... + alpha_1; later parts must sit below the offsets of
      // earlier ones, so the sum runs from the last child down to the first.
      ordinal b;
      for (auto it = rf.children.rbegin(); it != rf.children.rend(); ++it)
        b = b + codomain_bound(*it);
      return b;
    }
    case ranking_function::kind::composed_lex: {
      // alpha_k * ... * alpha_1, matching the place values built below.
      ordinal p = ordinal::from_integer(1);
      for (auto it = rf.children.rbegin(); it != rf.children.rend(); ++it)
        p = p * codomain_bound(*it);
      return p;
    }
    case ranking_function::kind::composed_parallel: {
      ordinal b;
      for (const auto& c : rf.children) b = natural_sum(b, codomain_bound(c));
      return b;
    }
  }
  throw error("unknown ranking function kind");
}

bool ranks_positive(const ranking_function& rf, const std::map<std::string, rational>& x) {
  auto any_component = [&] {
    for (const auto& c : rf.components)
      if (c.f.evaluate(x).sign() > 0) return true;
    return false;
  };
  auto all_components = [&] {
    for (const auto& c : rf.components)
      if (c.f.evaluate(x).sign() <= 0) return false;
    return true;
  };
  switch (rf.k) {
    case ranking_function::kind::pr:
    case ranking_function::kind::phase:
    case ranking_function::kind::nested_phase:
    case ranking_function::kind::parallel:
      return any_component();
    case ranking_function::kind::piece:
    case ranking_function::kind::lex:
      return all_components();
    case ranking_function::kind::composed_phase:
    case ranking_function::kind::composed_parallel:
      for (const auto& c : rf.children)
        if (ranks_positive(c, x)) return true;
      return false;
    case ranking_function::kind::composed_lex:
      for (const auto& c : rf.children)
        if (!ranks_positive(c, x)) return false;
      return true;
  }
  throw error("unknown ranking function kind");
}

namespace {

ordinal eval_impl(const ranking_function& rf, const std::map<std::string, rational>& x,
                  bool& gap) {
  switch (rf.k) {
    case ranking_function::kind::pr:
      return ordinal::from_integer(
          ordinal_equiv(rf.components[0].f, rf.components[0].delta, x));
    case ranking_function::kind::phase:
    case ranking_function::kind::nested_phase: {
      std::size_t k = rf.components.size();
      for (std::size_t i = 0; i < k; ++i) {
        const auto& c = rf.components[i];
        if (c.f.evaluate(x).sign() > 0) {
          ordinal off =
              ordinal::omega_power(1, mpz_class(static_cast<unsigned long>(k - i - 1)));
          return off + ordinal::from_integer(ordinal_equiv(c.f, c.delta, x));
        }
      }
      return ordinal();
    }
    case ranking_function::kind::piece: {
      bool found = false;
      mpz_class best = 0;
      for (std::size_t i = 0; i < rf.components.size(); ++i) {
        if (rf.discriminators[i].evaluate(x).sign() < 0) continue;
        mpz_class v = ordinal_equiv(rf.components[i].f, rf.components[i].delta, x);
        if (!found || v > best) best = v;
        found = true;
      }
      if (!found) {
        gap = true;
        return ordinal();
      }
      return ordinal::from_integer(best);
    }
    case ranking_function::kind::lex: {
      std::size_t k = rf.components.size();
      ordinal acc;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& c = rf.components[i];
        acc = acc + ordinal::omega_power(static_cast<unsigned>(k - i - 1),
                                         ordinal_equiv(c.f, c.delta, x));
      }
      return acc;
    }
    case ranking_function::kind::parallel: {
      mpz_class sum = 0;
      for (const auto& c : rf.components) sum += ordinal_equiv(c.f, c.delta, x);
      return ordinal::from_integer(sum);
    }
    case ranking_function::kind::composed_phase: {
      std::size_t k = rf.children.size();
      std::size_t active = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (ranks_positive(rf.children[i], x)) {
          active = i;
          break;
        }
      }
      if (active == k) return ordinal();
      // Offset by the bounds of the parts not yet entered, largest index
      // first, so entering the next part always drops below this value.
      ordinal acc;
      for (std::size_t j = k; j > active + 1; --j)
        acc = acc + codomain_bound(rf.children[j - 1]);
      return acc + eval_impl(rf.children[active], x, gap);
    }
    case ranking_function::kind::composed_lex: {
      std::size_t k = rf.children.size();
      // Place value of part i is the product of the bounds of the parts
      // after it; the product multiplies from the left so a unit decrease
      // in part i dominates every later place.
      std::vector<ordinal> places(k);
      places[k - 1] = ordinal::from_integer(1);
      for (std::size_t i = k - 1; i > 0; --i)
        places[i - 1] = places[i] * codomain_bound(rf.children[i]);
      ordinal acc;
      for (std::size_t i = 0; i < k; ++i)
        acc = acc + places[i] * eval_impl(rf.children[i], x, gap);
      return acc;
    }
    case ranking_function::kind::composed_parallel: {
      ordinal acc;
      for (const auto& c : rf.children) acc = natural_sum(acc, eval_impl(c, x, gap));
      return acc;
    }
  }
  throw error("unknown ranking function kind");
}

}  // namespace

ordinal evaluate_ranking(const ranking_function& rf, const std::map<std::string, rational>& x,
                         bool* no_piece_applies) {
  bool gap = false;
  ordinal v = eval_impl(rf, x, gap);
  if (no_piece_applies) *no_piece_applies = gap;
  return v;
}

assignment phase_to_nested(const assignment& nu, const std::vector<std::string>& vars,
                           unsigned k) {
  if (k == 0) throw error("phase_to_nested: k must be at least 1");
  assignment out;
  out["delta"] = lookup(nu, "delta_1");
  for (unsigned i = 1; i <= k; ++i) {
    std::string f = "f_" + std::to_string(i);
    for (const auto& v : vars) out[coeff_unknown(f, v)] = lookup(nu, coeff_unknown(f, v));
    rational t = lookup(nu, offset_unknown(f));
    if (i < k) t -= lookup(nu, "delta_" + std::to_string(i + 1));
    out[offset_unknown(f)] = t;
  }
  return out;
}

namespace {

void render_into(const ranking_function& rf, std::ostream& os, const std::string& pad) {
  std::size_t k = rf.components.size();
  switch (rf.k) {
    case ranking_function::kind::pr:
      os << pad << "pr ranking function\n";
      os << pad << "  rho(x) = ceil(f(x)/delta) if f(x) > 0, else 0\n";
      os << pad << "  f(x) = " << rf.components[0].f.str()
         << ", delta = " << rf.components[0].delta.str() << "\n";
      return;
    case ranking_function::kind::phase:
    case ranking_function::kind::nested_phase:
      if (rf.k == ranking_function::kind::phase)
        os << pad << k << "-phase ranking function\n";
      else
        os << pad << k << "-nested ranking function, shown in its phase form"
           << " (each outer component shifted up by delta)\n";
      os << pad << "  rho(x) = w*(" << k << "-i) + ceil(f_i(x)/delta_i)"
         << " at the least i with f_i(x) > 0, else 0\n";
      for (std::size_t i = 0; i < k; ++i)
        os << pad << "  f_" << i + 1 << "(x) = " << rf.components[i].f.str()
           << ", delta_" << i + 1 << " = " << rf.components[i].delta.str() << "\n";
      return;
    case ranking_function::kind::piece:
      os << pad << k << "-piece ranking function\n";
      os << pad << "  rho(x) = max ceil(f_i(x)/delta) over pieces with g_i(x) >= 0, else 0\n";
      for (std::size_t i = 0; i < k; ++i)
        os << pad << "  piece " << i + 1 << ": g_" << i + 1
           << "(x) = " << rf.discriminators[i].str() << ", f_" << i + 1
           << "(x) = " << rf.components[i].f.str()
           << ", delta = " << rf.components[i].delta.str() << "\n";
      return;
    case ranking_function::kind::lex:
      os << pad << k << "-lexicographic ranking function\n";
      os << pad << "  rho(x) = sum over i of w^(" << k << "-i) * ceil(f_i(x)/delta_i)\n";
      for (std::size_t i = 0; i < k; ++i)
        os << pad << "  f_" << i + 1 << "(x) = " << rf.components[i].f.str()
           << ", delta_" << i + 1 << " = " << rf.components[i].delta.str() << "\n";
      return;
    case ranking_function::kind::parallel:
      os << pad << k << "-parallel ranking function\n";
      os << pad << "  rho(x) = sum over i of ceil(f_i(x)/delta_i)\n";
      for (std::size_t i = 0; i < k; ++i)
        os << pad << "  f_" << i + 1 << "(x) = " << rf.components[i].f.str()
           << ", delta_" << i + 1 << " = " << rf.components[i].delta.str() << "\n";
      return;
    case ranking_function::kind::composed_phase:
    case ranking_function::kind::composed_lex:
    case ranking_function::kind::composed_parallel: {
      std::size_t n = rf.children.size();
      if (rf.k == ranking_function::kind::composed_phase) {
        os << pad << "phase composition of " << n << " parts\n";
        os << pad << "  rho(x) = bound(part " << n << ") + ... + bound(part i+1) + rho_i(x)"
           << " at the least part i still positive, else 0\n";
      } else if (rf.k == ranking_function::kind::composed_lex) {
        os << pad << "lexicographic composition of " << n << " parts\n";
        os << pad << "  rho(x) = sum over i of bound(part " << n
           << ") * ... * bound(part i+1) * rho_i(x)\n";
      } else {
        os << pad << "parallel composition of " << n << " parts\n";
        os << pad << "  rho(x) = natural sum over i of rho_i(x)\n";
      }
      for (std::size_t i = 0; i < n; ++i) {
        os << pad << "  part " << i + 1 << " (bound " << codomain_bound(rf.children[i]).str()
           << "):\n";
        render_into(rf.children[i], os, pad + "    ");
      }
      return;
    }
  }
}

nlohmann::json affine_json(const affine_expr& e) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [v, c] : e.coeffs()) coeffs[v] = c.str();
  return {{"text", e.str()}, {"coefficients", coeffs}, {"offset", e.constant().str()}};
}

}  // namespace

std::string render_ranking_text(const ranking_function& rf) {
  std::ostringstream os;
  render_into(rf, os, "");
  os << "codomain bound: " << codomain_bound(rf).str() << "\n";
  return os.str();
}

nlohmann::json ranking_json(const ranking_function& rf) {
  nlohmann::json out;
  out["kind"] = ranking_kind_name(rf.k);
  out["bound"] = codomain_bound(rf).str();
  bool composed = rf.k == ranking_function::kind::composed_phase ||
                  rf.k == ranking_function::kind::composed_lex ||
                  rf.k == ranking_function::kind::composed_parallel;
  if (composed) {
    auto arr = nlohmann::json::array();
    for (const auto& c : rf.children) arr.push_back(ranking_json(c));
    out["children"] = arr;
    return out;
  }
  auto comps = nlohmann::json::array();
  for (std::size_t i = 0; i < rf.components.size(); ++i) {
    nlohmann::json c;
    c["f"] = affine_json(rf.components[i].f);
    c["delta"] = rf.components[i].delta.str();
    if (rf.k == ranking_function::kind::piece) c["g"] = affine_json(rf.discriminators[i]);
    comps.push_back(c);
  }
  out["components"] = comps;
  return out;
}

}  // namespace rankforge
