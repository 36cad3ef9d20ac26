/* SPDX-License-Identifier: Apache-2.0 */
#include "rankforge/recipe.hpp"

#include <cctype>
#include <sstream>

namespace rankforge {

namespace {

template_body and_of(std::vector<template_body> kids) {
  if (kids.size() == 1) return std::move(kids[0]);
  return template_body::conj(std::move(kids));
}

template_body or_of(std::vector<template_body> kids) {
  if (kids.size() == 1) return std::move(kids[0]);
  return template_body::disj(std::move(kids));
}

std::string suffix_of(const std::vector<unsigned>& path) {
  std::ostringstream os;
  for (unsigned p : path) os << "_" << p;
  return os.str();
}

template_atom noninc(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(1);
  a.beta[f] = rational(-1);
  a.strict = false;
  return a;
}

template_atom dec(const std::string& f, const std::string& d) {
  template_atom a;
  a.alpha[f] = rational(1);
  a.beta[f] = rational(-1);
  a.gamma[d] = rational(-1);
  return a;
}

template_atom pos_now(const std::string& f) {
  template_atom a;
  a.alpha[f] = rational(1);
  return a;
}

template_recipe pr_recipe(const std::vector<unsigned>& path) {
  const std::string sfx = suffix_of(path);
  const std::string f = "f" + sfx;
  const std::string d = "delta" + sfx;
  template_recipe r;
  r.spec = "pr";
  r.parameters = {d};
  r.symbols = {f};
  r.leq = template_body::atom(noninc(f));
  r.lt = template_body::conj({
      template_body::atom(dec(f, d)),
      [&] {
        template_atom a;
        a.gamma[d] = rational(1);
        return template_body::atom(std::move(a));
      }(),
  });
  r.pos = template_body::atom(pos_now(f));
  r.shape.k = shape_node::kind::pr;
  r.shape.fs = {f};
  r.shape.deltas = {d};
  return r;
}

template_recipe piece_recipe(unsigned k, const std::vector<unsigned>& path) {
  const std::string sfx = suffix_of(path);
  const std::string d = "delta" + sfx;
  std::vector<std::string> fs, gs;
  for (unsigned i = 1; i <= k; ++i) {
    fs.push_back("f" + sfx + "_" + std::to_string(i));
    gs.push_back("g" + sfx + "_" + std::to_string(i));
  }
  template_recipe r;
  r.spec = "piece:" + std::to_string(k);
  r.parameters = {d};
  r.symbols = fs;
  r.symbols.insert(r.symbols.end(), gs.begin(), gs.end());

  auto covered = [&] {
    std::vector<template_body> alts;
    for (const auto& g : gs) {
      template_atom a;
      a.alpha[g] = rational(1);
      a.strict = false;  // g(x) >= 0
      alts.push_back(template_body::atom(std::move(a)));
    }
    return or_of(std::move(alts));
  };
  // Cross conditions: g_i(x) < 0 or g_j(x') < 0 or the f_i/f_j comparison.
  auto crosses = [&](bool with_delta) {
    std::vector<template_body> out;
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) {
        template_atom gi;
        gi.alpha[gs[i]] = rational(-1);
        template_atom gj;
        gj.beta[gs[j]] = rational(-1);
        template_atom cmp;
        cmp.alpha[fs[i]] = rational(1);
        cmp.beta[fs[j]] = rational(-1);
        if (with_delta)
          cmp.gamma[d] = rational(-1);  // f_j(x') < f_i(x) - delta
        else
          cmp.strict = false;  // f_j(x') <= f_i(x)
        out.push_back(template_body::disj({
            template_body::atom(std::move(gi)),
            template_body::atom(std::move(gj)),
            template_body::atom(std::move(cmp)),
        }));
      }
    return out;
  };

  {
    std::vector<template_body> kids;
    kids.push_back(covered());
    auto cs = crosses(false);
    kids.insert(kids.end(), cs.begin(), cs.end());
    r.leq = and_of(std::move(kids));
  }
  {
    std::vector<template_body> kids;
    template_atom dp;
    dp.gamma[d] = rational(1);
    kids.push_back(template_body::atom(std::move(dp)));
    kids.push_back(covered());
    auto cs = crosses(true);
    kids.insert(kids.end(), cs.begin(), cs.end());
    r.lt = and_of(std::move(kids));
  }
  {
    std::vector<template_body> kids;
    for (const auto& f : fs) kids.push_back(template_body::atom(pos_now(f)));
    r.pos = and_of(std::move(kids));
  }
  r.shape.k = shape_node::kind::piece;
  r.shape.fs = fs;
  r.shape.gs = gs;
  r.shape.deltas = {d};
  return r;
}

template_recipe compose(shape_node::kind kind, std::vector<template_recipe> kids,
                        const std::string& spec) {
  template_recipe r;
  r.spec = spec;
  for (const auto& c : kids) {
    r.parameters.insert(r.parameters.end(), c.parameters.begin(), c.parameters.end());
    r.symbols.insert(r.symbols.end(), c.symbols.begin(), c.symbols.end());
  }
  const std::size_t k = kids.size();
  switch (kind) {
    case shape_node::kind::phase: {
      std::vector<template_body> leq{kids[0].leq}, lt{kids[0].lt}, pos;
      for (std::size_t i = 1; i < k; ++i) {
        leq.push_back(template_body::disj({kids[i].leq, kids[i - 1].pos}));
        lt.push_back(template_body::disj({kids[i].lt, kids[i - 1].pos}));
      }
      for (const auto& c : kids) pos.push_back(c.pos);
      r.leq = and_of(std::move(leq));
      r.lt = and_of(std::move(lt));
      r.pos = or_of(std::move(pos));
      break;
    }
    case shape_node::kind::lex: {
      auto guarded = [&](std::size_t i) {
        // kid i may increase only if an earlier kid decreases.
        std::vector<template_body> alts{kids[i].leq};
        for (std::size_t j = 0; j < i; ++j) alts.push_back(kids[j].lt);
        return or_of(std::move(alts));
      };
      std::vector<template_body> leq, lt, pos;
      for (std::size_t i = 0; i < k; ++i) leq.push_back(guarded(i));
      {
        std::vector<template_body> some;
        for (const auto& c : kids) some.push_back(c.lt);
        lt.push_back(or_of(std::move(some)));
      }
      for (std::size_t i = 0; i + 1 < k; ++i) lt.push_back(guarded(i));
      for (const auto& c : kids) pos.push_back(c.pos);
      r.leq = and_of(std::move(leq));
      r.lt = and_of(std::move(lt));
      r.pos = and_of(std::move(pos));
      break;
    }
    case shape_node::kind::parallel: {
      std::vector<template_body> leq, lt, pos;
      for (const auto& c : kids) leq.push_back(c.leq);
      lt = leq;
      {
        std::vector<template_body> some;
        for (const auto& c : kids)
          some.push_back(template_body::conj({c.lt, c.pos}));
        lt.push_back(or_of(std::move(some)));
      }
      for (const auto& c : kids) pos.push_back(c.pos);
      r.leq = and_of(std::move(leq));
      r.lt = and_of(std::move(lt));
      r.pos = or_of(std::move(pos));
      break;
    }
    default:
      throw error("compose: only phase, lex, parallel compose");
  }
  r.shape.k = kind;
  r.shape.composed = true;
  for (auto& c : kids) r.shape.children.push_back(std::move(c.shape));
  return r;
}

class recipe_parser {
public:
  explicit recipe_parser(const std::string& text) : text_(text) {}

  template_recipe run() {
    template_recipe r = parse({});
    skip();
    if (pos_ != text_.size()) throw error("recipe: trailing input after expression");
    return r;
  }

private:
  template_recipe parse(std::vector<unsigned> path) {
    skip();
    std::string word = ident();
    if (word == "pr") return pr_recipe(path);
    if (word == "piece") {
      expect(':');
      return piece_recipe(number(), path);
    }
    shape_node::kind kind;
    if (word == "phase")
      kind = shape_node::kind::phase;
    else if (word == "lex")
      kind = shape_node::kind::lex;
    else if (word == "parallel")
      kind = shape_node::kind::parallel;
    else
      throw error("recipe: unknown combinator '" + word + "'");
    expect('(');
    std::vector<template_recipe> kids;
    std::ostringstream spec;
    spec << word << "(";
    for (;;) {
      path.push_back(static_cast<unsigned>(kids.size() + 1));
      kids.push_back(parse(path));
      path.pop_back();
      if (kids.size() > 1) spec << ",";
      spec << kids.back().spec;
      skip();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    expect(')');
    spec << ")";
    return compose(kind, std::move(kids), spec.str());
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw error("recipe: expected a name");
    return text_.substr(start, pos_ - start);
  }

  unsigned number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw error("recipe: expected a number");
    unsigned long v = std::stoul(text_.substr(start, pos_ - start));
    if (v == 0 || v > 64) throw error("recipe: size out of range");
    return static_cast<unsigned>(v);
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw error(std::string("recipe: expected '") + c + "'");
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

template_recipe build_recipe(const std::string& expr) {
  recipe_parser p(expr);
  return p.run();
}

bool is_recipe_spec(const std::string& expr) {
  try {
    build_recipe(expr);
    return true;
  } catch (const error&) {
    return false;
  }
}

ranking_template recipe_to_template(const template_recipe& r) {
  ranking_template t;
  t.spec = r.spec;
  t.parameters = r.parameters;
  t.symbols = r.symbols;
  t.body = template_body::conj({r.lt, r.pos});
  t.shape = r.shape;
  return t;
}

}  // namespace rankforge
