// Copyright 2026 The picot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "picot/engine/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "picot/prolog/parser.hpp"

namespace picot::engine {

using prolog::Atom;
using prolog::CompareOp;
using prolog::Comparison;

namespace {

void collect_ground(const Term& t, std::set<Term, prolog::TermLess>& out) {
  if (t.is_ground()) out.insert(t);
  if (t.is_compound()) {
    for (const auto& a : t.as_compound().args) collect_ground(a, out);
  }
}

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> v;
  prolog::collect_variables(t, v);
  return v;
}

bool covered(const std::vector<std::string>& vars, const std::set<std::string>& bound) {
  return std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return bound.count(v) > 0; });
}

// Checks one goal under an assignment that grounds all its variables.
bool holds(const Goal& g, const Solution& env, const KnowledgeBase& kb) {
  if (g.is_atom()) {
    const auto& a = g.as_atom();
    Fact f{a.predicate, {}};
    for (const auto& t : a.args) f.args.push_back(substitute(t, env));
    return kb.contains(f);
  }
  const auto& c = std::get<Comparison>(g.node);
  const int order = prolog::compare_standard_order(substitute(c.lhs, env), substitute(c.rhs, env));
  switch (c.op) {
    case CompareOp::Unify:
    case CompareOp::StructEq: return order == 0;
    case CompareOp::StdGt: return order > 0;
    case CompareOp::StdLt: return order < 0;
  }
  return false;
}

}  // namespace

Expected<SolutionSet, std::string> brute_force_solve(const std::vector<Goal>& goals, const KnowledgeBase& kb) {
  if (kb.size() > kBruteForceMaxFacts) return unexpected(std::string("too many facts"));

  std::set<Term, prolog::TermLess> domain;
  std::set<std::string> bound;
  for (const auto& g : goals) {
    if (g.is_atom()) {
      for (const auto& t : g.as_atom().args) {
        collect_ground(t, domain);
        for (auto& v : term_vars(t)) bound.insert(v);
      }
      continue;
    }
    const auto* c = std::get_if<Comparison>(&g.node);
    if (!c) return unexpected(std::string("goal outside the conjunctive fragment: ") + prolog::print_goal(g));
    collect_ground(c->lhs, domain);
    collect_ground(c->rhs, domain);
    const auto lv = term_vars(c->lhs);
    const auto rv = term_vars(c->rhs);
    const bool safe = c->op == CompareOp::Unify ? (covered(lv, bound) || covered(rv, bound))
                                                 : (covered(lv, bound) && covered(rv, bound));
    if (!safe) return unexpected(std::string("unsafe comparison: ") + prolog::print_goal(g));
    for (const auto& v : lv) bound.insert(v);
    for (const auto& v : rv) bound.insert(v);
  }

  const auto vars = prolog::goal_variables(goals, false);
  if (vars.size() > kBruteForceMaxVars) return unexpected(std::string("too many variables"));

  for (const auto& f : kb.facts()) {
    for (const auto& t : f.args) collect_ground(t, domain);
  }
  const std::vector<Term> values(domain.begin(), domain.end());

  // Goals become checkable once their last variable (in vars order) is set.
  std::vector<std::vector<const Goal*>> ready(vars.size() + 1);
  for (const auto& g : goals) {
    std::size_t need = 0;
    for (const auto& v : prolog::goal_variables(g, false)) {
      need = std::max<std::size_t>(need, std::find(vars.begin(), vars.end(), v) - vars.begin() + 1);
    }
    ready[need].push_back(&g);
  }

  SolutionSet out;
  Solution env;
  auto check = [&](std::size_t depth) {
    return std::all_of(ready[depth].begin(), ready[depth].end(),
                       [&](const Goal* g) { return holds(*g, env, kb); });
  };
  std::function<void(std::size_t)> assign = [&](std::size_t depth) {
    if (!check(depth)) return;
    if (depth == vars.size()) {
      Solution visible;
      for (const auto& [k, v] : env) {
        if (k.front() != '_') visible.emplace(k, v);
      }
      out.add(std::move(visible));
      return;
    }
    for (const auto& value : values) {
      env[vars[depth]] = value;
      assign(depth + 1);
    }
    env.erase(vars[depth]);
  };
  assign(0);
  return out;
}

}  // namespace picot::engine
