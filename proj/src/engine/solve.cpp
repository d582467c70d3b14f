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

#include "picot/engine/solve.hpp"

#include <algorithm>
#include <functional>

namespace picot::engine {

using prolog::Aggregate;
using prolog::Atom;
using prolog::BareVar;
using prolog::CompareOp;
using prolog::Comparison;
using prolog::IfThenElse;

std::string print_solution(const Solution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : s) {
    if (!first) out += ", ";
    first = false;
    out += name + ": " + prolog::print_term(value);
  }
  return out + "}";
}

bool SolutionSet::add(Solution s) {
  if (!keys_.insert(print_solution(s)).second) return false;
  rows_.push_back(std::move(s));
  return true;
}

bool SolutionSet::contains(const Solution& s) const { return keys_.count(print_solution(s)) > 0; }

std::string SolutionSet::canonical() const {
  std::string out;
  for (const auto& k : keys_) {
    out += k;
    out += '\n';
  }
  return out;
}

const char* to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::UnboundGoalVariable: return "UnboundGoalVariable";
    case DefectKind::ComparisonOnUnbound: return "ComparisonOnUnbound";
  }
  return "?";
}

Term substitute(const Term& t, const Solution& env) {
  if (t.is_var()) {
    auto it = env.find(t.as_var().name);
    return it == env.end() ? t : it->second;
  }
  if (t.is_compound()) {
    const auto& c = t.as_compound();
    std::vector<Term> args;
    args.reserve(c.args.size());
    for (const auto& a : c.args) args.push_back(substitute(a, env));
    return Term::compound(c.functor, std::move(args));
  }
  return t;
}

namespace {

bool unify_into(const Term& a0, const Term& b0, Solution& env) {
  const Term a = substitute(a0, env);
  const Term b = substitute(b0, env);
  if (a.is_var() || b.is_var()) {
    if (a.is_var() && b.is_var()) return a.as_var().name == b.as_var().name;
    const Term& var = a.is_var() ? a : b;
    const Term& val = a.is_var() ? b : a;
    if (!val.is_ground()) return false;
    env[var.as_var().name] = val;
    return true;
  }
  if (a.is_compound() && b.is_compound()) {
    const auto& x = a.as_compound();
    const auto& y = b.as_compound();
    if (x.functor != y.functor || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i) {
      if (!unify_into(x.args[i], y.args[i], env)) return false;
    }
    return true;
  }
  return a == b;
}

// Continuation: receives each solution, returns false to stop the search.
using Cont = std::function<bool(const Solution&)>;

class Evaluator {
 public:
  Evaluator(const KnowledgeBase& kb, std::vector<ExecutionDefect>& defects) : kb_(kb), defects_(defects) {}

  // top: index of the enclosing top-level goal, or nullopt at top level.
  bool conj(const std::vector<Goal>& goals, std::size_t i, const Solution& env,
            std::optional<std::size_t> top, const Cont& k) {
    if (i == goals.size()) return k(env);
    const std::size_t index = top ? *top : i;
    return goal(goals[i], index, env, [&](const Solution& next) { return conj(goals, i + 1, next, top, k); });
  }

 private:
  void defect(DefectKind kind, std::size_t index) {
    ExecutionDefect d{kind, index};
    if (std::find(defects_.begin(), defects_.end(), d) == defects_.end()) defects_.push_back(d);
  }

  bool goal(const Goal& g, std::size_t index, const Solution& env, const Cont& k) {
    return std::visit(
        [&](const auto& n) -> bool {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Atom>) {
            return atom(n, env, k);
          } else if constexpr (std::is_same_v<N, Comparison>) {
            return compare(n, index, env, k);
          } else if constexpr (std::is_same_v<N, IfThenElse>) {
            return if_then_else(n, index, env, k);
          } else if constexpr (std::is_same_v<N, Aggregate>) {
            return aggregate(n, index, env, k);
          } else {
            static_assert(std::is_same_v<N, BareVar>);
            defect(DefectKind::UnboundGoalVariable, index);
            return true;
          }
        },
        g.node);
  }

  bool atom(const Atom& a, const Solution& env, const Cont& k) {
    for (std::size_t pos : kb_.lookup(a.predicate, a.args.size())) {
      const Fact& f = kb_.facts()[pos];
      Solution next = env;
      bool ok = true;
      for (std::size_t i = 0; i < a.args.size() && ok; ++i) ok = unify_into(a.args[i], f.args[i], next);
      if (ok && !k(next)) return false;
    }
    return true;
  }

  bool compare(const Comparison& c, std::size_t index, const Solution& env, const Cont& k) {
    const Term l = substitute(c.lhs, env);
    const Term r = substitute(c.rhs, env);
    if (c.op == CompareOp::Unify) {
      if (!l.is_ground() && !r.is_ground()) {
        defect(DefectKind::UnboundGoalVariable, index);
        return true;
      }
      Solution next = env;
      if (!unify_into(l, r, next)) return true;
      return k(next);
    }
    if (!l.is_ground() || !r.is_ground()) {
      defect(DefectKind::ComparisonOnUnbound, index);
      return true;
    }
    const int order = prolog::compare_standard_order(l, r);
    const bool holds = c.op == CompareOp::StructEq ? order == 0 : c.op == CompareOp::StdGt ? order > 0 : order < 0;
    return holds ? k(env) : true;
  }

  bool if_then_else(const IfThenElse& ite, std::size_t index, const Solution& env, const Cont& k) {
    std::optional<Solution> first;
    conj(ite.cond, 0, env, index, [&](const Solution& s) {
      first = s;
      return false;
    });
    if (first) return conj(ite.then_branch, 0, *first, index, k);
    if (ite.else_branch) return conj(*ite.else_branch, 0, env, index, k);
    return true;
  }

  bool aggregate(const Aggregate& agg, std::size_t index, const Solution& env, const Cont& k) {
    const auto inner_vars = prolog::goal_variables(agg.inner, true);
    std::int64_t count = 0;
    std::set<std::string> seen;
    conj(agg.inner, 0, env, index, [&](const Solution& s) {
      if (agg.distinct) {
        Solution key;
        for (const auto& v : inner_vars) {
          auto it = s.find(v);
          if (it != s.end()) key.emplace(v, it->second);
        }
        if (seen.insert(print_solution(key)).second) ++count;
      } else {
        ++count;
      }
      return true;
    });
    Solution next = env;
    if (!unify_into(Term::var(agg.result.name), Term::integer(count), next)) return true;
    return k(next);
  }

  const KnowledgeBase& kb_;
  std::vector<ExecutionDefect>& defects_;
};

}  // namespace

std::optional<Solution> unify(const Term& a, const Term& b, const Solution& env) {
  Solution out = env;
  if (!unify_into(a, b, out)) return std::nullopt;
  return out;
}

SolveResult solve(const std::vector<Goal>& goals, const KnowledgeBase& kb) {
  SolveResult result;
  std::vector<std::string> visible;
  for (auto& v : prolog::goal_variables(goals, false)) {
    if (v.front() != '_') visible.push_back(std::move(v));
  }
  Evaluator ev(kb, result.defects);
  ev.conj(goals, 0, Solution{}, std::nullopt, [&](const Solution& s) {
    Solution projected;
    for (const auto& v : visible) {
      auto it = s.find(v);
      if (it != s.end()) projected.emplace(v, it->second);
    }
    result.solutions.add(std::move(projected));
    return true;
  });
  return result;
}

SolveResult solve_prefix(const Query& q, std::size_t t, const KnowledgeBase& kb) {
  t = std::min(t, q.goals.size());
  return solve(std::vector<Goal>(q.goals.begin(), q.goals.begin() + static_cast<std::ptrdiff_t>(t)), kb);
}

}  // namespace picot::engine
