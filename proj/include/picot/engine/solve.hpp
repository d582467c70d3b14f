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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picot/engine/knowledge_base.hpp"
#include "picot/prolog/query.hpp"

namespace picot::engine {

using prolog::Goal;
using prolog::Query;

// Variable name -> ground term.
using Solution = std::map<std::string, Term>;

std::string print_solution(const Solution& s);

// Deduplicated solutions in first-derivation order. Equality is set
// equality.
class SolutionSet {
 public:
  bool add(Solution s);
  bool contains(const Solution& s) const;
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<Solution>& rows() const { return rows_; }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }

  // Sorted, one solution per line; order independent.
  std::string canonical() const;

  friend bool operator==(const SolutionSet& a, const SolutionSet& b) { return a.keys_ == b.keys_; }

 private:
  std::vector<Solution> rows_;
  std::set<std::string> keys_;
};

enum class DefectKind { UnboundGoalVariable, ComparisonOnUnbound };

const char* to_string(DefectKind kind);

struct ExecutionDefect {
  DefectKind kind = DefectKind::UnboundGoalVariable;
  std::size_t goal_index = 0;  // index of the top-level goal
  friend bool operator==(const ExecutionDefect&, const ExecutionDefect&) = default;
};

struct SolveResult {
  SolutionSet solutions;
  std::vector<ExecutionDefect> defects;
};

Term substitute(const Term& t, const Solution& env);

// Extends env so that a and b become identical. Variables bind only to
// ground terms; two distinct unbound variables do not unify.
std::optional<Solution> unify(const Term& a, const Term& b, const Solution& env);

// Depth-first, left-to-right evaluation of a conjunction. Solutions are
// projected onto the named variables of the goals (aggregate-local and
// anonymous variables are dropped).
SolveResult solve(const std::vector<Goal>& goals, const KnowledgeBase& kb);

// solve over the first t goals. t == 0 yields the single empty solution.
SolveResult solve_prefix(const Query& q, std::size_t t, const KnowledgeBase& kb);

}  // namespace picot::engine
