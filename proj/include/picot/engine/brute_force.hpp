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

#include <string>
#include <vector>

#include "picot/engine/solve.hpp"
#include "picot/expected.hpp"

namespace picot::engine {

inline constexpr std::size_t kBruteForceMaxVars = 6;
inline constexpr std::size_t kBruteForceMaxFacts = 200;

// Reference evaluator for conjunctive queries: tries every assignment of the
// query variables to constants of the kb and query.
//
// Accepts only atoms and comparisons, at most kBruteForceMaxVars variables
// and kBruteForceMaxFacts facts, and only queries whose left-to-right
// evaluation never meets an unbound comparison operand. Anything else is
// rejected with a message.
Expected<SolutionSet, std::string> brute_force_solve(const std::vector<Goal>& goals,
                                                     const KnowledgeBase& kb);

}  // namespace picot::engine
