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
#include <optional>
#include <string>
#include <vector>

#include "picot/definitions.hpp"
#include "picot/engine/knowledge_base.hpp"
#include "picot/engine/solve.hpp"
#include "picot/llm/backend.hpp"
#include "picot/llm/usage.hpp"
#include "picot/retrieval/evidence.hpp"

namespace picot {

enum class StepKind { Extraction, Verification, EngineOnly };

const char* to_string(StepKind kind);

// One LLM-backed sub-question of a step.
struct Instantiation {
  std::string goal;      // instantiated atom, canonical text
  StepKind kind = StepKind::Extraction;
  std::string question;  // text sent to the model
  std::vector<std::string> evidence_ids;
  std::vector<std::string> evidence_titles;
  bool llm_called = false;
  std::string raw_response;
  std::vector<prolog::Term> answers;  // extraction
  std::optional<bool> verdict;        // verification
  std::optional<std::string> parse_error;
  std::optional<std::string> skipped;  // why no call was made
  std::vector<engine::Fact> facts_added;
};

struct StepArtifact {
  std::size_t step_index = 0;  // 1-based
  prolog::Goal goal;
  std::string goal_text;
  StepKind kind = StepKind::EngineOnly;
  std::vector<Instantiation> instantiations;
  std::vector<engine::Fact> facts_added;
  engine::SolutionSet solution_after;
  std::vector<engine::ExecutionDefect> defects;
  std::vector<std::string> warnings;

  bool has_parse_failure() const;
};

inline constexpr std::size_t kDefaultMaxInstantiations = 50;

struct SliceOptions {
  std::string fewshot;
  bool quote_strings = false;
  std::size_t max_instantiations = kDefaultMaxInstantiations;
  llm::LlmRequest request;  // decoding settings; prompt and role are filled per call
};

// Everything one question run shares across its steps.
struct SliceContext {
  const DefinitionTable& definitions;
  retrieval::EvidenceProvider& evidence;
  llm::LlmBackend& llm;
  llm::UsageLedger& ledger;
  SliceOptions options;
};

// Extraction when some variable of the atom stays unbound under the prior
// solutions, Verification when it is ground, EngineOnly for non-atoms. An
// aggregate is Extraction while its inner atom has no matching facts.
StepKind classify(const prolog::Goal& goal, const engine::SolutionSet& prior, const engine::KnowledgeBase& kb);

// Runs step t (1-based) of q: one model call per distinct instantiation of
// goal t under prior, facts into kb, then S_t = solve_prefix(q, t, kb).
// Throws llm::TransportError and llm::ScriptMiss.
StepArtifact slice_step(const prolog::Query& q, std::size_t t, const engine::SolutionSet& prior,
                        engine::KnowledgeBase& kb, SliceContext& ctx);

}  // namespace picot
