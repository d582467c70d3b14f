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
#include "picot/evalkit.hpp"
#include "picot/llm/backend.hpp"
#include "picot/llm/usage.hpp"
#include "picot/prolog/query.hpp"
#include "picot/retrieval/bm25.hpp"
#include "picot/retrieval/evidence.hpp"
#include "picot/slice.hpp"

namespace picot::pipeline {

enum class ErrorCategory {
  None,
  QueryParseError,
  ExecutionParseError,
  IntermediatePredicateExistence,
  FinalPredicateExistence,
};

const char* to_string(ErrorCategory c);

struct Ablation {
  bool passages = false;
  bool notes = false;
  bool prolog_answer = false;
};

struct Fewshot {
  std::string querygen;
  std::string slice;
  std::string final;
};

inline constexpr std::size_t kDefaultMaxGoals = 25;

struct PipelineConfig {
  retrieval::EvidenceMode mode = retrieval::EvidenceMode::Rag;
  std::size_t top_k = 5;
  Ablation ablation;
  Fewshot fewshot;
  std::size_t max_instantiations = kDefaultMaxInstantiations;
  std::size_t max_goals = kDefaultMaxGoals;
  std::size_t max_passages = 0;  // 0: unlimited
  bool quote_strings = false;
  bool fallback_retrieval = true;
  bool retrieval_cache = true;
  llm::LlmRequest request;  // decoding settings shared by every call
};

// Shared read-only state. index is needed in Rag mode, corpus in InContext.
struct Resources {
  const retrieval::Bm25Index* index = nullptr;
  const std::vector<retrieval::Chunk>* corpus = nullptr;
  llm::LlmBackend* llm = nullptr;
};

struct Passage {
  std::string id;
  std::string title;
  std::string text;
};

struct RunRecord {
  std::string question_id;
  std::string question;
  std::vector<std::string> gold_answers;

  std::string querygen_raw;
  std::optional<prolog::Query> query;
  std::optional<std::string> query_error;  // "<kind>: <message>"
  std::string definitions_raw;
  DefinitionTable definitions;

  std::vector<StepArtifact> steps;
  std::vector<std::string> notes;
  std::vector<Passage> passages;
  std::vector<prolog::Term> prolog_answer;
  std::string final_prompt;  // kept in memory only
  std::string final_raw;
  std::string final_answer;
  ErrorCategory error_category = ErrorCategory::None;

  llm::LedgerSnapshot usage;
  std::size_t retrieval_calls = 0;
  std::size_t llm_calls = 0;
  bool aborted = false;
  std::string abort_reason;
  std::vector<std::string> warnings;
};

// Query generation, SLICE over each goal, final chain-of-thought call.
// Transport failures and script misses mark the record aborted.
RunRecord answer_question(const evalkit::QaExample& ex, const PipelineConfig& cfg, const Resources& res);

// Answers every example on `parallel` worker threads; output keeps input
// order.
std::vector<RunRecord> run_dataset(const std::vector<evalkit::QaExample>& examples, const PipelineConfig& cfg,
                                   const Resources& res, std::size_t parallel = 1);

ErrorCategory categorize(const RunRecord& r);

evalkit::ScoreRow score_record(const RunRecord& r);

}  // namespace picot::pipeline
