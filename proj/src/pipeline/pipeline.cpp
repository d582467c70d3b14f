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

#include "picot/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "picot/llm/prompts.hpp"
#include "picot/pipeline/final_prompt.hpp"
#include "picot/prolog/parser.hpp"

namespace picot::pipeline {

using engine::KnowledgeBase;
using engine::SolutionSet;

const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::None: return "None";
    case ErrorCategory::QueryParseError: return "QueryParseError";
    case ErrorCategory::ExecutionParseError: return "ExecutionParseError";
    case ErrorCategory::IntermediatePredicateExistence: return "IntermediatePredicateExistence";
    case ErrorCategory::FinalPredicateExistence: return "FinalPredicateExistence";
  }
  return "?";
}

namespace {

std::string strip_quotes(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  s = s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

retrieval::EvidenceProvider make_provider(const evalkit::QaExample& ex, const PipelineConfig& cfg,
                                          const Resources& res) {
  if (cfg.mode == retrieval::EvidenceMode::Rag) {
    if (!res.index) throw std::invalid_argument("rag mode needs an index");
    return retrieval::EvidenceProvider::rag(*res.index, cfg.top_k, cfg.retrieval_cache);
  }
  if (!res.corpus) throw std::invalid_argument("in-context mode needs a corpus");
  return retrieval::EvidenceProvider::in_context(*res.corpus, ex.gold_docs);
}

}  // namespace

RunRecord answer_question(const evalkit::QaExample& ex, const PipelineConfig& cfg, const Resources& res) {
  if (!res.llm) throw std::invalid_argument("no language model backend");
  RunRecord rec;
  rec.question_id = ex.id;
  rec.question = ex.question;
  rec.gold_answers = ex.gold_answers;

  llm::UsageLedger ledger;
  KnowledgeBase kb;
  auto evidence = make_provider(ex, cfg, res);

  try {
    llm::LlmRequest req = cfg.request;
    req.role = llm::Role::QueryGen;
    req.prompt = llm::build_query_generation_prompt(ex.question, cfg.fewshot.querygen);
    const auto qg = res.llm->complete(req);
    ledger.record("querygen", llm::Role::QueryGen, qg.usage);
    rec.querygen_raw = qg.text;

    auto sections = llm::split_query_generation_response(qg.text);
    if (!sections) {
      rec.query_error = std::string(llm::to_string(sections.error().kind)) + ": " + sections.error().message;
    } else {
      rec.definitions_raw = sections->definition;
      auto q = prolog::parse_query(sections->query, sections->target);
      if (!q) {
        rec.query_error = std::string(prolog::to_string(q.error().kind)) + ": " + q.error().message;
      } else {
        auto defs = parse_definitions(sections->definition);
        if (!defs) {
          rec.query_error = std::string(prolog::to_string(defs.error().kind)) + ": " + defs.error().message;
        } else {
          rec.query = std::move(q).value();
          rec.definitions = std::move(defs).value();
        }
      }
    }

    if (rec.query) {
      SliceContext ctx{rec.definitions, evidence, *res.llm, ledger,
                       SliceOptions{cfg.fewshot.slice, cfg.quote_strings, cfg.max_instantiations, cfg.request}};
      std::size_t steps = rec.query->goals.size();
      if (steps > cfg.max_goals) {
        rec.warnings.push_back("query has " + std::to_string(steps) + " goals; only the first " +
                               std::to_string(cfg.max_goals) + " are executed");
        steps = cfg.max_goals;
      }
      SolutionSet state = engine::solve_prefix(*rec.query, 0, kb).solutions;
      for (std::size_t t = 1; t <= steps; ++t) {
        rec.steps.push_back(slice_step(*rec.query, t, state, kb, ctx));
        state = rec.steps.back().solution_after;
      }
      for (const auto& s : state) {
        auto it = s.find(rec.query->target.name);
        if (it != s.end() &&
            std::find(rec.prolog_answer.begin(), rec.prolog_answer.end(), it->second) == rec.prolog_answer.end()) {
          rec.prolog_answer.push_back(it->second);
        }
      }
      for (const auto& f : kb.facts()) {
        if (const Definition* d = rec.definitions.find(f.predicate, f.args.size())) {
          rec.notes.push_back(render_statement(*d, f, false));
        }
      }
    } else if (cfg.fallback_retrieval) {
      evidence.fetch(ex.question);
    }

    std::vector<retrieval::Chunk> final_passages = evidence.seen();
    if (cfg.max_passages && final_passages.size() > cfg.max_passages) final_passages.resize(cfg.max_passages);
    static const std::vector<std::string> kNoNotes;
    static const std::vector<retrieval::Chunk> kNoPassages;
    static const std::vector<prolog::Term> kNoAnswer;
    rec.final_prompt = build_final_prompt(cfg.ablation.notes ? kNoNotes : rec.notes,
                                          cfg.ablation.passages ? kNoPassages : final_passages,
                                          cfg.ablation.prolog_answer ? kNoAnswer : rec.prolog_answer, ex.question,
                                          cfg.fewshot.final);
    req = cfg.request;
    req.role = llm::Role::Final;
    req.prompt = rec.final_prompt;
    const auto fin = res.llm->complete(req);
    ledger.record("final", llm::Role::Final, fin.usage);
    rec.final_raw = fin.text;
    if (auto span = llm::extract_answer_span(fin.text)) {
      rec.final_answer = strip_quotes(*span);
    } else {
      rec.warnings.push_back("final response has no answer tags");
    }
  } catch (const llm::TransportError& e) {
    rec.aborted = true;
    rec.abort_reason = std::string("transport: ") + e.what();
  } catch (const llm::ScriptMiss& e) {
    rec.aborted = true;
    rec.abort_reason = std::string("script miss: ") + e.what();
  }

  for (const auto& c : evidence.seen()) rec.passages.push_back({c.chunk_id, c.title, c.text});
  rec.usage = ledger.snapshot();
  rec.llm_calls = rec.usage.records.size();
  rec.retrieval_calls = evidence.retrieval_calls();
  rec.error_category = categorize(rec);
  return rec;
}

std::vector<RunRecord> run_dataset(const std::vector<evalkit::QaExample>& examples, const PipelineConfig& cfg,
                                   const Resources& res, std::size_t parallel) {
  std::vector<RunRecord> out(examples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < examples.size();) out[i] = answer_question(examples[i], cfg, res);
  };
  parallel = std::clamp<std::size_t>(parallel, 1, std::max<std::size_t>(1, examples.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < parallel; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

ErrorCategory categorize(const RunRecord& r) {
  if (!r.query) return ErrorCategory::QueryParseError;
  const bool final_empty = r.steps.empty() || r.steps.back().solution_after.empty();
  const bool parse_failure =
      std::any_of(r.steps.begin(), r.steps.end(), [](const StepArtifact& s) { return s.has_parse_failure(); });
  if (parse_failure && final_empty) return ErrorCategory::ExecutionParseError;
  for (std::size_t i = 0; i + 1 < r.steps.size(); ++i) {
    if (r.steps[i].solution_after.empty()) return ErrorCategory::IntermediatePredicateExistence;
  }
  if (final_empty) return ErrorCategory::FinalPredicateExistence;
  return ErrorCategory::None;
}

evalkit::ScoreRow score_record(const RunRecord& r) {
  evalkit::ScoreRow row;
  row.id = r.question_id;
  row.aborted = r.aborted;
  row.error_category = to_string(r.error_category);
  if (!r.gold_answers.empty()) {
    row.em = evalkit::exact_match(r.final_answer, r.gold_answers);
    row.f1 = evalkit::token_f1(r.final_answer, r.gold_answers);
  }
  row.retrieval_calls = static_cast<double>(r.retrieval_calls);
  row.llm_calls = static_cast<double>(r.llm_calls);
  row.prompt_tokens = static_cast<double>(r.usage.totals.prompt_tokens);
  row.completion_tokens = static_cast<double>(r.usage.totals.completion_tokens);
  row.cached_tokens = static_cast<double>(r.usage.totals.cached_tokens);
  return row;
}

}  // namespace picot::pipeline
