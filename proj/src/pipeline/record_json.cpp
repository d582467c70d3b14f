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

#include "picot/pipeline/record_json.hpp"

#include "picot/pipeline/final_prompt.hpp"
#include "picot/prolog/parser.hpp"

namespace picot::pipeline {

using nlohmann::json;

namespace {

json terms_json(const std::vector<prolog::Term>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back(prolog::print_term(t));
  return out;
}

json facts_json(const std::vector<engine::Fact>& facts) {
  json out = json::array();
  for (const auto& f : facts) out.push_back(engine::print_fact(f));
  return out;
}

json usage_json(const llm::Usage& u) {
  return {{"prompt_tokens", u.prompt_tokens},
          {"completion_tokens", u.completion_tokens},
          {"cached_tokens", u.cached_tokens}};
}

json optional_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json step_json(const StepArtifact& s) {
  json insts = json::array();
  for (const auto& i : s.instantiations) {
    insts.push_back({
        {"goal", i.goal},
        {"kind", to_string(i.kind)},
        {"question", i.question},
        {"evidence", i.evidence_ids},
        {"evidence_titles", i.evidence_titles},
        {"llm_called", i.llm_called},
        {"raw_response", i.raw_response},
        {"answers", terms_json(i.answers)},
        {"verdict", i.verdict ? json(*i.verdict) : json(nullptr)},
        {"parse_error", optional_json(i.parse_error)},
        {"skipped", optional_json(i.skipped)},
        {"facts_added", facts_json(i.facts_added)},
    });
  }
  json solutions = json::array();
  for (const auto& sol : s.solution_after) {
    json row = json::object();
    for (const auto& [var, value] : sol) row[var] = prolog::print_term(value);
    solutions.push_back(std::move(row));
  }
  json defects = json::array();
  for (const auto& d : s.defects) defects.push_back({{"kind", engine::to_string(d.kind)}, {"goal_index", d.goal_index}});
  return {
      {"index", s.step_index},        {"goal", s.goal_text},   {"kind", to_string(s.kind)},
      {"instantiations", insts},      {"facts_added", facts_json(s.facts_added)},
      {"solutions", solutions},       {"defects", defects},    {"warnings", s.warnings},
  };
}

}  // namespace

json record_to_json(const RunRecord& r) {
  json query = nullptr;
  if (r.query) {
    json goals = json::array();
    for (const auto& g : r.query->goals) goals.push_back(prolog::print_goal(g));
    query = {{"text", prolog::print_query(*r.query)}, {"target", r.query->target.name}, {"goals", goals}};
  }
  json defs = json::array();
  for (const Definition* d : r.definitions.entries()) {
    defs.push_back({{"predicate", d->predicate},
                    {"arity", d->arity},
                    {"slots", d->slots},
                    {"statement", d->statement_template},
                    {"question", d->question_template}});
  }
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(step_json(s));
  json passages = json::array();
  for (const auto& p : r.passages) passages.push_back({{"id", p.id}, {"title", p.title}, {"text", p.text}});
  json calls = json::array();
  for (const auto& c : r.usage.records) {
    json u = usage_json(c.usage);
    u["tag"] = c.tag;
    u["role"] = llm::to_string(c.role);
    calls.push_back(std::move(u));
  }
  return {
      {"question_id", r.question_id},
      {"question", r.question},
      {"gold_answers", r.gold_answers},
      {"querygen_raw", r.querygen_raw},
      {"query", query},
      {"query_error", optional_json(r.query_error)},
      {"definitions", {{"raw", r.definitions_raw}, {"parsed", defs}}},
      {"steps", steps},
      {"notes", r.notes},
      {"passages", passages},
      {"prolog_answer", terms_json(r.prolog_answer)},
      {"prolog_answer_text", render_prolog_answer(r.prolog_answer)},
      {"final_raw", r.final_raw},
      {"final_answer", r.final_answer},
      {"error_category", to_string(r.error_category)},
      {"usage", {{"calls", calls}, {"totals", usage_json(r.usage.totals)}}},
      {"retrieval_calls", r.retrieval_calls},
      {"llm_calls", r.llm_calls},
      {"aborted", r.aborted},
      {"abort_reason", r.abort_reason},
      {"warnings", r.warnings},
  };
}

std::string record_to_line(const RunRecord& r) { return record_to_json(r).dump(); }

evalkit::ScoreRow score_row_from_json(const json& j) {
  evalkit::ScoreRow row;
  row.id = j.at("question_id").get<std::string>();
  row.aborted = j.at("aborted").get<bool>();
  row.error_category = j.at("error_category").get<std::string>();
  const auto golds = j.at("gold_answers").get<std::vector<std::string>>();
  const auto answer = j.at("final_answer").get<std::string>();
  if (!golds.empty()) {
    row.em = evalkit::exact_match(answer, golds);
    row.f1 = evalkit::token_f1(answer, golds);
  }
  row.retrieval_calls = j.at("retrieval_calls").get<double>();
  row.llm_calls = j.at("llm_calls").get<double>();
  const auto& totals = j.at("usage").at("totals");
  row.prompt_tokens = totals.at("prompt_tokens").get<double>();
  row.completion_tokens = totals.at("completion_tokens").get<double>();
  row.cached_tokens = totals.at("cached_tokens").get<double>();
  return row;
}

}  // namespace picot::pipeline
