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

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picot/definitions.hpp"
#include "picot/expected.hpp"
#include "picot/prolog/query.hpp"
#include "picot/retrieval/chunking.hpp"

namespace picot::llm {

// Replaces each {name} in a template; substituted text is not rescanned.
std::string substitute_slots(std::string_view tpl,
                             std::initializer_list<std::pair<std::string_view, std::string_view>> slots);

std::string build_query_generation_prompt(std::string_view question, std::string_view examples);

// Chunks as title, newline, text; a blank line between chunks.
std::string render_evidence(const std::vector<retrieval::Chunk>& chunks);

std::string build_slice_prompt(const std::vector<retrieval::Chunk>& evidence, std::string_view question,
                               std::string_view examples);

enum class ResponseErrorKind { MissingAnswerTags, MalformedResponse, QueryParse, DefinitionParse };

const char* to_string(ResponseErrorKind kind);

struct ResponseError {
  ResponseErrorKind kind = ResponseErrorKind::MalformedResponse;
  std::string message;
  std::optional<prolog::ParseError> parse;
};

// Content of the last <answer>...</answer> pair.
Expected<std::string, ResponseError> extract_answer_span(std::string_view text);

struct QueryGenSections {
  std::string query;
  std::string target;
  std::string definition;
};

// The last **Query:**, **Target:** and **Definition:** sections, with code
// fences and backticks removed.
Expected<QueryGenSections, ResponseError> split_query_generation_response(std::string_view text);

struct QueryGeneration {
  QueryGenSections sections;
  prolog::Query query;
  DefinitionTable definitions;
};

Expected<QueryGeneration, ResponseError> parse_query_generation_response(std::string_view text);

}  // namespace picot::llm
