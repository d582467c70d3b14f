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

#include "picot/llm/prompts.hpp"

#include <cctype>

#include "picot/prolog/parser.hpp"

namespace picot::llm {

namespace {

constexpr std::string_view kQueryGenTemplate = R"tpl(You will be provided a question. Your goal is to devise a 
Prolog query to answer this question. Your response must end in 
"**Query:** <query>\n**Target:** <target>\n**Definition:** 
<definition>", where <query> is a Prolog query that when 
executed, will yield the answer to the question, <target> 
is the target variable in the Prolog query to be returned
as the final answer, and <definition> defines the semantic 
meaning of predicates in the Prolog query.

Here are some examples:
(START OF EXAMPLES)
{examples}
(END OF EXAMPLES)

Question: {question}
Answer: )tpl";

constexpr std::string_view kSliceTemplate = R"tpl(You are given the following evidence:
(BEGIN EVIDENCE)
{evidence}
(END EVIDENCE)

You will be provided a question. If there is a single answer, 
your response must end with the final answer enclosed in tags: 
<answer>FINAL_ANSWER</answer>
If there are multiple answers, your response must end with the 
final answers enclosed in tags:
<answer>FINAL_ANSWER_1, FINAL_ANSWER_2, ..., FINAL_ANSWER_N</answer>.
If FINAL_ANSWER_N is a string, it must be enclosed in double quotes.
For example, <answer>"FINAL_ANSWER_1", "FINAL_ANSWER_2"</answer>
If FINAL_ANSWER_N is a date, it must be formatted as 
date(year, month, day).
If no information is available to answer the question, 
your response must end with: <answer></answer>.

Here are some examples:
(START OF EXAMPLES)
{examples}
(END OF EXAMPLES)

Question: {question}
Answer:)tpl";

}  // namespace

std::string substitute_slots(std::string_view tpl,
                             std::initializer_list<std::pair<std::string_view, std::string_view>> slots) {
  std::string out;
  std::size_t i = 0;
  while (i < tpl.size()) {
    bool replaced = false;
    if (tpl[i] == '{') {
      for (const auto& [name, value] : slots) {
        if (tpl.compare(i + 1, name.size(), name) == 0 && i + 1 + name.size() < tpl.size() &&
            tpl[i + 1 + name.size()] == '}') {
          out.append(value);
          i += name.size() + 2;
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(tpl[i++]);
  }
  return out;
}

std::string build_query_generation_prompt(std::string_view question, std::string_view examples) {
  return substitute_slots(kQueryGenTemplate, {{"examples", examples}, {"question", question}});
}

std::string render_evidence(const std::vector<retrieval::Chunk>& chunks) {
  std::string out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i) out += "\n\n";
    out += chunks[i].title;
    out += '\n';
    out += chunks[i].text;
  }
  return out;
}

std::string build_slice_prompt(const std::vector<retrieval::Chunk>& evidence, std::string_view question,
                               std::string_view examples) {
  const std::string ev = render_evidence(evidence);
  return substitute_slots(kSliceTemplate, {{"evidence", ev}, {"examples", examples}, {"question", question}});
}

const char* to_string(ResponseErrorKind kind) {
  switch (kind) {
    case ResponseErrorKind::MissingAnswerTags: return "MissingAnswerTags";
    case ResponseErrorKind::MalformedResponse: return "MalformedResponse";
    case ResponseErrorKind::QueryParse: return "QueryParse";
    case ResponseErrorKind::DefinitionParse: return "DefinitionParse";
  }
  return "?";
}

Expected<std::string, ResponseError> extract_answer_span(std::string_view text) {
  constexpr std::string_view kOpen = "<answer>";
  constexpr std::string_view kClose = "</answer>";
  const std::size_t close = text.rfind(kClose);
  if (close == std::string_view::npos) {
    return unexpected(ResponseError{ResponseErrorKind::MissingAnswerTags, "no </answer> tag", std::nullopt});
  }
  const std::size_t open = text.rfind(kOpen, close);
  if (open == std::string_view::npos) {
    return unexpected(ResponseError{ResponseErrorKind::MissingAnswerTags, "no <answer> tag", std::nullopt});
  }
  return std::string(text.substr(open + kOpen.size(), close - open - kOpen.size()));
}

namespace {

std::string strip_code(std::string_view s) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) nl = s.size();
    std::string_view line = s.substr(pos, nl - pos);
    pos = nl + 1;
    const std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line.substr(first).rfind("```", 0) == 0) continue;
    for (char c : line) {
      if (c != '`') out.push_back(c);
    }
    out.push_back('\n');
  }
  const std::size_t b = out.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const std::size_t e = out.find_last_not_of(" \t\r\n");
  return out.substr(b, e - b + 1);
}

}  // namespace

Expected<QueryGenSections, ResponseError> split_query_generation_response(std::string_view text) {
  struct Marker {
    std::string_view label;
    std::size_t at = std::string_view::npos;
    std::size_t len = 0;
  };
  Marker markers[] = {{"**Query:**"}, {"**Target:**"}, {"**Definition:**"}};
  for (auto& m : markers) {
    m.at = text.rfind(m.label);
    m.len = m.label.size();
  }
  if (markers[2].at == std::string_view::npos) {
    constexpr std::string_view kPlural = "**Definitions:**";
    markers[2].at = text.rfind(kPlural);
    markers[2].len = kPlural.size();
  }
  for (const auto& m : markers) {
    if (m.at == std::string_view::npos) {
      return unexpected(ResponseError{ResponseErrorKind::MalformedResponse,
                                      "response lacks a " + std::string(m.label) + " section", std::nullopt});
    }
  }
  auto section = [&](const Marker& m) {
    const std::size_t start = m.at + m.len;
    std::size_t end = text.size();
    for (const auto& other : markers) {
      if (other.at >= start && other.at < end) end = other.at;
    }
    return strip_code(text.substr(start, end - start));
  };
  return QueryGenSections{section(markers[0]), section(markers[1]), section(markers[2])};
}

Expected<QueryGeneration, ResponseError> parse_query_generation_response(std::string_view text) {
  auto sections = split_query_generation_response(text);
  if (!sections) return unexpected(sections.error());
  auto query = prolog::parse_query(sections->query, sections->target);
  if (!query) {
    return unexpected(ResponseError{ResponseErrorKind::QueryParse, query.error().message, query.error()});
  }
  auto defs = parse_definitions(sections->definition);
  if (!defs) {
    return unexpected(ResponseError{ResponseErrorKind::DefinitionParse, defs.error().message, defs.error()});
  }
  return QueryGeneration{std::move(sections).value(), std::move(query).value(), std::move(defs).value()};
}

}  // namespace picot::llm
