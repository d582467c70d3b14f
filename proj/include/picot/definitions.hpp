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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picot/engine/knowledge_base.hpp"
#include "picot/engine/solve.hpp"
#include "picot/expected.hpp"
#include "picot/prolog/query.hpp"

namespace picot {

inline constexpr std::string_view kAnswerPlaceholder = "<answer>";

// One line of a definition block:
//   [- ]pred(<literal1>, <answer>) -> statement template ; question template
struct Definition {
  std::string predicate;
  std::size_t arity = 0;
  // Placeholder named at each argument position of the head.
  std::vector<std::string> slots;
  std::string statement_template;
  std::string question_template;
  std::string source;

  std::optional<std::size_t> answer_position() const;
};

class DefinitionTable {
 public:
  // Keeps the first definition for a given predicate and arity.
  bool add(Definition def);
  const Definition* find(const std::string& predicate, std::size_t arity) const;
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  // Definitions in the order they were given.
  std::vector<const Definition*> entries() const;

 private:
  std::map<std::pair<std::string, std::size_t>, Definition> defs_;
  std::vector<std::pair<std::string, std::size_t>> order_;
};

enum class DefinitionErrorKind { Missing, Unbound, EmptyStatement };

class DefinitionError : public std::runtime_error {
 public:
  DefinitionError(DefinitionErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  DefinitionErrorKind kind() const { return kind_; }

 private:
  DefinitionErrorKind kind_;
};

Expected<DefinitionTable, prolog::ParseError> parse_definitions(std::string_view text);
Expected<Definition, prolog::ParseError> parse_definition_line(std::string_view line);

// Looks up the definition or throws DefinitionError(Missing).
const Definition& require_definition(const DefinitionTable& table, const std::string& predicate,
                                     std::size_t arity);

// Leftmost argument that is not ground under bindings.
std::optional<std::size_t> extraction_slot(const prolog::Atom& goal, const engine::Solution& bindings);

// Question template with every placeholder other than the extraction slot
// filled from the goal. Throws DefinitionError(Unbound) when a needed
// argument is not ground.
std::string render_question(const Definition& def, const prolog::Atom& goal, const engine::Solution& bindings,
                            bool quote_strings = false);

std::string render_statement(const Definition& def, const engine::Fact& fact, bool quote_strings = false);

// Throws DefinitionError(EmptyStatement) on an empty statement.
std::string render_entailment_question(std::string_view statement);

// Items of an answer span. Bare items that are not integers are kept as
// strings.
Expected<std::vector<prolog::Term>, prolog::ParseError> parse_answer_list(std::string_view text);

// true / "true" -> true; false / "false" / empty -> false (case-insensitive).
Expected<bool, prolog::ParseError> parse_verdict(std::string_view text);

}  // namespace picot
