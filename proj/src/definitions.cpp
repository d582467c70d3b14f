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

#include "picot/definitions.hpp"

#include <algorithm>
#include <cctype>

#include "picot/prolog/parser.hpp"

namespace picot {

using prolog::ParseError;
using prolog::ParseErrorKind;
using prolog::Term;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

ParseError malformed(std::string msg) { return ParseError{ParseErrorKind::MalformedTerm, 0, std::move(msg)}; }

bool is_placeholder(std::string_view s) {
  if (s.size() < 3 || s.front() != '<' || s.back() != '>') return false;
  return std::all_of(s.begin() + 1, s.end() - 1, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ' ' || c == '-';
  });
}

// Placeholder tokens of a template as (offset, length).
std::vector<std::pair<std::size_t, std::size_t>> placeholders(std::string_view tpl) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while ((i = tpl.find('<', i)) != std::string_view::npos) {
    const std::size_t close = tpl.find('>', i);
    if (close == std::string_view::npos) break;
    if (is_placeholder(tpl.substr(i, close - i + 1))) {
      out.emplace_back(i, close - i + 1);
      i = close + 1;
    } else {
      ++i;
    }
  }
  return out;
}

// Maps each placeholder occurrence of a template to an argument position.
// Names from the head keep their positions, repeated names are consumed left
// to right, and names the head does not use take the remaining positions in
// order.
std::vector<std::optional<std::size_t>> resolve_slots(const Definition& def, std::string_view tpl) {
  const auto marks = placeholders(tpl);
  std::map<std::string, std::vector<std::size_t>> by_name;
  for (std::size_t p = 0; p < def.slots.size(); ++p) by_name[def.slots[p]].push_back(p);

  std::vector<bool> claimed(def.slots.size(), false);
  for (const auto& [off, len] : marks) {
    auto it = by_name.find(std::string(tpl.substr(off, len)));
    if (it != by_name.end()) {
      for (auto p : it->second) claimed[p] = true;
    }
  }
  std::vector<std::size_t> spare;
  for (std::size_t p = 0; p < def.slots.size(); ++p) {
    if (!claimed[p] && def.slots[p] != kAnswerPlaceholder) spare.push_back(p);
  }

  std::map<std::string, std::size_t> seen;
  std::map<std::string, std::size_t> fallback;
  std::vector<std::optional<std::size_t>> out;
  for (const auto& [off, len] : marks) {
    const std::string name(tpl.substr(off, len));
    auto it = by_name.find(name);
    if (it != by_name.end()) {
      const std::size_t n = seen[name]++;
      out.push_back(it->second[std::min(n, it->second.size() - 1)]);
    } else if (auto f = fallback.find(name); f != fallback.end()) {
      out.push_back(f->second);
    } else if (name != kAnswerPlaceholder && fallback.size() < spare.size()) {
      const std::size_t p = spare[fallback.size()];
      fallback.emplace(name, p);
      out.push_back(p);
    } else {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

// value(p) returns the text for argument p or nullopt to keep the token.
template <typename F>
std::string fill(const Definition& def, std::string_view tpl, F value) {
  const auto marks = placeholders(tpl);
  const auto slots = resolve_slots(def, tpl);
  std::string out;
  std::size_t last = 0;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const auto [off, len] = marks[i];
    out.append(tpl.substr(last, off - last));
    std::optional<std::string> text;
    if (slots[i]) text = value(*slots[i]);
    out.append(text ? *text : std::string(tpl.substr(off, len)));
    last = off + len;
  }
  out.append(tpl.substr(last));
  return out;
}

}  // namespace

std::optional<std::size_t> Definition::answer_position() const {
  auto it = std::find(slots.begin(), slots.end(), kAnswerPlaceholder);
  if (it == slots.end()) return std::nullopt;
  return static_cast<std::size_t>(it - slots.begin());
}

bool DefinitionTable::add(Definition def) {
  auto key = std::make_pair(def.predicate, def.arity);
  if (defs_.count(key)) return false;
  defs_.emplace(key, std::move(def));
  order_.push_back(std::move(key));
  return true;
}

const Definition* DefinitionTable::find(const std::string& predicate, std::size_t arity) const {
  auto it = defs_.find({predicate, arity});
  return it == defs_.end() ? nullptr : &it->second;
}

std::vector<const Definition*> DefinitionTable::entries() const {
  std::vector<const Definition*> out;
  for (const auto& key : order_) out.push_back(&defs_.at(key));
  return out;
}

Expected<Definition, ParseError> parse_definition_line(std::string_view line) {
  std::string_view s = trim(line);
  if (!s.empty() && (s.front() == '-' || s.front() == '*')) s = trim(s.substr(1));
  Definition def;
  def.source = std::string(s);

  std::size_t arrow = s.find("->");
  std::size_t arrow_len = 2;
  const std::size_t uarrow = s.find("\xE2\x86\x92");
  if (uarrow != std::string_view::npos && (arrow == std::string_view::npos || uarrow < arrow)) {
    arrow = uarrow;
    arrow_len = 3;
  }
  if (arrow == std::string_view::npos) return unexpected(malformed("definition without '->': " + def.source));

  std::string_view head = trim(s.substr(0, arrow));
  const std::string_view rest = s.substr(arrow + arrow_len);
  const std::size_t open = head.find('(');
  if (open == std::string_view::npos) {
    def.predicate = std::string(head);
  } else {
    if (head.back() != ')') return unexpected(malformed("unbalanced definition head: " + std::string(head)));
    def.predicate = std::string(trim(head.substr(0, open)));
    std::string_view args = head.substr(open + 1, head.size() - open - 2);
    while (true) {
      const std::size_t comma = args.find(',');
      const std::string_view a = trim(args.substr(0, comma));
      if (!is_placeholder(a)) {
        return unexpected(malformed("definition argument is not a placeholder: " + std::string(a)));
      }
      def.slots.emplace_back(a);
      if (comma == std::string_view::npos) break;
      args.remove_prefix(comma + 1);
    }
  }
  if (!prolog::is_valid_functor(def.predicate)) {
    return unexpected(malformed("invalid predicate name in definition: " + def.predicate));
  }
  def.arity = def.slots.size();

  const std::size_t semi = rest.rfind(';');
  if (semi == std::string_view::npos) return unexpected(malformed("definition without ';': " + def.source));
  def.statement_template = std::string(trim(rest.substr(0, semi)));
  def.question_template = std::string(trim(rest.substr(semi + 1)));
  if (def.statement_template.empty() || def.question_template.empty()) {
    return unexpected(malformed("empty template in definition: " + def.source));
  }
  return def;
}

Expected<DefinitionTable, ParseError> parse_definitions(std::string_view text) {
  DefinitionTable table;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(offset, nl - offset);
    const std::size_t start = offset;
    offset = nl + 1;
    if (trim(line).empty()) continue;
    auto def = parse_definition_line(line);
    if (!def) {
      auto e = def.error();
      e.position = start;
      return unexpected(e);
    }
    table.add(std::move(def).value());
  }
  return table;
}

const Definition& require_definition(const DefinitionTable& table, const std::string& predicate,
                                     std::size_t arity) {
  const Definition* d = table.find(predicate, arity);
  if (!d) {
    throw DefinitionError(DefinitionErrorKind::Missing,
                          "no definition for " + predicate + "/" + std::to_string(arity));
  }
  return *d;
}

std::optional<std::size_t> extraction_slot(const prolog::Atom& goal, const engine::Solution& bindings) {
  for (std::size_t i = 0; i < goal.args.size(); ++i) {
    if (!engine::substitute(goal.args[i], bindings).is_ground()) return i;
  }
  return std::nullopt;
}

std::string render_question(const Definition& def, const prolog::Atom& goal, const engine::Solution& bindings,
                            bool quote_strings) {
  const auto slot = extraction_slot(goal, bindings);
  return fill(def, def.question_template, [&](std::size_t p) -> std::optional<std::string> {
    if (p >= goal.args.size()) return std::nullopt;
    const Term t = engine::substitute(goal.args[p], bindings);
    if (t.is_ground()) return prolog::render_constant(t, quote_strings);
    if (slot && *slot == p) return std::nullopt;
    throw DefinitionError(DefinitionErrorKind::Unbound, "argument " + std::to_string(p + 1) + " of " +
                                                            goal.predicate + " is unbound in the question");
  });
}

std::string render_statement(const Definition& def, const engine::Fact& fact, bool quote_strings) {
  return fill(def, def.statement_template, [&](std::size_t p) -> std::optional<std::string> {
    if (p >= fact.args.size()) return std::nullopt;
    return prolog::render_constant(fact.args[p], quote_strings);
  });
}

std::string render_entailment_question(std::string_view statement) {
  if (trim(statement).empty()) throw DefinitionError(DefinitionErrorKind::EmptyStatement, "empty statement");
  return "Is the following statement true or false? " + std::string(statement);
}

Expected<std::vector<Term>, ParseError> parse_answer_list(std::string_view text) {
  std::vector<Term> out;
  if (trim(text).empty()) return out;

  std::vector<std::pair<std::size_t, std::string_view>> items;
  bool in_str = false;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_str) {
      if (c == '\\' && i + 1 < text.size()) {
        ++i;
      } else if (c == '"') {
        in_str = false;
      }
    } else if (c == '"') {
      in_str = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    } else if (c == ',' && depth == 0) {
      items.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (in_str) return unexpected(ParseError{ParseErrorKind::MalformedTerm, start, "unbalanced double quote"});
  if (depth != 0) return unexpected(ParseError{ParseErrorKind::MalformedTerm, start, "unbalanced parenthesis"});
  items.emplace_back(start, text.substr(start));

  for (const auto& [pos, raw] : items) {
    const std::string_view item = trim(raw);
    if (item.empty()) continue;
    const bool literal_syntax = item.front() == '"' || item.rfind("date(", 0) == 0 ||
                                std::all_of(item.begin() + (item.front() == '-' ? 1 : 0), item.end(),
                                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (literal_syntax && item != "-") {
      auto t = prolog::parse_literal(item);
      if (!t) {
        auto e = t.error();
        e.position = std::min(pos + e.position, text.size());
        return unexpected(e);
      }
      out.push_back(std::move(t).value());
    } else if (item.find('"') != std::string_view::npos) {
      return unexpected(ParseError{ParseErrorKind::MalformedTerm, pos, "stray double quote in answer item"});
    } else {
      out.push_back(Term::string(std::string(item)));
    }
  }
  if (out.empty()) return unexpected(ParseError{ParseErrorKind::MalformedTerm, 0, "answer list has no items"});
  return out;
}

Expected<bool, ParseError> parse_verdict(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "true") return true;
  if (lower == "false" || lower.empty()) return false;
  return unexpected(ParseError{ParseErrorKind::MalformedTerm, 0, "verdict is neither true nor false"});
}

}  // namespace picot
