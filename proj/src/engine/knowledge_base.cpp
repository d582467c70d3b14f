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

#include "picot/engine/knowledge_base.hpp"

#include <algorithm>
#include <stdexcept>

#include "picot/prolog/parser.hpp"

namespace picot::engine {

std::string print_fact(const Fact& f) {
  return prolog::print_term(Term::compound(f.predicate, f.args)) + ".";
}

bool KnowledgeBase::add(Fact fact) {
  if (!prolog::is_valid_functor(fact.predicate)) {
    throw std::invalid_argument("invalid predicate name '" + fact.predicate + "'");
  }
  if (!std::all_of(fact.args.begin(), fact.args.end(), [](const Term& t) { return t.is_ground(); })) {
    throw std::invalid_argument("fact is not ground: " + print_fact(fact));
  }
  std::string key = print_fact(fact);
  if (!keys_.insert(std::move(key)).second) return false;
  index_[{fact.predicate, fact.args.size()}].push_back(facts_.size());
  facts_.push_back(std::move(fact));
  return true;
}

bool KnowledgeBase::contains(const Fact& fact) const { return keys_.count(print_fact(fact)) > 0; }

const std::vector<std::size_t>& KnowledgeBase::lookup(const std::string& predicate,
                                                      std::size_t arity) const {
  static const std::vector<std::size_t> kNone;
  auto it = index_.find({predicate, arity});
  return it == index_.end() ? kNone : it->second;
}

std::string KnowledgeBase::serialize() const {
  std::string out;
  for (const auto& f : facts_) {
    out += print_fact(f);
    out += '\n';
  }
  return out;
}

Expected<KnowledgeBase, prolog::ParseError> KnowledgeBase::parse(std::string_view text) {
  KnowledgeBase kb;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(offset, nl - offset);
    const std::size_t line_start = offset;
    offset = nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    auto goals = prolog::parse_goals(line);
    if (!goals) {
      auto e = goals.error();
      e.position += line_start;
      return unexpected(e);
    }
    if (goals->size() != 1 || !(*goals)[0].is_atom()) {
      return unexpected(prolog::ParseError{prolog::ParseErrorKind::MalformedTerm, line_start,
                                           "expected exactly one fact per line"});
    }
    const auto& atom = (*goals)[0].as_atom();
    try {
      kb.add(Fact{atom.predicate, atom.args});
    } catch (const std::invalid_argument& e) {
      return unexpected(prolog::ParseError{prolog::ParseErrorKind::MalformedTerm, line_start, e.what()});
    }
  }
  return kb;
}

}  // namespace picot::engine
