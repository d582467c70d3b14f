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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picot/expected.hpp"
#include "picot/prolog/query.hpp"

namespace picot::engine {

using prolog::Term;

struct Fact {
  std::string predicate;
  std::vector<Term> args;
  friend bool operator==(const Fact&, const Fact&) = default;
};

// `pred("a", "b").`
std::string print_fact(const Fact& f);

// Insertion-ordered set of ground facts, indexed by predicate and arity.
class KnowledgeBase {
 public:
  // Returns false when the fact is already present. Throws
  // std::invalid_argument for a non-ground fact or an invalid functor.
  bool add(Fact fact);

  bool contains(const Fact& fact) const;
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const std::vector<Fact>& facts() const { return facts_; }

  // Positions in facts() of every fact with this predicate and arity.
  const std::vector<std::size_t>& lookup(const std::string& predicate, std::size_t arity) const;

  // One canonical fact per line.
  std::string serialize() const;
  static Expected<KnowledgeBase, prolog::ParseError> parse(std::string_view text);

 private:
  std::vector<Fact> facts_;
  std::set<std::string> keys_;
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> index_;
};

}  // namespace picot::engine
