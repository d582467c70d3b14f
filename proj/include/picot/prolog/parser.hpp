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

#include <string>
#include <string_view>
#include <vector>

#include "picot/expected.hpp"
#include "picot/prolog/query.hpp"

namespace picot::prolog {

// Parses a conjunction of goals in the restricted query language:
//
//   query  := item ( ',' item )* [ '.' ]
//   item   := goal [ '->' conj [ ';' body ] ]        (top level only)
//   goal   := term [ op term ] | '(' body ')' | aggregate_all(...)
//   body   := conj [ '->' conj ] [ ';' body ]
//   op     := '=' | '==' | '@>' | '@<'
//
// A top-level `C -> T` takes only the goal immediately before the arrow as
// its condition and the rest of the query as its then-branch. Goals on
// separate lines may omit the separating comma. `\+` anywhere is rejected.
Expected<std::vector<Goal>, ParseError> parse_goals(std::string_view text);

// parse_goals plus target validation: the target must be a variable that
// occurs somewhere in the goals.
Expected<Query, ParseError> parse_query(std::string_view text, std::string_view target);

// One ground answer literal: "text", signed integer or date(Y, M, D).
Expected<Term, ParseError> parse_literal(std::string_view text);

std::string print_goal(const Goal& g);
std::string print_goals(const std::vector<Goal>& goals);
// Canonical text of the goals (the target is carried separately).
std::string print_query(const Query& q);

}  // namespace picot::prolog
