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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "picot/prolog/term.hpp"

namespace picot::prolog {

struct Goal;

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CompareOp {
  Unify,     // =
  StructEq,  // ==
  StdGt,     // @>
  StdLt,     // @<
};

struct Comparison {
  CompareOp op = CompareOp::Unify;
  Term lhs;
  Term rhs;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// (Cond -> Then ; Else). A missing else branch fails when Cond fails.
struct IfThenElse {
  std::vector<Goal> cond;
  std::vector<Goal> then_branch;
  std::optional<std::vector<Goal>> else_branch;
};

enum class AggregateKind { Count };

// aggregate_all(count, [distinct(]Inner[)], Result)
struct Aggregate {
  AggregateKind kind = AggregateKind::Count;
  bool distinct = false;
  std::vector<Goal> inner;
  Variable result;
};

// A variable standing alone as a goal. Parsed, never executable.
struct BareVar {
  Variable var;
  friend bool operator==(const BareVar&, const BareVar&) = default;
};

struct Goal {
  using Node = std::variant<Atom, Comparison, IfThenElse, Aggregate, BareVar>;
  Node node;

  bool is_atom() const { return std::holds_alternative<Atom>(node); }
  const Atom& as_atom() const { return std::get<Atom>(node); }

  friend bool operator==(const Goal& a, const Goal& b);
};

bool operator==(const IfThenElse& a, const IfThenElse& b);
bool operator==(const Aggregate& a, const Aggregate& b);

struct Query {
  std::vector<Goal> goals;
  Variable target;
  friend bool operator==(const Query&, const Query&) = default;
};

enum class ParseErrorKind {
  UnquotedConstant,
  NegationUnsupported,
  EmptyInput,
  MalformedTerm,
  BadAggregate,
  UnbalancedDelimiter,
};

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::MalformedTerm;
  std::size_t position = 0;
  std::string message;
};

const char* to_string(ParseErrorKind kind);
const char* to_string(CompareOp op);

// Variables of a goal list in first-occurrence order. Variables that occur
// only inside an aggregate's inner goal are local to it and are skipped
// unless include_aggregate_locals is set.
std::vector<std::string> goal_variables(const std::vector<Goal>& goals,
                                        bool include_aggregate_locals = false);
std::vector<std::string> goal_variables(const Goal& goal, bool include_aggregate_locals = false);

bool query_mentions(const Query& q, const std::string& var_name);

}  // namespace picot::prolog
