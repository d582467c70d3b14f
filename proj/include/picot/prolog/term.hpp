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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace picot::prolog {

struct Term;

struct StringConst {
  std::string text;
  friend bool operator==(const StringConst&, const StringConst&) = default;
};

struct IntConst {
  std::int64_t value = 0;
  friend bool operator==(const IntConst&, const IntConst&) = default;
};

// Month and day are range-checked (1..12, 1..31) but not calendar-checked:
// fictional corpora carry dates such as 0985-04-02.
struct DateConst {
  int year = 0;
  int month = 1;
  int day = 1;
  friend bool operator==(const DateConst&, const DateConst&) = default;
};

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct Compound {
  std::string functor;
  std::vector<Term> args;
};

// The term algebra shared by queries, facts and answers.
struct Term {
  using Node = std::variant<StringConst, IntConst, DateConst, Variable, Compound>;
  Node node;

  static Term string(std::string text) { return Term{StringConst{std::move(text)}}; }
  static Term integer(std::int64_t v) { return Term{IntConst{v}}; }
  static Term date(int y, int m, int d) { return Term{DateConst{y, m, d}}; }
  static Term var(std::string name) { return Term{Variable{std::move(name)}}; }
  static Term compound(std::string functor, std::vector<Term> args);

  bool is_var() const { return std::holds_alternative<Variable>(node); }
  bool is_string() const { return std::holds_alternative<StringConst>(node); }
  bool is_int() const { return std::holds_alternative<IntConst>(node); }
  bool is_date() const { return std::holds_alternative<DateConst>(node); }
  bool is_compound() const { return std::holds_alternative<Compound>(node); }
  bool is_ground() const;

  const Variable& as_var() const { return std::get<Variable>(node); }
  const StringConst& as_string() const { return std::get<StringConst>(node); }
  const IntConst& as_int() const { return std::get<IntConst>(node); }
  const DateConst& as_date() const { return std::get<DateConst>(node); }
  const Compound& as_compound() const { return std::get<Compound>(node); }

  friend bool operator==(const Term& a, const Term& b);
};

bool operator==(const Compound& a, const Compound& b);

// Standard order of terms: Variable < IntConst < StringConst < DateConst <
// other Compound. Within kinds: name order, numeric order, byte order,
// chronological order, then functor/arity/arguments.
int compare_standard_order(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare_standard_order(a, b) < 0; }
};

bool is_valid_variable_name(std::string_view name);
bool is_valid_functor(std::string_view name);

// Collects variable names in first-occurrence order.
void collect_variables(const Term& t, std::vector<std::string>& out);

// Canonical Prolog text: strings double-quoted with \" and \\ escapes,
// dates as date(Y, M, D).
std::string print_term(const Term& t);

// Plain rendering used in natural-language text: strings without quotes
// (unless quote_strings), dates as YYYY-MM-DD.
std::string render_constant(const Term& t, bool quote_strings = false);

}  // namespace picot::prolog
