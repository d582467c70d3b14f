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

#include "picot/prolog/term.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "picot/prolog/query.hpp"

namespace picot::prolog {

Term Term::compound(std::string functor, std::vector<Term> args) {
  return Term{Compound{std::move(functor), std::move(args)}};
}

bool Term::is_ground() const {
  if (is_var()) return false;
  if (const auto* c = std::get_if<Compound>(&node)) {
    return std::all_of(c->args.begin(), c->args.end(), [](const Term& t) { return t.is_ground(); });
  }
  return true;
}

bool operator==(const Compound& a, const Compound& b) {
  return a.functor == b.functor && a.args == b.args;
}

bool operator==(const Term& a, const Term& b) { return a.node == b.node; }

namespace {

int rank(const Term& t) {
  return std::visit(
      [](const auto& n) -> int {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Variable>) return 0;
        if constexpr (std::is_same_v<N, IntConst>) return 1;
        if constexpr (std::is_same_v<N, StringConst>) return 2;
        if constexpr (std::is_same_v<N, DateConst>) return 3;
        return 4;
      },
      t.node);
}

template <typename T>
int three_way(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int compare_standard_order(const Term& a, const Term& b) {
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (ra) {
    case 0:
      return three_way(a.as_var().name, b.as_var().name);
    case 1:
      return three_way(a.as_int().value, b.as_int().value);
    case 2:
      return three_way(a.as_string().text, b.as_string().text);
    case 3: {
      const auto& x = a.as_date();
      const auto& y = b.as_date();
      if (int c = three_way(x.year, y.year)) return c;
      if (int c = three_way(x.month, y.month)) return c;
      return three_way(x.day, y.day);
    }
    default: {
      const auto& x = a.as_compound();
      const auto& y = b.as_compound();
      if (int c = three_way(x.functor, y.functor)) return c;
      if (int c = three_way(x.args.size(), y.args.size())) return c;
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (int c = compare_standard_order(x.args[i], y.args[i])) return c;
      }
      return 0;
    }
  }
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty()) return false;
  const char c0 = name.front();
  if (!((c0 >= 'A' && c0 <= 'Z') || c0 == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_valid_functor(std::string_view name) {
  if (name.empty()) return false;
  const char c0 = name.front();
  if (!(c0 >= 'a' && c0 <= 'z')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    const auto& n = t.as_var().name;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  } else if (t.is_compound()) {
    for (const auto& a : t.as_compound().args) collect_variables(a, out);
  }
}

namespace {

std::string quote(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string iso_date(const DateConst& d) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

}  // namespace

std::string print_term(const Term& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, StringConst>) {
          return quote(n.text);
        } else if constexpr (std::is_same_v<N, IntConst>) {
          return std::to_string(n.value);
        } else if constexpr (std::is_same_v<N, DateConst>) {
          return "date(" + std::to_string(n.year) + ", " + std::to_string(n.month) + ", " +
                 std::to_string(n.day) + ")";
        } else if constexpr (std::is_same_v<N, Variable>) {
          return n.name;
        } else {
          if (n.args.empty()) return n.functor;
          std::string out = n.functor + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            out += print_term(n.args[i]);
          }
          return out + ")";
        }
      },
      t.node);
}

std::string render_constant(const Term& t, bool quote_strings) {
  if (t.is_string()) return quote_strings ? quote(t.as_string().text) : t.as_string().text;
  if (t.is_date()) return iso_date(t.as_date());
  return print_term(t);
}

// ---- goals ---------------------------------------------------------------

bool operator==(const IfThenElse& a, const IfThenElse& b) {
  return a.cond == b.cond && a.then_branch == b.then_branch && a.else_branch == b.else_branch;
}

bool operator==(const Aggregate& a, const Aggregate& b) {
  return a.kind == b.kind && a.distinct == b.distinct && a.inner == b.inner && a.result == b.result;
}

bool operator==(const Goal& a, const Goal& b) { return a.node == b.node; }

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnquotedConstant: return "UnquotedConstant";
    case ParseErrorKind::NegationUnsupported: return "NegationUnsupported";
    case ParseErrorKind::EmptyInput: return "EmptyInput";
    case ParseErrorKind::MalformedTerm: return "MalformedTerm";
    case ParseErrorKind::BadAggregate: return "BadAggregate";
    case ParseErrorKind::UnbalancedDelimiter: return "UnbalancedDelimiter";
  }
  return "?";
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Unify: return "=";
    case CompareOp::StructEq: return "==";
    case CompareOp::StdGt: return "@>";
    case CompareOp::StdLt: return "@<";
  }
  return "?";
}

namespace {

void add_unique(std::vector<std::string>& out, const std::vector<std::string>& vars) {
  for (const auto& v : vars) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
}

void goal_vars_into(const Goal& g, bool include_locals, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Atom>) {
          for (const auto& a : n.args) collect_variables(a, out);
        } else if constexpr (std::is_same_v<N, Comparison>) {
          collect_variables(n.lhs, out);
          collect_variables(n.rhs, out);
        } else if constexpr (std::is_same_v<N, IfThenElse>) {
          for (const auto& c : n.cond) goal_vars_into(c, include_locals, out);
          for (const auto& c : n.then_branch) goal_vars_into(c, include_locals, out);
          if (n.else_branch) {
            for (const auto& c : *n.else_branch) goal_vars_into(c, include_locals, out);
          }
        } else if constexpr (std::is_same_v<N, Aggregate>) {
          if (include_locals) {
            for (const auto& c : n.inner) goal_vars_into(c, include_locals, out);
          }
          add_unique(out, {n.result.name});
        } else {
          add_unique(out, {n.var.name});
        }
      },
      g.node);
}

}  // namespace

std::vector<std::string> goal_variables(const Goal& goal, bool include_aggregate_locals) {
  std::vector<std::string> out;
  goal_vars_into(goal, include_aggregate_locals, out);
  return out;
}

std::vector<std::string> goal_variables(const std::vector<Goal>& goals,
                                        bool include_aggregate_locals) {
  std::vector<std::string> out;
  for (const auto& g : goals) goal_vars_into(g, include_aggregate_locals, out);
  return out;
}

bool query_mentions(const Query& q, const std::string& var_name) {
  const auto vars = goal_variables(q.goals, true);
  return std::find(vars.begin(), vars.end(), var_name) != vars.end();
}

}  // namespace picot::prolog
