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

#include "picot/prolog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace picot::prolog {
namespace {

enum class Tok {
  Ident,
  Var,
  String,
  Int,
  LParen,
  RParen,
  Comma,
  Period,
  Semicolon,
  Arrow,
  Eq,
  EqEq,
  StdGt,
  StdLt,
  BadOp,    // recognised Prolog operator outside the supported subset
  Garbage,  // any other character
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
  bool newline_before = false;
};

// Thrown inside the parser and converted to ParseError at the API boundary.
struct ParseFailure {
  ParseError error;
};

[[noreturn]] void fail(ParseErrorKind kind, std::size_t pos, std::string msg) {
  throw ParseFailure{ParseError{kind, pos, std::move(msg)}};
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// `\+` outside string literals.
std::optional<std::size_t> find_negation(std::string_view s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_str) {
      if (c == '\\' && i + 1 < s.size()) {
        ++i;
      } else if (c == '"') {
        in_str = false;
      }
      continue;
    }
    if (c == '"') {
      in_str = true;
    } else if (c == '\\' && i + 1 < s.size() && s[i + 1] == '+') {
      return i;
    }
  }
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      bool nl = skip_space();
      Token t = next();
      t.newline_before = nl;
      const bool end = t.kind == Tok::End;
      out.push_back(std::move(t));
      if (end) break;
    }
    return out;
  }

 private:
  bool skip_space() {
    bool nl = false;
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '\n') {
        nl = true;
        ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '%') {  // line comment
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
    return nl;
  }

  bool at(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  Token make(Tok k, std::size_t start) {
    return Token{k, std::string(src_.substr(start, i_ - start)), start, false};
  }

  Token next() {
    const std::size_t start = i_;
    if (i_ >= src_.size()) return Token{Tok::End, "", src_.size(), false};
    const char c = src_[i_];
    const auto uc = static_cast<unsigned char>(c);

    if (c == '"') return string_literal();
    if (std::isdigit(uc) || (c == '-' && i_ + 1 < src_.size() &&
                             std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      ++i_;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      return make(Tok::Int, start);
    }
    if (std::islower(uc)) {
      while (i_ < src_.size() && is_ident_char(src_[i_])) ++i_;
      Token t = make(Tok::Ident, start);
      if (t.text == "is") t.kind = Tok::BadOp;
      return t;
    }
    if (std::isupper(uc) || c == '_') {
      while (i_ < src_.size() && is_ident_char(src_[i_])) ++i_;
      return make(Tok::Var, start);
    }
    // U+2192 RIGHTWARDS ARROW, as typeset queries render `->`.
    if (at("\xE2\x86\x92")) {
      i_ += 3;
      return make(Tok::Arrow, start);
    }
    static constexpr std::pair<std::string_view, Tok> kOps[] = {
        {"@>=", Tok::BadOp}, {"@=<", Tok::BadOp}, {"\\==", Tok::BadOp}, {"=..", Tok::BadOp},
        {"=:=", Tok::BadOp}, {"=\\=", Tok::BadOp}, {"->", Tok::Arrow},   {"==", Tok::EqEq},
        {"=<", Tok::BadOp},  {">=", Tok::BadOp},  {"\\=", Tok::BadOp},  {"@>", Tok::StdGt},
        {"@<", Tok::StdLt},  {"=", Tok::Eq},      {">", Tok::BadOp},    {"<", Tok::BadOp},
        {"(", Tok::LParen},  {")", Tok::RParen},  {",", Tok::Comma},    {";", Tok::Semicolon},
    };
    for (const auto& [text, kind] : kOps) {
      if (at(text)) {
        i_ += text.size();
        return make(kind, start);
      }
    }
    if (c == '.') {
      ++i_;
      const bool terminal = i_ >= src_.size() || std::isspace(static_cast<unsigned char>(src_[i_])) ||
                            src_[i_] == '%';
      return make(terminal ? Tok::Period : Tok::Garbage, start);
    }
    ++i_;
    // Keep multi-byte UTF-8 sequences in one garbage token.
    while (i_ < src_.size() && (static_cast<unsigned char>(src_[i_]) & 0xC0) == 0x80) ++i_;
    return make(Tok::Garbage, start);
  }

  Token string_literal() {
    const std::size_t start = i_;
    ++i_;
    std::string value;
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == '\\' && i_ + 1 < src_.size() && (src_[i_ + 1] == '"' || src_[i_ + 1] == '\\')) {
        value.push_back(src_[i_ + 1]);
        i_ += 2;
      } else if (c == '"') {
        ++i_;
        return Token{Tok::String, std::move(value), start, false};
      } else {
        value.push_back(c);
        ++i_;
      }
    }
    fail(ParseErrorKind::UnbalancedDelimiter, start, "unterminated string literal");
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

bool valid_date(std::int64_t m, std::int64_t d) { return m >= 1 && m <= 12 && d >= 1 && d <= 31; }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Goal> top() {
    if (peek().kind == Tok::End) fail(ParseErrorKind::EmptyInput, 0, "empty query");
    std::vector<Goal> goals;
    while (true) {
      std::vector<Goal> unit = goal_unit();
      if (peek().kind == Tok::Arrow) {
        next();
        IfThenElse ite;
        ite.cond = std::move(unit);
        ite.then_branch = conj();
        if (peek().kind == Tok::Semicolon) {
          next();
          ite.else_branch = body();
        }
        check_cond(ite.cond);
        goals.push_back(Goal{std::move(ite)});
        finish();
        return goals;
      }
      append(goals, std::move(unit));
      const Token& t = peek();
      if (t.kind == Tok::Comma) {
        next();
        continue;
      }
      if (t.kind == Tok::Period || t.kind == Tok::End) {
        finish();
        return goals;
      }
      if (t.newline_before && starts_goal(t)) continue;
      unexpected_after_goal(t);
    }
  }

  Term literal() {
    Term t = term(false);
    if (peek().kind != Tok::End) {
      fail(ParseErrorKind::MalformedTerm, peek().pos, "unexpected text after literal");
    }
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  static bool starts_goal(const Token& t) {
    return t.kind == Tok::Ident || t.kind == Tok::Var || t.kind == Tok::LParen;
  }

  static void append(std::vector<Goal>& dst, std::vector<Goal> src) {
    for (auto& g : src) dst.push_back(std::move(g));
  }

  void finish() {
    if (peek().kind == Tok::Period) next();
    if (peek().kind != Tok::End) unexpected_after_goal(peek());
  }

  [[noreturn]] void unexpected_after_goal(const Token& t) {
    switch (t.kind) {
      case Tok::RParen:
        fail(ParseErrorKind::UnbalancedDelimiter, t.pos, "unmatched ')'");
      case Tok::Semicolon:
        fail(ParseErrorKind::MalformedTerm, t.pos, "disjunction without '->' is not supported");
      case Tok::BadOp:
        fail(ParseErrorKind::MalformedTerm, t.pos, "unsupported operator '" + t.text + "'");
      default:
        fail(ParseErrorKind::MalformedTerm, t.pos, "expected ',' or end of query near '" + t.text + "'");
    }
  }

  // conj := goal_unit (',' goal_unit)*
  std::vector<Goal> conj() {
    std::vector<Goal> goals;
    while (true) {
      append(goals, goal_unit());
      const Token& t = peek();
      if (t.kind == Tok::Comma) {
        next();
        continue;
      }
      if (t.newline_before && starts_goal(t)) continue;
      return goals;
    }
  }

  // body := conj ['->' conj] [';' body]
  std::vector<Goal> body() {
    std::vector<Goal> c = conj();
    if (peek().kind == Tok::Arrow) {
      next();
      IfThenElse ite;
      ite.cond = std::move(c);
      ite.then_branch = conj();
      if (peek().kind == Tok::Semicolon) {
        next();
        ite.else_branch = body();
      }
      check_cond(ite.cond);
      std::vector<Goal> out;
      out.push_back(Goal{std::move(ite)});
      return out;
    }
    if (peek().kind == Tok::Semicolon) {
      fail(ParseErrorKind::MalformedTerm, peek().pos, "disjunction without '->' is not supported");
    }
    return c;
  }

  static bool contains_aggregate(const std::vector<Goal>& goals) {
    for (const auto& g : goals) {
      if (std::holds_alternative<Aggregate>(g.node)) return true;
      if (const auto* ite = std::get_if<IfThenElse>(&g.node)) {
        if (contains_aggregate(ite->cond)) return true;
      }
    }
    return false;
  }

  void check_cond(const std::vector<Goal>& cond) {
    if (contains_aggregate(cond)) {
      fail(ParseErrorKind::BadAggregate, peek().pos, "aggregate inside an if-then-else condition");
    }
  }

  std::vector<Goal> goal_unit() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      const std::size_t open = t.pos;
      next();
      std::vector<Goal> inner = body();
      if (peek().kind != Tok::RParen) {
        if (peek().kind == Tok::End) fail(ParseErrorKind::UnbalancedDelimiter, open, "unclosed '('");
        unexpected_after_goal(peek());
      }
      next();
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "aggregate_all" && peek(1).kind == Tok::LParen) {
      std::vector<Goal> out;
      out.push_back(aggregate());
      return out;
    }
    if (t.kind == Tok::End) fail(ParseErrorKind::MalformedTerm, t.pos, "expected a goal");

    const std::size_t start = t.pos;
    Term lhs = term(false);
    std::optional<CompareOp> op;
    switch (peek().kind) {
      case Tok::Eq: op = CompareOp::Unify; break;
      case Tok::EqEq: op = CompareOp::StructEq; break;
      case Tok::StdGt: op = CompareOp::StdGt; break;
      case Tok::StdLt: op = CompareOp::StdLt; break;
      case Tok::BadOp:
        fail(ParseErrorKind::MalformedTerm, peek().pos, "unsupported operator '" + peek().text + "'");
      default: break;
    }
    std::vector<Goal> out;
    if (op) {
      next();
      Term rhs = term(false);
      out.push_back(Goal{Comparison{*op, std::move(lhs), std::move(rhs)}});
      return out;
    }
    if (lhs.is_var()) {
      out.push_back(Goal{BareVar{lhs.as_var()}});
    } else if (lhs.is_compound()) {
      const auto& c = lhs.as_compound();
      out.push_back(Goal{Atom{c.functor, c.args}});
    } else if (lhs.is_date()) {
      const auto& d = lhs.as_date();
      out.push_back(Goal{Atom{"date", {Term::integer(d.year), Term::integer(d.month), Term::integer(d.day)}}});
    } else {
      fail(ParseErrorKind::MalformedTerm, start, "a constant is not a goal");
    }
    return out;
  }

  Goal aggregate() {
    const std::size_t start = peek().pos;
    next();  // aggregate_all
    next();  // (
    const Token& kind = peek();
    if (kind.kind != Tok::Ident || kind.text != "count") {
      fail(ParseErrorKind::BadAggregate, kind.pos, "only aggregate_all(count, ...) is supported");
    }
    next();
    expect(Tok::Comma, ParseErrorKind::BadAggregate, "expected ',' after count");

    Aggregate agg;
    if (peek().kind == Tok::Ident && peek().text == "distinct" && peek(1).kind == Tok::LParen) {
      agg.distinct = true;
      const std::size_t open = peek(1).pos;
      next();
      next();
      agg.inner = body();
      if (peek().kind == Tok::Comma) {
        fail(ParseErrorKind::BadAggregate, peek().pos, "distinct/2 is not supported");
      }
      if (peek().kind != Tok::RParen) fail(ParseErrorKind::UnbalancedDelimiter, open, "unclosed distinct(");
      next();
    } else {
      agg.inner = goal_unit();
    }
    expect(Tok::Comma, ParseErrorKind::BadAggregate, "expected ',' before the result variable");
    const Token& r = peek();
    if (r.kind != Tok::Var) fail(ParseErrorKind::BadAggregate, r.pos, "aggregate result must be a variable");
    agg.result = Variable{r.text == "_" ? fresh_anonymous() : r.text};
    next();
    if (peek().kind != Tok::RParen) {
      if (peek().kind == Tok::End) fail(ParseErrorKind::UnbalancedDelimiter, start, "unclosed aggregate_all(");
      fail(ParseErrorKind::BadAggregate, peek().pos, "expected ')' after aggregate result");
    }
    next();
    if (agg.inner.empty()) fail(ParseErrorKind::BadAggregate, start, "empty aggregate goal");
    const auto inner_vars = goal_variables(agg.inner, true);
    if (std::find(inner_vars.begin(), inner_vars.end(), agg.result.name) != inner_vars.end()) {
      fail(ParseErrorKind::BadAggregate, start, "aggregate result variable occurs in its goal");
    }
    return Goal{std::move(agg)};
  }

  void expect(Tok kind, ParseErrorKind err, const char* msg) {
    if (peek().kind != kind) {
      if (peek().kind == Tok::End) fail(ParseErrorKind::UnbalancedDelimiter, peek().pos, msg);
      fail(err, peek().pos, msg);
    }
    next();
  }

  std::string fresh_anonymous() { return "_G" + std::to_string(++anon_); }

  // in_args: the term is an argument, where stray text means an unquoted
  // constant.
  Term term(bool in_args) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::String: {
        Term out = Term::string(t.text);
        next();
        return out;
      }
      case Tok::Int: {
        std::int64_t v = 0;
        const auto* first = t.text.data();
        const auto* last = first + t.text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) fail(ParseErrorKind::MalformedTerm, t.pos, "integer out of range");
        next();
        return Term::integer(v);
      }
      case Tok::Var: {
        Term out = Term::var(t.text == "_" ? fresh_anonymous() : t.text);
        next();
        return out;
      }
      case Tok::Ident: {
        const std::string name = t.text;
        const std::size_t start = t.pos;
        next();
        if (peek().kind != Tok::LParen) return Term::compound(name, {});
        std::vector<Term> args = arguments();
        if (name == "date" && args.size() == 3 &&
            std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_int(); })) {
          const auto y = args[0].as_int().value;
          const auto m = args[1].as_int().value;
          const auto d = args[2].as_int().value;
          if (!valid_date(m, d)) fail(ParseErrorKind::MalformedTerm, start, "date month/day out of range");
          return Term::date(static_cast<int>(y), static_cast<int>(m), static_cast<int>(d));
        }
        return Term::compound(name, std::move(args));
      }
      case Tok::End:
        fail(in_args ? ParseErrorKind::UnbalancedDelimiter : ParseErrorKind::MalformedTerm, t.pos,
             "unexpected end of input");
      default:
        fail(in_args ? ParseErrorKind::UnquotedConstant : ParseErrorKind::MalformedTerm, t.pos,
             in_args ? "constant must be enclosed in double quotes" : "expected a term near '" + t.text + "'");
    }
  }

  std::vector<Term> arguments() {
    const std::size_t open = peek().pos;
    next();  // (
    if (peek().kind == Tok::RParen) fail(ParseErrorKind::MalformedTerm, open, "empty argument list");
    std::vector<Term> args;
    while (true) {
      const std::size_t arg_start = peek().pos;
      args.push_back(term(true));
      const Token& t = peek();
      if (t.kind == Tok::Comma) {
        next();
        continue;
      }
      if (t.kind == Tok::RParen) {
        next();
        return args;
      }
      if (t.kind == Tok::End) fail(ParseErrorKind::UnbalancedDelimiter, open, "unclosed '('");
      fail(ParseErrorKind::UnquotedConstant, arg_start, "constant must be enclosed in double quotes");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int anon_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Expected<std::vector<Goal>, ParseError> parse_goals(std::string_view text) {
  try {
    if (trim(text).empty()) fail(ParseErrorKind::EmptyInput, 0, "empty query");
    if (auto neg = find_negation(text)) {
      fail(ParseErrorKind::NegationUnsupported, *neg, "negation (\\+) is not supported");
    }
    Parser p(Lexer(text).run());
    return p.top();
  } catch (const ParseFailure& f) {
    return unexpected(f.error);
  }
}

Expected<Query, ParseError> parse_query(std::string_view text, std::string_view target) {
  auto goals = parse_goals(text);
  if (!goals) return unexpected(goals.error());
  Query q{std::move(goals).value(), Variable{std::string(trim(target))}};
  if (!is_valid_variable_name(q.target.name)) {
    return unexpected(ParseError{ParseErrorKind::MalformedTerm, 0,
                                 "target '" + q.target.name + "' is not a variable"});
  }
  if (!query_mentions(q, q.target.name)) {
    return unexpected(ParseError{ParseErrorKind::MalformedTerm, 0,
                                 "target " + q.target.name + " does not occur in the query"});
  }
  return q;
}

Expected<Term, ParseError> parse_literal(std::string_view text) {
  try {
    const auto body = trim(text);
    if (body.empty()) fail(ParseErrorKind::EmptyInput, 0, "empty literal");
    Term t = [&] {
      try {
        return Parser(Lexer(body).run()).literal();
      } catch (ParseFailure& f) {
        // Inside an answer every quoting defect is a malformed literal.
        f.error.kind = ParseErrorKind::MalformedTerm;
        throw;
      }
    }();
    if (!(t.is_string() || t.is_int() || t.is_date())) {
      fail(ParseErrorKind::MalformedTerm, 0, "literal must be a string, integer or date");
    }
    return t;
  } catch (const ParseFailure& f) {
    ParseError e = f.error;
    e.position = std::min(e.position, text.size());
    return unexpected(e);
  }
}

// ---- printing -------------------------------------------------------------

std::string print_goal(const Goal& g) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Atom>) {
          return print_term(Term::compound(n.predicate, n.args));
        } else if constexpr (std::is_same_v<N, Comparison>) {
          return print_term(n.lhs) + " " + to_string(n.op) + " " + print_term(n.rhs);
        } else if constexpr (std::is_same_v<N, IfThenElse>) {
          std::string out = "(" + print_goals(n.cond) + " -> " + print_goals(n.then_branch);
          if (n.else_branch) out += " ; " + print_goals(*n.else_branch);
          return out + ")";
        } else if constexpr (std::is_same_v<N, Aggregate>) {
          std::string inner = print_goals(n.inner);
          if (n.inner.size() > 1) inner = "(" + inner + ")";
          if (n.distinct) inner = "distinct(" + inner + ")";
          return "aggregate_all(count, " + inner + ", " + n.result.name + ")";
        } else {
          return n.var.name;
        }
      },
      g.node);
}

std::string print_goals(const std::vector<Goal>& goals) {
  std::string out;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i) out += ", ";
    out += print_goal(goals[i]);
  }
  return out;
}

std::string print_query(const Query& q) { return print_goals(q.goals); }

}  // namespace picot::prolog
