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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "picot/definitions.hpp"
#include "picot/prolog/parser.hpp"
#include "test_support.hpp"

using namespace picot;
using prolog::Term;

namespace {

Definition def_of(const std::string& line) {
  auto d = parse_definition_line(line);
  EXPECT_TRUE(d.has_value()) << line;
  return d ? *d : Definition{};
}

prolog::Atom atom_of(const std::string& text) {
  auto g = prolog::parse_goals(text);
  EXPECT_TRUE(g.has_value()) << text;
  return g ? (*g)[0].as_atom() : prolog::Atom{};
}

const char* kFather = "father(<literal>, <answer>) -> The father of <literal> is <answer>. ; Who is the father of <literal>?";

}  // namespace

TEST(ParseDefinitions, PlainLine) {
  const Definition d = def_of(kFather);
  EXPECT_EQ(d.predicate, "father");
  EXPECT_EQ(d.arity, 2u);
  EXPECT_EQ(d.statement_template, "The father of <literal> is <answer>.");
  EXPECT_EQ(d.question_template, "Who is the father of <literal>?");
  EXPECT_EQ(d.answer_position(), 1u);
}

TEST(ParseDefinitions, DashStripped) {
  const Definition d =
      def_of("- child(<literal>, <answer>) -> The child of <literal> is <answer>. ; Who is the child of <literal>?");
  EXPECT_EQ(d.predicate, "child");
  EXPECT_EQ(d.arity, 2u);
  EXPECT_EQ(d.statement_template, "The child of <literal> is <answer>.");
}

TEST(ParseDefinitions, EmptyBlock) {
  auto t = parse_definitions("");
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(t->empty());
  EXPECT_TRUE(parse_definitions("\n  \n")->empty());
}

TEST(ParseDefinitions, MissingSeparators) {
  auto no_arrow = parse_definitions("father(<literal>, <answer>) The father of <literal> is <answer>. ; Who?");
  ASSERT_FALSE(no_arrow.has_value());
  EXPECT_EQ(no_arrow.error().kind, prolog::ParseErrorKind::MalformedTerm);
  auto no_semicolon = parse_definitions("father(<literal>, <answer>) -> The father of <literal> is <answer>.");
  ASSERT_FALSE(no_semicolon.has_value());
  EXPECT_EQ(no_semicolon.error().kind, prolog::ParseErrorKind::MalformedTerm);
}

TEST(ParseDefinitions, UnicodeArrowAndFirstWins) {
  auto t = parse_definitions(
      "spouse(<literal>, <answer>) → The spouse of <literal> is <answer>. ; Who is the spouse of <literal>?\n"
      "spouse(<literal>, <answer>) -> Other <literal> <answer>. ; Other <literal>?");
  ASSERT_TRUE(t.has_value());
  ASSERT_EQ(t->size(), 1u);
  EXPECT_EQ(t->find("spouse", 2)->statement_template, "The spouse of <literal> is <answer>.");
  EXPECT_EQ(t->find("spouse", 3), nullptr);
}

TEST(RenderQuestion, SubstitutesBoundLiteral) {
  const Definition d = def_of(kFather);
  engine::Solution env{{"A1", Term::string("Theudebert I")}};
  EXPECT_EQ(render_question(d, atom_of("father(A1, A2)"), env), "Who is the father of Theudebert I?");
}

TEST(RenderQuestion, QuotedStringsForThreePlaceRegion) {
  const Definition d = def_of(
      "region(<literal1>, <literal2>, <answer>) → <literal2> is located in the <answer> region of <literal1>. ; "
      "What region of <literal1> is <literal2> located in?");
  EXPECT_EQ(render_question(d, atom_of(R"(region("Vietnam", "Da Nang, Vietnam", A3))"), {}, true),
            "What region of \"Vietnam\" is \"Da Nang, Vietnam\" located in?");
}

TEST(RenderQuestion, ZeroLiteralTemplateVerbatim) {
  const Definition d = def_of(
      "- founder_of_book_of_mormon(<answer>) -> The person who found the sacred writings that became the Book of "
      "Mormon is <answer>. ; Who found the sacred writings that became the Book of Mormon?");
  EXPECT_EQ(render_question(d, atom_of("founder_of_book_of_mormon(A1)"), {}),
            "Who found the sacred writings that became the Book of Mormon?");
}

TEST(RenderQuestion, DatesAndUnboundErrors) {
  const Definition d = def_of(
      "- dob(<answer>, <literal>) -> The date of birth of <answer> is <literal>. ; Who is the person whose date of "
      "birth is <literal>?");
  EXPECT_EQ(render_question(d, atom_of("dob(A1, date(985, 4, 2))"), {}),
            "Who is the person whose date of birth is 0985-04-02?");
  const Definition w = def_of(
      "writer(<literal1>, <literal2>, <answer>) -> The writer of <literal1> by <literal2> is <answer>. ; Who wrote "
      "<literal1> by <literal2>?");
  try {
    render_question(w, atom_of(R"(writer(A0, A1, "x"))"), {});
    FAIL() << "expected DefinitionError";
  } catch (const DefinitionError& e) {
    EXPECT_EQ(e.kind(), DefinitionErrorKind::Unbound);
  }
}

TEST(RenderQuestion, MissingDefinition) {
  DefinitionTable t;
  try {
    require_definition(t, "father", 2);
    FAIL() << "expected DefinitionError";
  } catch (const DefinitionError& e) {
    EXPECT_EQ(e.kind(), DefinitionErrorKind::Missing);
  }
}

TEST(RenderStatement, Examples) {
  const Definition spouse =
      def_of("spouse(<literal>, <answer>) → The spouse of <literal> is <answer>. ; Who is the spouse of <literal>?");
  EXPECT_EQ(render_statement(spouse, {"spouse", {Term::string("Wisigard"), Term::string("Theudebert I")}}),
            "The spouse of Wisigard is Theudebert I.");
  const Definition werewolf = def_of("werewolf(<literal>) -> <literal> was a werewolf. ; Was <literal> a werewolf?");
  EXPECT_EQ(render_statement(werewolf, {"werewolf", {Term::string("Quirrell")}}), "Quirrell was a werewolf.");
  const Definition contains = def_of(
      "contains(<literal>, <answer>) → <literal> is contained in the country <answer>. ; What country contains "
      "<literal>?");
  EXPECT_EQ(render_statement(contains, {"contains", {Term::string("A Luoi"), Term::string("Vietnam")}}),
            "A Luoi is contained in the country Vietnam.");
}

TEST(RenderEntailment, Prefix) {
  EXPECT_EQ(render_entailment_question("Quirrell was a werewolf."),
            "Is the following statement true or false? Quirrell was a werewolf.");
  EXPECT_THROW(render_entailment_question(""), DefinitionError);
}

TEST(AnswerList, Examples) {
  EXPECT_EQ(*parse_answer_list("\"Theuderic I\""), std::vector<Term>{Term::string("Theuderic I")});
  EXPECT_TRUE(parse_answer_list("")->empty());
  EXPECT_TRUE(parse_answer_list("  \n ")->empty());
  EXPECT_EQ(*parse_answer_list(R"("a", date(985, 4, 2), 17)"),
            (std::vector<Term>{Term::string("a"), Term::date(985, 4, 2), Term::integer(17)}));
  EXPECT_EQ(*parse_answer_list("Vietnam"), std::vector<Term>{Term::string("Vietnam")});
  EXPECT_EQ(*parse_answer_list(R"("Da Nang, Vietnam")"), std::vector<Term>{Term::string("Da Nang, Vietnam")});
}

TEST(AnswerList, MalformedInputs) {
  EXPECT_FALSE(parse_answer_list(R"("Gweilo" or "gwailou")").has_value());
  EXPECT_FALSE(parse_answer_list(R"("unterminated)").has_value());
  EXPECT_FALSE(parse_answer_list("date(1990, 1").has_value());
}

TEST(AnswerList, TotalOverBytes) {
  std::mt19937 rng(7);
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 24);
    for (int j = 0; j < len; ++j) s.push_back(static_cast<char>(rng() % 256));
    auto r = parse_answer_list(s);
    const bool blank = s.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
    if (r && r->empty()) {
      EXPECT_TRUE(blank);
    }
    if (blank) {
      EXPECT_TRUE(r && r->empty());
    }
  }
}

TEST(Verdict, Grammar) {
  EXPECT_TRUE(*parse_verdict("true"));
  EXPECT_TRUE(*parse_verdict("\"TRUE\""));
  EXPECT_FALSE(*parse_verdict("false"));
  EXPECT_FALSE(*parse_verdict("\"false\""));
  EXPECT_FALSE(*parse_verdict(""));
  EXPECT_FALSE(parse_verdict("maybe").has_value());
}

TEST(GeneratedDefinitions, RenderForEveryFixture) {
  const auto rows = nlohmann::json::parse(picot::testing::read_file(picot::testing::fixture("generated_queries.json")));
  std::size_t total = 0;
  for (const auto& row : rows) {
    auto table = parse_definitions(row.at("definitions").get<std::string>());
    ASSERT_TRUE(table.has_value()) << row.at("definitions");
    for (const Definition* d : table->entries()) {
      ++total;
      prolog::Atom ground{d->predicate, {}};
      prolog::Atom open{d->predicate, {}};
      const auto answer = d->answer_position();
      for (std::size_t i = 0; i < d->arity; ++i) {
        ground.args.push_back(Term::string("v" + std::to_string(i)));
        open.args.push_back(answer && *answer == i ? Term::var("X") : Term::string("v" + std::to_string(i)));
      }
      const std::string statement = render_statement(*d, {d->predicate, ground.args});
      for (const auto& a : ground.args) {
        EXPECT_NE(statement.find(a.as_string().text), std::string::npos) << d->source;
      }
      EXPECT_FALSE(render_question(*d, open, {}).empty());
    }
  }
  EXPECT_GE(total, 40u);
}
