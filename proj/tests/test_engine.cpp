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

#include "picot/engine/brute_force.hpp"
#include "picot/engine/solve.hpp"
#include "picot/prolog/parser.hpp"
#include "test_support.hpp"

using namespace picot::engine;
using picot::prolog::Term;

namespace {

KnowledgeBase kb_of(const std::string& text) {
  auto kb = KnowledgeBase::parse(text);
  EXPECT_TRUE(kb.has_value()) << text;
  return kb ? *kb : KnowledgeBase{};
}

Query query_of(const std::string& text, const std::string& target) {
  auto q = picot::prolog::parse_query(text, target);
  EXPECT_TRUE(q.has_value()) << text;
  return q ? *q : Query{};
}

SolveResult run(const std::string& query, const std::string& target, const KnowledgeBase& kb) {
  return solve(query_of(query, target).goals, kb);
}

SolutionSet set_of(std::initializer_list<Solution> rows) {
  SolutionSet s;
  for (const auto& r : rows) s.add(r);
  return s;
}

const char* kWerewolfQuery = R"(dada_teacher(X, "Hogwarts"), werewolf(X), wife(X, Y))";

}  // namespace

TEST(Unify, BindsVariableToGround) {
  auto env = unify(Term::var("X"), Term::string("Lupin"), {});
  ASSERT_TRUE(env.has_value());
  EXPECT_EQ(env->at("X"), Term::string("Lupin"));
}

TEST(Unify, DistinctStringsFail) {
  EXPECT_FALSE(unify(Term::string("RAF"), Term::string("No. 11 Group RAF"), {}).has_value());
}

TEST(Unify, IdenticalDatesLeaveEnvUnchanged) {
  auto env = unify(Term::date(1997, 6, 26), Term::date(1997, 6, 26), {});
  ASSERT_TRUE(env.has_value());
  EXPECT_TRUE(env->empty());
}

TEST(Solve, WerewolfExampleWithCorrectedKb) {
  const auto kb = kb_of(R"kb(dada_teacher("Lupin", "Hogwarts").
dada_teacher("Lockhart", "Hogwarts").
werewolf("Lupin").
wife("Lupin", "Tonks").)kb");
  const auto r = run(kWerewolfQuery, "Y", kb);
  EXPECT_EQ(r.solutions, set_of({{{"X", Term::string("Lupin")}, {"Y", Term::string("Tonks")}}}));
  EXPECT_TRUE(r.defects.empty());
}

TEST(Solve, WerewolfExampleWithoutLupinTeacherFactIsEmpty) {
  const auto kb = kb_of(R"kb(dada_teacher("Lockhart", "Hogwarts").
werewolf("Lupin").
wife("Lupin", "Tonks").)kb");
  EXPECT_TRUE(run(kWerewolfQuery, "Y", kb).solutions.empty());
}

TEST(Solve, EmptyKbEmptyResult) {
  EXPECT_TRUE(run(R"(father("Lupin", A1))", "A1", KnowledgeBase{}).solutions.empty());
}

TEST(Solve, AggregateCountsDistinctChildren) {
  const auto kb = kb_of("child(\"S\", \"a\").\nchild(\"S\", \"b\").");
  const auto r = run(R"(aggregate_all(count, distinct(child("S", A1)), A2))", "A2", kb);
  EXPECT_EQ(r.solutions, set_of({{{"A2", Term::integer(2)}}}));
}

TEST(Solve, AggregateCountsZeroWhenInnerFails) {
  const auto r = run(R"(aggregate_all(count, child("Nobody", A1), N))", "N", KnowledgeBase{});
  EXPECT_EQ(r.solutions, set_of({{{"N", Term::integer(0)}}}));
}

TEST(Solve, AggregateRawVersusDistinct) {
  const auto kb = kb_of(R"kb(likes("a", "x").
likes("b", "x").
likes("b", "y").)kb");
  // Raw count sees one row per solution of the conjunction; distinct keys on Y only when only Y is visible.
  EXPECT_EQ(run(R"(aggregate_all(count, likes(_, Y), N))", "N", kb).solutions,
            set_of({{{"N", Term::integer(3)}}}));
  EXPECT_EQ(run(R"(aggregate_all(count, distinct(likes(P, Y)), N))", "N", kb).solutions,
            set_of({{{"N", Term::integer(3)}}}));
}

TEST(Solve, FinalEqualityMismatchIsEmptyWithoutDefects) {
  const auto kb = kb_of(R"kb(part_of("Hawker Hurricane", "Royal Air Force (RAF)").
part_of("Hawker Hurricane", "Royal Yugoslav Air Force (VVKJ)").
part_of("Hawker Hurricane", "Royal Canadian Air Force").
part_of("No. 1455 Flight", "No. 11 Group RAF").)kb");
  const auto r = run(R"(part_of("Hawker Hurricane", A1), part_of("No. 1455 Flight", A2), (A1 == A2).)", "A1", kb);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_TRUE(r.defects.empty());
}

TEST(Solve, IfThenWithoutElseFailsWhenConditionFails) {
  const auto kb = kb_of(R"kb(performer("Chasing Pirates", "Norah Jones").
performer("turn me on", "Sean Smith").
writer("turn me on", "Greg Lake").
writer("turn me on", "Logan Lynn").
writer("turn me on", "Joni Mitchell").)kb");
  const auto r = run(
      R"(performer("Chasing Pirates", A1), performer("turn me on", A2), A1 = A2 -> writer("turn me on", A3).)", "A3",
      kb);
  EXPECT_TRUE(r.solutions.empty());
}

TEST(Solve, IfThenElseTakesThenBranch) {
  const auto r = run(R"((B1 == "Yes" -> A3 = "Yes" ; A3 = "No"))", "A3",
                     kb_of(""));
  // B1 is unbound here, so the comparison is a defect and the else branch runs.
  EXPECT_EQ(r.solutions.size(), 1u);
  const auto ground = run(R"(("Yes" == "Yes" -> A3 = "Yes" ; A3 = "No"))", "A3", kb_of(""));
  EXPECT_EQ(ground.solutions, set_of({{{"A3", Term::string("Yes")}}}));
  EXPECT_TRUE(ground.defects.empty());
}

TEST(Solve, IfThenElseCommitsToFirstConditionSolution) {
  const auto kb = kb_of("p(\"a\").\np(\"b\").");
  const auto r = run(R"((p(X) -> Y = X ; Y = "none"))", "Y", kb);
  EXPECT_EQ(r.solutions, set_of({{{"X", Term::string("a")}, {"Y", Term::string("a")}}}));
}

TEST(Solve, StandardOrderComparisonChain) {
  const auto kb = kb_of(R"kb(bestselling_novels("John Updike", "more than 20").
bestselling_novels("Tom Clancy", 17).)kb");
  const auto r = run(R"(bestselling_novels("John Updike", A1),
bestselling_novels("Tom Clancy", A2),
(A1 @> 15 → B1 = "Yes" ; B1 = "No"),
(A2 @> 15 → B2 = "Yes" ; B2 = "No"),
(B1 == "Yes" → (B2 == "Yes" → A3 = "Yes" ; A3 = "No") ; A3 = "No"))",
                     "A3", kb);
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_EQ(r.solutions.rows()[0].at("A3"), Term::string("Yes"));
}

TEST(Solve, DatesCompareChronologically) {
  const auto kb = kb_of(R"kb(dob("x", date(1950, 3, 1)).
dob("y", date(1949, 12, 31)).)kb");
  const auto r = run(R"(dob("x", A), dob("y", B), A @> B)", "A", kb);
  EXPECT_EQ(r.solutions.size(), 1u);
}

TEST(Solve, BareVariableIsDefect) {
  const auto kb = kb_of(R"kb(dob("x", date(1950, 3, 1)).
dob("y", date(1949, 12, 31)).)kb");
  const auto r = run(R"(dob("x", A3), dob("y", A4), A3 @> A4 → A5)", "A5", kb);
  EXPECT_TRUE(r.solutions.empty());
  ASSERT_EQ(r.defects.size(), 1u);
  EXPECT_EQ(r.defects[0].kind, DefectKind::UnboundGoalVariable);
  EXPECT_EQ(r.defects[0].goal_index, 2u);
}

TEST(Solve, ComparisonOnUnboundIsDefect) {
  const auto r = run(R"(p(X), Y @> 3)", "X", kb_of("p(1)."));
  EXPECT_TRUE(r.solutions.empty());
  ASSERT_EQ(r.defects.size(), 1u);
  EXPECT_EQ(r.defects[0].kind, DefectKind::ComparisonOnUnbound);
  EXPECT_EQ(r.defects[0].goal_index, 1u);
}

TEST(SolvePrefix, EmptyPrefixAndFullPrefix) {
  const auto kb = kb_of("father(\"a\", \"b\").\nfather(\"b\", \"c\").");
  const Query q = query_of(R"(father("a", A1), father(A1, A2))", "A2");
  EXPECT_EQ(solve_prefix(q, 0, kb).solutions, set_of({Solution{}}));
  EXPECT_EQ(solve_prefix(q, 1, kb).solutions, set_of({{{"A1", Term::string("b")}}}));
  EXPECT_EQ(solve_prefix(q, 2, kb).solutions, solve(q.goals, kb).solutions);
}

TEST(KnowledgeBaseTest, DeduplicatesAndRejectsNonGround) {
  KnowledgeBase kb;
  EXPECT_TRUE(kb.add({"wife", {Term::string("Lupin"), Term::string("Tonks")}}));
  EXPECT_FALSE(kb.add({"wife", {Term::string("Lupin"), Term::string("Tonks")}}));
  EXPECT_TRUE(kb.add({"wife", {Term::string("lupin"), Term::string("Tonks")}}));
  EXPECT_EQ(kb.size(), 2u);
  EXPECT_THROW(kb.add({"wife", {Term::var("X"), Term::string("Tonks")}}), std::invalid_argument);
  EXPECT_THROW(kb.add({"Wife", {Term::string("a")}}), std::invalid_argument);
}

TEST(KnowledgeBaseTest, SerializeRoundTrip) {
  const std::string text = "part_of(\"Hawker Hurricane\", \"Royal Air Force (RAF)\").\ndob(\"x\", date(985, 4, 2)).\nn(\"a\", -3).\n";
  const auto kb = kb_of(text);
  EXPECT_EQ(kb.serialize(), text);
}

TEST(BruteForce, RejectsOutsideFragment) {
  const Query q = query_of(R"(aggregate_all(count, p(X), N))", "N");
  EXPECT_FALSE(brute_force_solve(q.goals, KnowledgeBase{}).has_value());
  const Query ite = query_of(R"((p(X) -> Y = 1 ; Y = 2))", "Y");
  EXPECT_FALSE(brute_force_solve(ite.goals, KnowledgeBase{}).has_value());
}

TEST(BruteForce, TrivialCases) {
  const Query q = query_of(R"(p(X))", "X");
  EXPECT_TRUE(brute_force_solve(q.goals, KnowledgeBase{})->empty());
  const auto kb = kb_of("p(\"a\").");
  auto goals = picot::prolog::parse_goals(R"(p("a"))");
  ASSERT_TRUE(goals.has_value());
  EXPECT_EQ(*brute_force_solve(*goals, kb), set_of({Solution{}}));
}

TEST(OracleEquivalence, RandomConjunctiveInstances) {
  std::mt19937_64 rng(20260101);
  int checked = 0;
  for (int attempt = 0; checked < 400 && attempt < 10000; ++attempt) {
    const auto inst = picot::testing::random_conjunctive(rng);
    const auto oracle = brute_force_solve(inst.goals, inst.kb);
    if (!oracle) continue;
    const auto fast = solve(inst.goals, inst.kb);
    ASSERT_EQ(fast.solutions, *oracle) << picot::prolog::print_goals(inst.goals) << "\n" << inst.kb.serialize();
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(Properties, KbMonotoneAndPrefixAntiMonotone) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto inst = picot::testing::random_conjunctive(rng);
    // Keep atoms only; comparisons need not be anti-monotone in general.
    std::vector<Goal> atoms;
    for (const auto& g : inst.goals) {
      if (g.is_atom()) atoms.push_back(g);
    }
    const auto base = solve(atoms, inst.kb).solutions;
    KnowledgeBase bigger = inst.kb;
    const auto extra = picot::testing::random_conjunctive(rng);
    for (const auto& f : extra.kb.facts()) bigger.add(f);
    const auto grown = solve(atoms, bigger).solutions;
    for (const auto& s : base) EXPECT_TRUE(grown.contains(s));

    Query q{atoms, {}};
    for (std::size_t t = 1; t <= atoms.size(); ++t) {
      const auto prev = solve_prefix(q, t - 1, inst.kb).solutions;
      const auto cur = solve_prefix(q, t, inst.kb).solutions;
      for (const auto& s : cur) {
        Solution projected;
        for (const auto& [k, v] : s) {
          if (prev.empty() || prev.rows()[0].count(k)) projected[k] = v;
        }
        if (t > 1 && !prev.empty()) {
          EXPECT_TRUE(prev.contains(projected));
        }
      }
    }
    EXPECT_EQ(solve(atoms, inst.kb).solutions.canonical(), base.canonical());
  }
}

TEST(Properties, StandardOrderTrichotomy) {
  std::mt19937_64 rng(5);
  const std::vector<Term> pool = {Term::integer(-1), Term::integer(7),  Term::string(""),
                                  Term::string("b"), Term::string("a"), Term::date(2000, 1, 2),
                                  Term::date(1999, 12, 31), Term::compound("f", {Term::integer(1)})};
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      const int ab = picot::prolog::compare_standard_order(a, b);
      const int ba = picot::prolog::compare_standard_order(b, a);
      const int holds = (ab > 0) + (ba > 0) + (ab == 0);
      EXPECT_EQ(holds, 1);
      EXPECT_EQ(ab == 0, a == b);
    }
  }
}
