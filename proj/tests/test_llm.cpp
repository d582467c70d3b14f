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

#include <httplib.h>

#include <atomic>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "picot/llm/http_backend.hpp"
#include "picot/llm/prompts.hpp"
#include "picot/llm/scripted_backend.hpp"
#include "picot/llm/sha256.hpp"
#include "picot/llm/usage.hpp"
#include "test_support.hpp"

using namespace picot::llm;
using json = nlohmann::json;
namespace pt = picot::testing;

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Usage, LedgerSums) {
  UsageLedger ledger;
  ledger.record("a", Role::QueryGen, {10, 5, 0});
  ledger.record("b", Role::Final, {20, 7, 3});
  EXPECT_EQ(ledger.totals(), (Usage{30, 12, 3}));
  EXPECT_EQ(ledger.calls(), 2u);
  const auto snap = ledger.snapshot();
  ASSERT_EQ(snap.records.size(), 2u);
  EXPECT_EQ(snap.records[1].tag, "b");
  EXPECT_EQ(snap.totals.total(), 42);
}

TEST(Usage, ConcurrentRecording) {
  UsageLedger ledger;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 500; ++i) ledger.record("x", Role::Slice, {1, 2, 3});
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(ledger.totals(), (Usage{2000, 4000, 6000}));
  EXPECT_EQ(ledger.calls(), 2000u);
}

TEST(Usage, RoleNames) {
  for (Role r : {Role::QueryGen, Role::Slice, Role::Final}) {
    Role back{};
    ASSERT_TRUE(parse_role(to_string(r), back));
    EXPECT_EQ(back, r);
  }
  Role out{};
  EXPECT_FALSE(parse_role("oracle", out));
}

TEST(Scripted, QuestionLineAndKeys) {
  const std::string prompt = "Q\nQuestion: first one\nstuff\nQuestion:   Who   is\tX?  \nAnswer:";
  EXPECT_EQ(question_line(prompt), "Question: Who is X?");
  EXPECT_EQ(script_key(Role::Slice, prompt), sha256_hex("slice\nQuestion: Who is X?"));
  EXPECT_EQ(script_key(Role::Slice, prompt), script_key_for_question(Role::Slice, "Who is X?"));
  EXPECT_NE(script_key(Role::Final, prompt), script_key(Role::Slice, prompt));
  EXPECT_EQ(script_key(Role::Slice, prompt, true), sha256_hex("slice\n" + prompt));
}

TEST(Scripted, HitAndMiss) {
  auto backend = pt::make_script({{Role::Slice, "Who is X?", "<answer>\"Y\"</answer>", {10, 5, 0}}});
  const auto r = backend.complete({"Evidence...\nQuestion: Who  is X?\nAnswer:", Role::Slice});
  EXPECT_EQ(r.text, "<answer>\"Y\"</answer>");
  EXPECT_EQ(r.usage, (Usage{10, 5, 0}));
  EXPECT_THROW(backend.complete({"Question: Who is Z?\nAnswer:", Role::Slice}), ScriptMiss);
  EXPECT_THROW(backend.complete({"Question: Who is X?\nAnswer:", Role::Final}), ScriptMiss);
}

TEST(Scripted, LoadsJsonLines) {
  std::istringstream in(
      "{\"role\":\"final\",\"question\":\"Q1\",\"response\":\"A1\",\"usage\":{\"prompt_tokens\":3,"
      "\"completion_tokens\":2,\"cached_tokens\":1}}\n\n"
      "{\"match_key\":\"" + script_key_for_question(Role::Slice, "Q2") + "\",\"response\":\"A2\"}\n");
  auto backend = ScriptedBackend::load(in);
  EXPECT_EQ(backend.size(), 2u);
  EXPECT_EQ(backend.complete({"Question: Q1", Role::Final}).usage, (Usage{3, 2, 1}));
  EXPECT_EQ(backend.complete({"Question: Q2", Role::Slice}).text, "A2");
  std::istringstream bad("{\"role\":\"nope\",\"question\":\"q\",\"response\":\"r\"}\n");
  EXPECT_THROW(ScriptedBackend::load(bad), ScriptError);
  std::istringstream garbage("not json\n");
  EXPECT_THROW(ScriptedBackend::load(garbage), ScriptError);
}

TEST(Prompts, SubstituteDoesNotRescan) {
  EXPECT_EQ(substitute_slots("{a}-{b}-{c}", {{"a", "{b}"}, {"b", "B"}}), "{b}-B-{c}");
  EXPECT_EQ(substitute_slots("{a", {{"a", "x"}}), "{a");
}

TEST(Prompts, QueryGeneration) {
  const std::string p = build_query_generation_prompt("Who is the paternal grandfather of X?", "EXAMPLES");
  EXPECT_EQ(p.rfind("You will be provided a question. Your goal is to devise a \n", 0), 0u);
  EXPECT_NE(p.find("(START OF EXAMPLES)\nEXAMPLES\n(END OF EXAMPLES)"), std::string::npos);
  EXPECT_TRUE(p.ends_with("\n\nQuestion: Who is the paternal grandfather of X?\nAnswer: "));
  EXPECT_EQ(question_line(p), "Question: Who is the paternal grandfather of X?");
}

TEST(Prompts, Slice) {
  const auto chunks = pt::toy_chunks();
  EXPECT_EQ(render_evidence({chunks[1], chunks[2]}),
            "River\na river flows to the sea\n\nOrchard\nan orchard of pear trees next to a river");
  const std::string p = build_slice_prompt({chunks[1]}, "Where does the river flow?", "EX");
  EXPECT_EQ(p.rfind("You are given the following evidence:\n(BEGIN EVIDENCE)\nRiver\na river flows to the sea\n"
                    "(END EVIDENCE)\n",
                    0),
            0u);
  EXPECT_NE(p.find("your response must end with: <answer></answer>."), std::string::npos);
  EXPECT_TRUE(p.ends_with("\n\nQuestion: Where does the river flow?\nAnswer:"));
}

TEST(AnswerSpan, LastPairWins) {
  EXPECT_EQ(*extract_answer_span("reasoning <answer>\"A\"</answer> more <answer>\"B\"</answer>"), "\"B\"");
  EXPECT_EQ(*extract_answer_span("<answer></answer>"), "");
  EXPECT_EQ(extract_answer_span("no tags").error().kind, ResponseErrorKind::MissingAnswerTags);
  EXPECT_EQ(extract_answer_span("</answer> only").error().kind, ResponseErrorKind::MissingAnswerTags);
}

namespace {

const char* kGoodResponse = R"(To answer, find the father first.

**Query:**
```prolog
father("Theudebert I", A1),
father(A1, A2).
```
**Target:** `A2`
**Definition:**
father(<literal>, <answer>) -> The father of <literal> is <answer>. ; Who is the father of <literal>?
)";

}  // namespace

TEST(QueryGenResponse, ParsesSections) {
  auto r = parse_query_generation_response(kGoodResponse);
  ASSERT_TRUE(r.has_value()) << r.error().message;
  EXPECT_EQ(r->sections.target, "A2");
  EXPECT_EQ(r->query.target.name, "A2");
  EXPECT_EQ(r->query.goals.size(), 2u);
  EXPECT_EQ(r->definitions.size(), 1u);
  EXPECT_EQ(r->sections.query, "father(\"Theudebert I\", A1),\nfather(A1, A2).");
}

TEST(QueryGenResponse, ErrorKinds) {
  auto missing = parse_query_generation_response("**Query:** father(\"x\", A).\n**Definition:**\n");
  ASSERT_FALSE(missing.has_value());
  EXPECT_EQ(missing.error().kind, ResponseErrorKind::MalformedResponse);

  auto neg = parse_query_generation_response(
      "**Query:** p(\"x\", A), \\+ q(A).\n**Target:** A\n**Definition:**\n"
      "p(<literal>, <answer>) -> s ; q");
  ASSERT_FALSE(neg.has_value());
  EXPECT_EQ(neg.error().kind, ResponseErrorKind::QueryParse);
  ASSERT_TRUE(neg.error().parse.has_value());
  EXPECT_EQ(neg.error().parse->kind, picot::prolog::ParseErrorKind::NegationUnsupported);

  auto unquoted = parse_query_generation_response(
      "**Query:** p(Theudebert I, A).\n**Target:** A\n**Definition:**\np(<literal>, <answer>) -> s ; q");
  ASSERT_FALSE(unquoted.has_value());
  EXPECT_EQ(unquoted.error().parse->kind, picot::prolog::ParseErrorKind::UnquotedConstant);

  auto bad_def = parse_query_generation_response(
      "**Query:** p(\"x\", A).\n**Target:** A\n**Definition:**\np(<literal>, <answer>) statement only");
  ASSERT_FALSE(bad_def.has_value());
  EXPECT_EQ(bad_def.error().kind, ResponseErrorKind::DefinitionParse);

  auto bad_target = parse_query_generation_response(
      "**Query:** p(\"x\", A).\n**Target:** B\n**Definition:**\n");
  ASSERT_FALSE(bad_target.has_value());
  EXPECT_EQ(bad_target.error().kind, ResponseErrorKind::QueryParse);
}

namespace {

// A local chat-completions endpoint that fails the first `failures` calls.
class FakeServer {
 public:
  explicit FakeServer(int failures, int fail_status = 503) : failures_(failures) {
    server_.Post("/v1/chat/completions", [this, fail_status](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (failures_ > 0) {
        --failures_;
        res.status = fail_status;
        res.set_content("busy", "text/plain");
        return;
      }
      json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "<answer>\"ok\"</answer>"}}}}}},
                   {"usage",
                    {{"prompt_tokens", 11},
                     {"completion_tokens", 4},
                     {"prompt_tokens_details", {{"cached_tokens", 2}}}}}};
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int hits() const { return hits_; }
  std::string last_body() const { return last_body_; }
  std::string last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> failures_;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::string last_auth_;
};

HttpConfig config_for(const FakeServer& s, int attempts) {
  HttpConfig cfg;
  cfg.base_url = s.url();
  cfg.model = "test-model";
  cfg.api_key = "sekret";
  cfg.timeout_s = 5;
  cfg.attempts = attempts;
  cfg.backoff_ms = 1;
  return cfg;
}

}  // namespace

TEST(Http, RequestBody) {
  HttpBackend backend(HttpConfig{"http://localhost:1/v1", "m", "", 1, 1, 1});
  const auto greedy = json::parse(backend.request_body({"hello", Role::Slice, 64}));
  EXPECT_EQ(greedy["model"], "m");
  EXPECT_EQ(greedy["messages"][0]["role"], "user");
  EXPECT_EQ(greedy["messages"][0]["content"], "hello");
  EXPECT_EQ(greedy["max_tokens"], 64);
  EXPECT_EQ(greedy["temperature"], 0.0);
  EXPECT_FALSE(greedy.contains("top_p"));
  const auto sample =
      json::parse(backend.request_body({"hi", Role::Final, 10, 0.7, DecodeMode::Sample, 0.9}));
  EXPECT_EQ(sample["temperature"], 0.7);
  EXPECT_EQ(sample["top_p"], 0.9);
  EXPECT_THROW(HttpBackend(HttpConfig{"localhost:8000", "", "", 1, 1, 1}), std::invalid_argument);
}

TEST(Http, ParsesResponseBody) {
  const auto r = HttpBackend::parse_response_body(
      R"({"choices":[{"message":{"content":"x"}}],"usage":{"prompt_tokens":5,"completion_tokens":1}})");
  EXPECT_EQ(r.text, "x");
  EXPECT_EQ(r.usage, (Usage{5, 1, 0}));
  EXPECT_THROW(HttpBackend::parse_response_body("{}"), TransportError);
  EXPECT_THROW(HttpBackend::parse_response_body("<html>"), TransportError);
}

TEST(Http, RoundTripWithBearerToken) {
  FakeServer server(0);
  HttpBackend backend(config_for(server, 1));
  const auto r = backend.complete({"Question: q\nAnswer:", Role::Slice, 128});
  EXPECT_EQ(r.text, "<answer>\"ok\"</answer>");
  EXPECT_EQ(r.usage, (Usage{11, 4, 2}));
  EXPECT_EQ(server.last_auth(), "Bearer sekret");
  const auto body = json::parse(server.last_body());
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["messages"][0]["content"], "Question: q\nAnswer:");
}

TEST(Http, RetriesThenSucceeds) {
  FakeServer server(2);
  HttpBackend backend(config_for(server, 3));
  EXPECT_EQ(backend.complete({"p"}).text, "<answer>\"ok\"</answer>");
  EXPECT_EQ(server.hits(), 3);
}

TEST(Http, NonSuccessStatusIsTransportError) {
  FakeServer server(100, 500);
  HttpBackend backend(config_for(server, 2));
  try {
    backend.complete({"p"});
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("HTTP 500"), std::string::npos);
  }
  EXPECT_EQ(server.hits(), 2);
}

TEST(Http, UnreachableHostIsTransportError) {
  HttpBackend backend({"http://127.0.0.1:1/v1", "m", "", 1, 1, 1});
  EXPECT_THROW(backend.complete({"p"}), TransportError);
}
