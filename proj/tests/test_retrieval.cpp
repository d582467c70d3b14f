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

#include <cmath>
#include <filesystem>
#include <sstream>

#include "picot/retrieval/bm25.hpp"
#include "picot/retrieval/chunking.hpp"
#include "picot/retrieval/evidence.hpp"
#include "test_support.hpp"

using namespace picot::retrieval;
namespace pt = picot::testing;

namespace {

std::string words(std::size_t n, const std::string& stem = "w") {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += (i % 7 == 0) ? "\n  " : " ";
    out += stem + std::to_string(i);
  }
  return out;
}

}  // namespace

TEST(Chunking, SplitsIntoHundredTokenRuns) {
  const auto chunks = chunk_document({"d", "Doc", words(250)});
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[0].token_count, 100u);
  EXPECT_EQ(chunks[1].token_count, 100u);
  EXPECT_EQ(chunks[2].token_count, 50u);
  EXPECT_EQ(chunks[0].chunk_id, "d#0");
  EXPECT_EQ(chunks[2].chunk_id, "d#2");
  EXPECT_EQ(chunks[1].text.substr(0, 3), "w10");
  EXPECT_EQ(chunks[2].text.substr(chunks[2].text.size() - 4), "w249");
  for (const auto& c : chunks) EXPECT_EQ(c.title, "Doc");
}

TEST(Chunking, EmptyAndShortDocuments) {
  EXPECT_TRUE(chunk_document({"e", "Empty", ""}).empty());
  EXPECT_TRUE(chunk_document({"e", "Blank", " \n\t "}).empty());
  const std::string text = words(100);
  const auto one = chunk_document({"s", "Short", text});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].text, text);
  EXPECT_EQ(chunk_document({"s", "S", words(101)}).size(), 2u);
}

TEST(Chunking, TokenCountsSumToDocument) {
  for (std::size_t n : {1u, 99u, 100u, 101u, 300u, 1234u}) {
    const auto chunks = chunk_document({"d", "D", words(n)}, 100);
    std::size_t total = 0;
    for (const auto& c : chunks) {
      EXPECT_LE(c.token_count, 100u);
      total += c.token_count;
    }
    EXPECT_EQ(total, n);
    EXPECT_EQ(chunks.size(), (n + 99) / 100);
  }
}

TEST(Ingest, ReportsMalformedLines) {
  std::istringstream in(
      "{\"id\":\"a\",\"title\":\"A\",\"text\":\"alpha beta\"}\n"
      "not json\n"
      "\n"
      "{\"id\":\"b\",\"title\":\"B\"}\n"
      "{\"id\":\"c\",\"title\":\"C\",\"text\":\"gamma\"}\n");
  const Corpus c = ingest_corpus(in);
  EXPECT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.chunks.size(), 2u);
  ASSERT_EQ(c.issues.size(), 2u);
  EXPECT_EQ(c.issues[0].line, 2u);
  EXPECT_EQ(c.issues[1].line, 4u);
}

TEST(Ingest, NoValidDocumentThrows) {
  std::istringstream in("garbage\n");
  EXPECT_THROW(ingest_corpus(in), IngestError);
  EXPECT_THROW(ingest_corpus(std::filesystem::path("/nonexistent/corpus.jsonl")), IngestError);
}

TEST(Ingest, FixtureCorpus) {
  const Corpus c = ingest_corpus(pt::fixture("corpus.jsonl"));
  EXPECT_EQ(c.documents.size(), 12u);
  EXPECT_TRUE(c.issues.empty());
  EXPECT_GE(c.chunks.size(), 15u);
}

TEST(Tokenize, Rules) {
  EXPECT_EQ(tokenize("Theudebert I's son, born 0985-04-02!"),
            (std::vector<std::string>{"theudebert", "i", "s", "son", "born", "0985", "04", "02"}));
  EXPECT_EQ(tokenize("A Lưới"), (std::vector<std::string>{"a", "lưới"}));
  EXPECT_TRUE(tokenize(" ,.;").empty());
}

// Reference values computed independently for title + text of the toy
// chunks with k1 = 1.2 and b = 0.75.
TEST(Bm25, MatchesHandComputedScores) {
  const auto index = Bm25Index::build(pt::toy_chunks());
  EXPECT_EQ(index.doc_count(), 3u);
  EXPECT_NEAR(index.avg_doc_length(), 31.0 / 3.0, 1e-12);
  EXPECT_NEAR(index.idf("river"), std::log((3 - 2 + 0.5) / (2 + 0.5) + 1), 1e-12);
  EXPECT_EQ(index.idf("zebra"), 0.0);

  const auto r = index.search("apple river", 10);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].ordinal, 0u);
  EXPECT_EQ(r[1].ordinal, 1u);
  EXPECT_EQ(r[2].ordinal, 2u);
  EXPECT_NEAR(r[0].score, 1.4323887592162685, 1e-9);
  EXPECT_NEAR(r[1].score, 0.710737195444771, 1e-9);
  EXPECT_NEAR(r[2].score, 0.4762889675268822, 1e-9);

  const auto pear = index.search("orchard pear", 10);
  ASSERT_EQ(pear.size(), 1u);
  EXPECT_EQ(pear[0].ordinal, 2u);
  EXPECT_NEAR(pear[0].score, 2.3549337356762736, 1e-9);
}

TEST(Bm25, DuplicateQueryTermsCountOnce) {
  const auto index = Bm25Index::build(pt::toy_chunks());
  const auto once = index.search("river", 3);
  const auto twice = index.search("river river RIVER", 3);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_DOUBLE_EQ(once[i].score, twice[i].score);
}

TEST(Bm25, EdgeCases) {
  const auto index = Bm25Index::build(pt::toy_chunks());
  EXPECT_TRUE(index.search("zebra", 5).empty());
  EXPECT_TRUE(index.search("", 5).empty());
  EXPECT_TRUE(index.search("river", 0).empty());
  EXPECT_EQ(index.search("river", 100).size(), 2u);
  EXPECT_EQ(index.search("river", 1).size(), 1u);
  EXPECT_THROW(Bm25Index::build({}), IndexError);
}

TEST(Bm25, TiesBreakByOrdinal) {
  std::vector<Chunk> chunks;
  for (int i = 0; i < 5; ++i) {
    chunks.push_back({"d" + std::to_string(i) + "#0", "d" + std::to_string(i), "T", "same words here", 3});
  }
  const auto r = Bm25Index::build(chunks).search("words", 5);
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i].ordinal, i);
}

TEST(Bm25, SerializationIsStableAndRoundTrips) {
  const Corpus c = ingest_corpus(pt::fixture("corpus.jsonl"));
  const auto a = Bm25Index::build(c.chunks);
  const auto b = Bm25Index::build(c.chunks);
  const std::string bytes = a.serialize();
  EXPECT_EQ(bytes, b.serialize());
  const auto back = Bm25Index::deserialize(bytes);
  EXPECT_EQ(back.serialize(), bytes);
  EXPECT_EQ(back.chunks(), a.chunks());
  EXPECT_EQ(back.postings(), a.postings());

  const auto path = std::filesystem::temp_directory_path() / "picot_test_index.bin";
  a.save(path);
  const auto loaded = Bm25Index::load(path);
  std::filesystem::remove(path);
  const auto q1 = a.search("Who was the father of Theudebert I?", 5);
  const auto q2 = loaded.search("Who was the father of Theudebert I?", 5);
  ASSERT_EQ(q1.size(), q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) {
    EXPECT_EQ(q1[i].ordinal, q2[i].ordinal);
    EXPECT_EQ(q1[i].score, q2[i].score);
  }
}

TEST(Bm25, RejectsCorruptBytes) {
  const std::string bytes = Bm25Index::build(pt::toy_chunks()).serialize();
  EXPECT_THROW(Bm25Index::deserialize(""), IndexError);
  EXPECT_THROW(Bm25Index::deserialize("XXXX" + bytes.substr(4)), IndexError);
  EXPECT_THROW(Bm25Index::deserialize(bytes.substr(0, bytes.size() / 2)), IndexError);
  EXPECT_THROW(Bm25Index::load("/nonexistent/picot.idx"), IndexError);
}

TEST(Bm25, FixtureQueryFindsNamedEntity) {
  const Corpus c = ingest_corpus(pt::fixture("corpus.jsonl"));
  const auto index = Bm25Index::build(c.chunks);
  const auto r = index.search("Who is the father of Theudebert I?", 3);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(index.chunks()[r[0].ordinal].doc_id.rfind("theudebert", 0), 0u);
}

TEST(Evidence, InContextReturnsEveryChunk) {
  const auto chunks = pt::toy_chunks();
  auto all = EvidenceProvider::in_context(chunks);
  const auto& e = all.fetch("anything");
  EXPECT_EQ(e.mode, EvidenceMode::InContext);
  EXPECT_EQ(e.chunks, chunks);
  EXPECT_EQ(all.retrieval_calls(), 0u);

  auto gold = EvidenceProvider::in_context(chunks, std::vector<std::string>{"orchard", "apple"});
  const auto& g = gold.fetch("q");
  ASSERT_EQ(g.chunks.size(), 2u);
  EXPECT_EQ(g.chunks[0].doc_id, "apple");
  EXPECT_EQ(g.chunks[1].doc_id, "orchard");
}

TEST(Evidence, CacheDoesNotChangeResults) {
  const auto index = Bm25Index::build(pt::toy_chunks());
  auto cached = EvidenceProvider::rag(index, 2, true);
  auto plain = EvidenceProvider::rag(index, 2, false);
  const std::vector<std::string> qs = {"apple river", "river", "apple river", "pear", "river"};
  for (const auto& q : qs) {
    const auto a = cached.fetch(q);
    const auto b = plain.fetch(q);
    EXPECT_EQ(a.chunks, b.chunks) << q;
    EXPECT_EQ(a.scores, b.scores) << q;
    EXPECT_LE(a.chunks.size(), 2u);
  }
  EXPECT_EQ(cached.retrieval_calls(), 3u);
  EXPECT_EQ(plain.retrieval_calls(), 5u);
  ASSERT_EQ(cached.seen().size(), 3u);
  EXPECT_EQ(cached.seen()[0].doc_id, "apple");
  EXPECT_EQ(cached.seen()[2].doc_id, "orchard");
}
