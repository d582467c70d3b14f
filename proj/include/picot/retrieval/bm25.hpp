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
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "picot/retrieval/chunking.hpp"

namespace picot::retrieval {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// ASCII-lowercased maximal runs of alphanumerics. Bytes >= 0x80 count as
// alphanumeric so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct Posting {
  std::uint32_t ordinal = 0;
  std::uint32_t tf = 0;
  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredChunk {
  std::size_t ordinal = 0;
  double score = 0.0;
};

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Okapi BM25 over chunks, indexing title + " " + text.
class Bm25Index {
 public:
  Bm25Index() = default;

  // Throws IndexError on an empty chunk list.
  static Bm25Index build(std::vector<Chunk> chunks, Bm25Params params = {});

  // Top k matching chunks by descending score, ties by ascending ordinal.
  std::vector<ScoredChunk> search(std::string_view query, std::size_t k) const;

  // ln((N - df + 0.5) / (df + 0.5) + 1), 0 for unknown terms.
  double idf(const std::string& term) const;

  const std::vector<Chunk>& chunks() const { return chunks_; }
  const std::vector<std::uint32_t>& doc_lengths() const { return doc_lengths_; }
  const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }
  std::size_t doc_count() const { return chunks_.size(); }
  double avg_doc_length() const { return avg_len_; }
  const Bm25Params& params() const { return params_; }
  void set_params(Bm25Params p) { params_ = p; }

  // Versioned little-endian binary form; see docs/index-format.md.
  std::string serialize() const;
  static Bm25Index deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static Bm25Index load(const std::filesystem::path& path);

 private:
  void finish();

  std::vector<Chunk> chunks_;
  std::vector<std::uint32_t> doc_lengths_;
  std::map<std::string, std::vector<Posting>> postings_;
  double avg_len_ = 0.0;
  Bm25Params params_;
};

}  // namespace picot::retrieval
