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
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace picot::retrieval {

inline constexpr std::size_t kDefaultChunkSize = 100;

struct Document {
  std::string id;
  std::string title;
  std::string text;
};

struct Chunk {
  std::string chunk_id;  // doc_id + "#" + ordinal
  std::string doc_id;
  std::string title;
  std::string text;
  std::size_t token_count = 0;  // whitespace tokens
  friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct IngestIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<Chunk> chunks;
  std::vector<IngestIssue> issues;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Consecutive runs of at most chunk_size whitespace tokens. Each chunk text
// is the byte range from its first token to its last; a document that fits
// in one chunk keeps its text unchanged.
std::vector<Chunk> chunk_document(const Document& doc, std::size_t chunk_size = kDefaultChunkSize);

// JSON lines of {"id", "title", "text"}. Malformed lines are reported in
// issues; throws IngestError when no document is valid.
Corpus ingest_corpus(std::istream& in, std::size_t chunk_size = kDefaultChunkSize);
Corpus ingest_corpus(const std::filesystem::path& path, std::size_t chunk_size = kDefaultChunkSize);

}  // namespace picot::retrieval
