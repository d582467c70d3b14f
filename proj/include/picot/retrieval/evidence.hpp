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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picot/retrieval/bm25.hpp"
#include "picot/retrieval/chunking.hpp"

namespace picot::retrieval {

enum class EvidenceMode { Rag, InContext };

const char* to_string(EvidenceMode mode);

struct EvidenceSet {
  EvidenceMode mode = EvidenceMode::Rag;
  std::size_t k = 0;
  std::vector<Chunk> chunks;
  std::vector<double> scores;  // Rag only, parallel to chunks
};

// Evidence for one question run. Rag results are cached by exact question
// text; retrieval_calls() counts cache misses.
class EvidenceProvider {
 public:
  static EvidenceProvider rag(const Bm25Index& index, std::size_t k, bool cache = true);
  // All chunks in corpus order, or only those of gold_docs when given.
  static EvidenceProvider in_context(const std::vector<Chunk>& corpus,
                                     std::optional<std::vector<std::string>> gold_docs = std::nullopt);

  const EvidenceSet& fetch(const std::string& question);

  EvidenceMode mode() const { return mode_; }
  std::size_t retrieval_calls() const { return calls_; }
  // Every chunk returned so far, deduplicated, in first-returned order.
  const std::vector<Chunk>& seen() const { return seen_; }

 private:
  EvidenceMode mode_ = EvidenceMode::Rag;
  const Bm25Index* index_ = nullptr;
  std::size_t k_ = 0;
  bool cache_ = true;
  std::size_t calls_ = 0;
  std::map<std::string, EvidenceSet> cached_;
  EvidenceSet whole_;
  EvidenceSet scratch_;
  std::vector<Chunk> seen_;
  std::set<std::string> seen_ids_;

  const EvidenceSet& log(const EvidenceSet& set);
};

}  // namespace picot::retrieval
