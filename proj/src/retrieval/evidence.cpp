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

#include "picot/retrieval/evidence.hpp"

#include <algorithm>

namespace picot::retrieval {

const char* to_string(EvidenceMode mode) { return mode == EvidenceMode::Rag ? "rag" : "incontext"; }

EvidenceProvider EvidenceProvider::rag(const Bm25Index& index, std::size_t k, bool cache) {
  EvidenceProvider p;
  p.mode_ = EvidenceMode::Rag;
  p.index_ = &index;
  p.k_ = k;
  p.cache_ = cache;
  return p;
}

EvidenceProvider EvidenceProvider::in_context(const std::vector<Chunk>& corpus,
                                              std::optional<std::vector<std::string>> gold_docs) {
  EvidenceProvider p;
  p.mode_ = EvidenceMode::InContext;
  p.whole_.mode = EvidenceMode::InContext;
  for (const auto& c : corpus) {
    if (gold_docs && std::find(gold_docs->begin(), gold_docs->end(), c.doc_id) == gold_docs->end()) continue;
    p.whole_.chunks.push_back(c);
  }
  p.whole_.k = p.whole_.chunks.size();
  return p;
}

const EvidenceSet& EvidenceProvider::log(const EvidenceSet& set) {
  for (const auto& c : set.chunks) {
    if (seen_ids_.insert(c.chunk_id).second) seen_.push_back(c);
  }
  return set;
}

const EvidenceSet& EvidenceProvider::fetch(const std::string& question) {
  if (mode_ == EvidenceMode::InContext) return log(whole_);
  if (cache_) {
    auto it = cached_.find(question);
    if (it != cached_.end()) return log(it->second);
  }
  ++calls_;
  EvidenceSet set;
  set.mode = EvidenceMode::Rag;
  set.k = k_;
  for (const auto& hit : index_->search(question, k_)) {
    set.chunks.push_back(index_->chunks()[hit.ordinal]);
    set.scores.push_back(hit.score);
  }
  if (!cache_) {
    scratch_ = std::move(set);
    return log(scratch_);
  }
  return log(cached_.emplace(question, std::move(set)).first->second);
}

}  // namespace picot::retrieval
