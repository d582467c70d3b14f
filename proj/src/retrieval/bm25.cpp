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

#include "picot/retrieval/bm25.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <unordered_map>

namespace picot::retrieval {

namespace {

constexpr char kMagic[8] = {'P', 'I', 'C', 'O', 'T', 'B', 'M', '\x19'};
constexpr std::uint32_t kVersion = 1;

bool word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_ += s;
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw IndexError("truncated index file");
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto v = in_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  std::uint64_t uint(int width) {
    need(width);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += width;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() { return std::string(bytes(u32())); }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (word_byte(c)) {
      cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Bm25Index Bm25Index::build(std::vector<Chunk> chunks, Bm25Params params) {
  if (chunks.empty()) throw IndexError("cannot index an empty chunk list");
  Bm25Index idx;
  idx.params_ = params;
  idx.chunks_ = std::move(chunks);
  for (std::size_t ord = 0; ord < idx.chunks_.size(); ++ord) {
    const Chunk& c = idx.chunks_[ord];
    const auto toks = tokenize(c.title + " " + c.text);
    idx.doc_lengths_.push_back(static_cast<std::uint32_t>(toks.size()));
    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : toks) ++tf[t];
    for (auto& [term, n] : tf) idx.postings_[term].push_back({static_cast<std::uint32_t>(ord), n});
  }
  idx.finish();
  return idx;
}

void Bm25Index::finish() {
  double total = 0;
  for (auto len : doc_lengths_) total += len;
  avg_len_ = doc_lengths_.empty() ? 0.0 : total / static_cast<double>(doc_lengths_.size());
}

double Bm25Index::idf(const std::string& term) const {
  auto it = postings_.find(term);
  if (it == postings_.end()) return 0.0;
  const double n = static_cast<double>(doc_count());
  const double df = static_cast<double>(it->second.size());
  return std::max(0.0, std::log((n - df + 0.5) / (df + 0.5) + 1.0));
}

std::vector<ScoredChunk> Bm25Index::search(std::string_view query, std::size_t k) const {
  if (k == 0 || chunks_.empty()) return {};
  const auto toks = tokenize(query);
  const std::set<std::string> terms(toks.begin(), toks.end());
  std::unordered_map<std::size_t, double> acc;
  for (const auto& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double w = idf(term);
    for (const auto& p : it->second) {
      const double tf = p.tf;
      const double len = doc_lengths_[p.ordinal];
      const double norm = params_.k1 * (1.0 - params_.b + params_.b * len / avg_len_);
      acc[p.ordinal] += w * (tf * (params_.k1 + 1.0)) / (tf + norm);
    }
  }
  std::vector<ScoredChunk> out;
  out.reserve(acc.size());
  for (const auto& [ord, score] : acc) out.push_back({ord, score});
  std::sort(out.begin(), out.end(), [](const ScoredChunk& a, const ScoredChunk& b) {
    return a.score != b.score ? a.score > b.score : a.ordinal < b.ordinal;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

std::string Bm25Index::serialize() const {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.u64(chunks_.size());
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    const Chunk& c = chunks_[i];
    w.str(c.chunk_id);
    w.str(c.doc_id);
    w.str(c.title);
    w.str(c.text);
    w.u32(static_cast<std::uint32_t>(c.token_count));
    w.u32(doc_lengths_[i]);
  }
  w.u64(postings_.size());
  for (const auto& [term, list] : postings_) {
    w.str(term);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& p : list) {
      w.u32(p.ordinal);
      w.u32(p.tf);
    }
  }
  return w.take();
}

Bm25Index Bm25Index::deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (std::memcmp(r.bytes(sizeof kMagic).data(), kMagic, sizeof kMagic) != 0) {
    throw IndexError("not an index file");
  }
  const auto version = r.u32();
  if (version != kVersion) throw IndexError("unsupported index version " + std::to_string(version));
  Bm25Index idx;
  idx.params_.k1 = r.f64();
  idx.params_.b = r.f64();
  const auto n = r.u64();
  for (std::uint64_t i = 0; i < n; ++i) {
    Chunk c;
    c.chunk_id = r.str();
    c.doc_id = r.str();
    c.title = r.str();
    c.text = r.str();
    c.token_count = r.u32();
    idx.doc_lengths_.push_back(r.u32());
    idx.chunks_.push_back(std::move(c));
  }
  const auto terms = r.u64();
  for (std::uint64_t t = 0; t < terms; ++t) {
    std::string term = r.str();
    const auto count = r.u32();
    std::vector<Posting> list(count);
    for (auto& p : list) {
      p.ordinal = r.u32();
      p.tf = r.u32();
      if (p.ordinal >= n) throw IndexError("posting refers to a missing chunk");
    }
    idx.postings_.emplace(std::move(term), std::move(list));
  }
  if (!r.done()) throw IndexError("trailing bytes in index file");
  if (idx.chunks_.empty()) throw IndexError("index has no chunks");
  idx.finish();
  return idx;
}

void Bm25Index::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IndexError("cannot write " + path.string());
  const std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IndexError("write failed for " + path.string());
}

Bm25Index Bm25Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot open index " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace picot::retrieval
