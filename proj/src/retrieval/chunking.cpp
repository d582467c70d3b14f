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

#include "picot/retrieval/chunking.hpp"

#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

namespace picot::retrieval {

std::vector<Chunk> chunk_document(const Document& doc, std::size_t chunk_size) {
  if (chunk_size == 0) throw std::invalid_argument("chunk_size must be positive");
  // Token byte ranges.
  std::vector<std::pair<std::size_t, std::size_t>> tokens;
  const std::string& s = doc.text;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    tokens.emplace_back(start, i);
  }

  std::vector<Chunk> out;
  for (std::size_t first = 0; first < tokens.size(); first += chunk_size) {
    const std::size_t last = std::min(first + chunk_size, tokens.size()) - 1;
    Chunk c;
    c.doc_id = doc.id;
    c.chunk_id = doc.id + "#" + std::to_string(out.size());
    c.title = doc.title;
    c.token_count = last - first + 1;
    c.text = tokens.size() <= chunk_size ? s : s.substr(tokens[first].first, tokens[last].second - tokens[first].first);
    out.push_back(std::move(c));
  }
  return out;
}

Corpus ingest_corpus(std::istream& in, std::size_t chunk_size) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Document d;
      d.id = j.at("id").get<std::string>();
      d.title = j.value("title", std::string());
      d.text = j.at("text").get<std::string>();
      if (d.id.empty()) throw std::invalid_argument("empty id");
      for (auto& c : chunk_document(d, chunk_size)) corpus.chunks.push_back(std::move(c));
      corpus.documents.push_back(std::move(d));
    } catch (const std::exception& e) {
      corpus.issues.push_back({lineno, e.what()});
    }
  }
  if (corpus.documents.empty()) {
    std::string msg = "corpus has no valid documents";
    if (!corpus.issues.empty()) {
      msg += " (line " + std::to_string(corpus.issues.front().line) + ": " + corpus.issues.front().message + ")";
    }
    throw IngestError(msg);
  }
  return corpus;
}

Corpus ingest_corpus(const std::filesystem::path& path, std::size_t chunk_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open corpus " + path.string());
  return ingest_corpus(in, chunk_size);
}

}  // namespace picot::retrieval
