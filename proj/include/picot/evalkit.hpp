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
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace picot::evalkit {

struct QaExample {
  std::string id;
  std::string question;
  std::vector<std::string> gold_answers;
  std::optional<std::vector<std::string>> gold_docs;
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON lines of {"id", "question", "answers": [...], "gold_docs": [...]?}.
// Throws DatasetError naming the first bad line.
std::vector<QaExample> load_dataset(std::istream& in);
std::vector<QaExample> load_dataset(const std::filesystem::path& path);

// Seeded subset of n indices from [0, size), returned in ascending order.
std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n, std::uint64_t seed);

// Lowercase, drop punctuation, drop the articles a/an/the, collapse spaces.
std::string normalize_answer(std::string_view text);

int exact_match(std::string_view pred, const std::vector<std::string>& golds);
double token_f1(std::string_view pred, const std::vector<std::string>& golds);

struct ScoreRow {
  std::string id;
  int em = 0;
  double f1 = 0.0;
  double retrieval_calls = 0;
  double llm_calls = 0;
  double prompt_tokens = 0;
  double completion_tokens = 0;
  double cached_tokens = 0;
  std::string error_category = "None";
  bool aborted = false;
};

struct Stat {
  double mean = 0.0;
  double se = 0.0;
};

double mean(const std::vector<double>& xs);
// Sample standard deviation (n - 1) over sqrt(n); 0 when n < 2.
double standard_error(const std::vector<double>& xs);
Stat stat(const std::vector<double>& xs);

struct AggregateReport {
  std::size_t n = 0;  // scored rows (aborted rows excluded)
  std::size_t aborted = 0;
  Stat em, f1;
  Stat retrieval_calls, llm_calls;
  Stat prompt_tokens, completion_tokens, cached_tokens;
  std::map<std::string, std::size_t> categories;  // over scored rows
};

// Throws std::invalid_argument when no row is scorable.
AggregateReport aggregate(const std::vector<ScoreRow>& rows);

std::string format_report(const AggregateReport& r);
nlohmann::json report_json(const AggregateReport& r, const std::vector<ScoreRow>& rows);

}  // namespace picot::evalkit
