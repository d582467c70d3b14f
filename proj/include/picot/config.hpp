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

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "picot/llm/http_backend.hpp"
#include "picot/pipeline/pipeline.hpp"
#include "picot/retrieval/bm25.hpp"

namespace picot {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { String, Path, Bool, Unsigned, Real, Choice };

struct ConfigKey {
  std::string name;  // dotted, e.g. "retriever.k1"
  ValueType type;
  std::string default_value;
  std::vector<std::string> choices;  // Choice only
  std::string help;
};

// Every recognised key with its default, in dump order.
const std::vector<ConfigKey>& config_schema();

// Flat key/value view over the schema. Values are stored in canonical text
// form so that dump() output parses back to the same configuration.
class Config {
 public:
  Config();

  // Parses `[section]` headers, `key = value` lines and `#` comments.
  // Values may be double-quoted. Relative Path values are resolved against
  // base_dir.
  void merge_text(std::string_view text, const std::filesystem::path& base_dir = {});
  void merge_file(const std::filesystem::path& path);

  // Throws ConfigError for unknown keys and ill-typed values.
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::size_t get_unsigned(const std::string& key) const;
  double get_real(const std::string& key) const;

  std::string dump() const;

  retrieval::Bm25Params bm25_params() const;
  // Reads the few-shot files named by fewshot.* (empty path: no examples).
  pipeline::PipelineConfig pipeline_config() const;
  // api_key is taken from PICOT_API_KEY.
  llm::HttpConfig http_config() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace picot
