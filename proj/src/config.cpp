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

#include "picot/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace picot {

namespace {

using V = ValueType;

std::vector<ConfigKey> make_schema() {
  return {
      {"mode", V::Choice, "rag", {"rag", "incontext"}, "evidence mode"},
      {"retriever.k1", V::Real, "1.2", {}, "BM25 term saturation"},
      {"retriever.b", V::Real, "0.75", {}, "BM25 length normalisation"},
      {"retriever.top_k", V::Unsigned, "5", {}, "passages per retrieval"},
      {"retriever.chunk_size", V::Unsigned, "100", {}, "tokens per chunk"},
      {"ablation.passages", V::Bool, "false", {}, "drop passages from the final prompt"},
      {"ablation.notes", V::Bool, "false", {}, "drop notes from the final prompt"},
      {"ablation.prolog_answer", V::Bool, "false", {}, "drop the Prolog answer from the final prompt"},
      {"caps.max_instantiations", V::Unsigned, "50", {}, "instantiations per step"},
      {"caps.max_goals", V::Unsigned, "25", {}, "executed goals per query"},
      {"caps.max_passages", V::Unsigned, "0", {}, "passages in the final prompt, 0 for all"},
      {"llm.backend", V::Choice, "http", {"http", "script"}, "LLM backend"},
      {"llm.base_url", V::String, "http://localhost:8000/v1", {}, "chat completions base URL"},
      {"llm.model", V::String, "", {}, "model name"},
      {"llm.max_tokens", V::Unsigned, "4096", {}, "generation limit"},
      {"llm.decode", V::Choice, "greedy", {"greedy", "sample"}, "decoding mode"},
      {"llm.temperature", V::Real, "0", {}, "sampling temperature"},
      {"llm.top_p", V::Real, "1", {}, "nucleus sampling mass"},
      {"llm.timeout_s", V::Real, "300", {}, "request timeout in seconds"},
      {"llm.retries", V::Unsigned, "3", {}, "attempts per request"},
      {"llm.backoff_ms", V::Unsigned, "500", {}, "initial retry backoff"},
      {"script.path", V::Path, "", {}, "scripted responses (JSONL)"},
      {"script.strict", V::Bool, "false", {}, "key scripted responses on the full prompt"},
      {"data.corpus", V::Path, "", {}, "corpus JSONL"},
      {"data.index", V::Path, "", {}, "BM25 index file"},
      {"fewshot.querygen", V::Path, "", {}, "query generation examples"},
      {"fewshot.slice", V::Path, "", {}, "SLICE examples"},
      {"fewshot.final", V::Path, "", {}, "final answer examples"},
      {"render.quote_strings", V::Bool, "false", {}, "quote string constants in generated questions"},
      {"pipeline.fallback_retrieval", V::Bool, "true", {}, "retrieve on the raw question when the query fails to parse"},
      {"pipeline.retrieval_cache", V::Bool, "true", {}, "reuse results for repeated retrieval questions"},
      {"run.parallel", V::Unsigned, "1", {}, "worker threads"},
      {"run.sample", V::Unsigned, "0", {}, "random subset size, 0 for all"},
      {"run.seed", V::Unsigned, "0", {}, "sampling seed"},
  };
}

const ConfigKey* find_key(const std::string& name) {
  const auto& s = config_schema();
  auto it = std::find_if(s.begin(), s.end(), [&](const ConfigKey& k) { return k.name == name; });
  return it == s.end() ? nullptr : &*it;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end;
}

std::string canonical(const ConfigKey& key, const std::string& raw) {
  auto bad = [&](const char* what) {
    return ConfigError("config key " + key.name + ": expected " + what + ", got '" + raw + "'");
  };
  switch (key.type) {
    case V::String:
    case V::Path:
      return raw;
    case V::Bool:
      if (raw == "true" || raw == "1") return "true";
      if (raw == "false" || raw == "0") return "false";
      throw bad("true or false");
    case V::Unsigned: {
      unsigned long long v = 0;
      if (!parse_number(raw, v)) throw bad("a non-negative integer");
      return std::to_string(v);
    }
    case V::Real: {
      double v = 0;
      if (!parse_number(raw, v)) throw bad("a number");
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
      return std::string(buf, res.ptr);
    }
    case V::Choice:
      if (std::find(key.choices.begin(), key.choices.end(), raw) == key.choices.end()) throw bad("a listed choice");
      return raw;
  }
  return raw;
}

// Strips a trailing comment and surrounding quotes.
std::string parse_value(std::string_view text, std::size_t lineno) {
  std::string v = trim(text);
  if (!v.empty() && v.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < v.size() && v[i] != '"'; ++i) {
      if (v[i] == '\\' && i + 1 < v.size()) ++i;
      out.push_back(v[i]);
    }
    if (i >= v.size()) throw ConfigError("config line " + std::to_string(lineno) + ": unterminated string");
    const std::string rest = trim(std::string_view(v).substr(i + 1));
    if (!rest.empty() && rest.front() != '#') {
      throw ConfigError("config line " + std::to_string(lineno) + ": trailing text after value");
    }
    return out;
  }
  if (auto hash = v.find('#'); hash != std::string::npos) v = trim(std::string_view(v).substr(0, hash));
  return v;
}

std::string quote_if_needed(const ConfigKey& key, const std::string& v) {
  if (key.type != V::String && key.type != V::Path) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = make_schema();
  return schema;
}

Config::Config() {
  for (const auto& k : config_schema()) values_[k.name] = k.default_value;
}

void Config::set(const std::string& key, const std::string& value) {
  const ConfigKey* k = find_key(key);
  if (!k) throw ConfigError("unknown config key: " + key);
  values_[key] = canonical(*k, value);
}

void Config::merge_text(std::string_view text, const std::filesystem::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string name = trim(std::string_view(t).substr(0, eq));
    const std::string key = section.empty() ? name : section + "." + name;
    const ConfigKey* k = find_key(key);
    if (!k) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    std::string value = parse_value(std::string_view(t).substr(eq + 1), lineno);
    if (k->type == V::Path && !value.empty() && !base_dir.empty() && std::filesystem::path(value).is_relative()) {
      value = (base_dir / value).lexically_normal().string();
    }
    set(key, value);
  }
}

void Config::merge_file(const std::filesystem::path& path) {
  merge_text(read_text(path), path.parent_path());
}

const std::string& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key: " + key);
  return it->second;
}

bool Config::get_bool(const std::string& key) const { return get(key) == "true"; }

std::size_t Config::get_unsigned(const std::string& key) const {
  unsigned long long v = 0;
  parse_number(get(key), v);
  return static_cast<std::size_t>(v);
}

double Config::get_real(const std::string& key) const {
  double v = 0;
  parse_number(get(key), v);
  return v;
}

std::string Config::dump() const {
  std::string out;
  for (const auto& k : config_schema()) {
    out += k.name + " = " + quote_if_needed(k, get(k.name)) + "\n";
  }
  return out;
}

retrieval::Bm25Params Config::bm25_params() const { return {get_real("retriever.k1"), get_real("retriever.b")}; }

pipeline::PipelineConfig Config::pipeline_config() const {
  pipeline::PipelineConfig c;
  c.mode = get("mode") == "incontext" ? retrieval::EvidenceMode::InContext : retrieval::EvidenceMode::Rag;
  c.top_k = get_unsigned("retriever.top_k");
  c.ablation = {get_bool("ablation.passages"), get_bool("ablation.notes"), get_bool("ablation.prolog_answer")};
  auto shots = [&](const char* key) { return get(key).empty() ? std::string() : read_text(get(key)); };
  c.fewshot = {shots("fewshot.querygen"), shots("fewshot.slice"), shots("fewshot.final")};
  c.max_instantiations = get_unsigned("caps.max_instantiations");
  c.max_goals = get_unsigned("caps.max_goals");
  c.max_passages = get_unsigned("caps.max_passages");
  c.quote_strings = get_bool("render.quote_strings");
  c.fallback_retrieval = get_bool("pipeline.fallback_retrieval");
  c.retrieval_cache = get_bool("pipeline.retrieval_cache");
  c.request.max_tokens = static_cast<int>(get_unsigned("llm.max_tokens"));
  c.request.decode = get("llm.decode") == "sample" ? llm::DecodeMode::Sample : llm::DecodeMode::Greedy;
  c.request.temperature = get_real("llm.temperature");
  c.request.top_p = get_real("llm.top_p");
  return c;
}

llm::HttpConfig Config::http_config() const {
  llm::HttpConfig h;
  h.base_url = get("llm.base_url");
  h.model = get("llm.model");
  if (const char* key = std::getenv("PICOT_API_KEY")) h.api_key = key;
  h.timeout_s = get_real("llm.timeout_s");
  h.attempts = static_cast<int>(std::max<std::size_t>(1, get_unsigned("llm.retries")));
  h.backoff_ms = static_cast<int>(get_unsigned("llm.backoff_ms"));
  return h;
}

}  // namespace picot
