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

#include "picot/llm/scripted_backend.hpp"

#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "picot/llm/sha256.hpp"

namespace picot::llm {

namespace {

constexpr std::string_view kQuestionPrefix = "Question:";

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
  }
  return out;
}

Usage read_usage(const nlohmann::json& j) {
  Usage u;
  if (!j.contains("usage")) return u;
  const auto& x = j.at("usage");
  u.prompt_tokens = x.value("prompt_tokens", 0);
  u.completion_tokens = x.value("completion_tokens", 0);
  u.cached_tokens = x.value("cached_tokens", 0);
  if (u.prompt_tokens < 0 || u.completion_tokens < 0 || u.cached_tokens < 0 ||
      u.cached_tokens > u.prompt_tokens) {
    throw ScriptError("inconsistent usage counts");
  }
  return u;
}

}  // namespace

std::string question_line(std::string_view prompt) {
  std::size_t pos = std::string_view::npos;
  for (std::size_t at = 0; (at = prompt.find(kQuestionPrefix, at)) != std::string_view::npos; ++at) {
    if (at == 0 || prompt[at - 1] == '\n') pos = at;
  }
  if (pos == std::string_view::npos) return {};
  const std::size_t end = prompt.find('\n', pos);
  return collapse_ws(prompt.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
}

std::string script_key(Role role, std::string_view prompt, bool strict) {
  const std::string body = strict ? std::string(prompt) : question_line(prompt);
  return sha256_hex(std::string(to_string(role)) + "\n" + body);
}

std::string script_key_for_question(Role role, std::string_view question) {
  return script_key(role, std::string(kQuestionPrefix) + " " + std::string(question), false);
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptEntry> entries, bool strict) : strict_(strict) {
  for (auto& e : entries) {
    const std::string key = e.match_key;
    if (!entries_.emplace(key, std::move(e)).second) throw ScriptError("duplicate script key " + key);
  }
}

ScriptedBackend ScriptedBackend::load(std::istream& in, bool strict) {
  std::vector<ScriptEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ScriptEntry e;
      e.response = j.at("response").get<std::string>();
      e.usage = read_usage(j);
      if (j.contains("match_key")) {
        e.match_key = j.at("match_key").get<std::string>();
      } else {
        Role role;
        if (!parse_role(j.at("role").get<std::string>(), role)) throw ScriptError("unknown role");
        if (strict) {
          e.match_key = script_key(role, j.at("prompt").get<std::string>(), true);
        } else {
          e.match_key = script_key_for_question(role, j.at("question").get<std::string>());
        }
      }
      entries.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw ScriptError("script line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return ScriptedBackend(std::move(entries), strict);
}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ScriptError("cannot open script " + path.string());
  return load(in, strict);
}

LlmResponse ScriptedBackend::complete(const LlmRequest& req) {
  const std::string key = script_key(req.role, req.prompt, strict_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ScriptMiss(key, std::string(to_string(req.role)) + " / " + question_line(req.prompt));
  }
  return {it->second.response, it->second.usage};
}

}  // namespace picot::llm
