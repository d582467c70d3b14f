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
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "picot/llm/backend.hpp"

namespace picot::llm {

struct ScriptEntry {
  std::string match_key;
  std::string response;
  Usage usage;
};

// Text of the last "Question:" line of a prompt, whitespace-collapsed.
std::string question_line(std::string_view prompt);

// sha256(role + "\n" + question_line(prompt)), or of role + "\n" + the
// whole prompt when strict.
std::string script_key(Role role, std::string_view prompt, bool strict = false);

// Key of a request whose question line reads "Question: <question>".
std::string script_key_for_question(Role role, std::string_view question);

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic replay backend. Script lines are JSON objects with
// "response", optional "usage" {prompt_tokens, completion_tokens,
// cached_tokens}, and either "match_key" or "role" plus "question" (or
// "prompt" in strict mode).
class ScriptedBackend : public LlmBackend {
 public:
  explicit ScriptedBackend(std::vector<ScriptEntry> entries, bool strict = false);
  static ScriptedBackend load(std::istream& in, bool strict = false);
  static ScriptedBackend load(const std::filesystem::path& path, bool strict = false);

  LlmResponse complete(const LlmRequest& req) override;

  std::size_t size() const { return entries_.size(); }
  bool strict() const { return strict_; }

 private:
  std::map<std::string, ScriptEntry> entries_;
  bool strict_ = false;
};

}  // namespace picot::llm
