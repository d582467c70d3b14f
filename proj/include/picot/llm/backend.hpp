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

#include <stdexcept>
#include <string>

#include "picot/llm/usage.hpp"

namespace picot::llm {

enum class DecodeMode { Greedy, Sample };

struct LlmRequest {
  std::string prompt;
  Role role = Role::Slice;
  int max_tokens = 4096;
  double temperature = 0.0;  // ignored when greedy
  DecodeMode decode = DecodeMode::Greedy;
  double top_p = 1.0;
};

struct LlmResponse {
  std::string text;
  Usage usage;
};

// The backend could not produce a response (network, HTTP status, bad body).
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scripted backend has no entry for the request.
class ScriptMiss : public std::runtime_error {
 public:
  ScriptMiss(std::string key, const std::string& detail)
      : std::runtime_error("no script entry for key " + key + " (" + detail + ")"), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  // Must be safe to call concurrently.
  virtual LlmResponse complete(const LlmRequest& req) = 0;
};

}  // namespace picot::llm
