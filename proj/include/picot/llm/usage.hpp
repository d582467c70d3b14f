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

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace picot::llm {

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t cached_tokens = 0;

  Usage& operator+=(const Usage& o) {
    prompt_tokens += o.prompt_tokens;
    completion_tokens += o.completion_tokens;
    cached_tokens += o.cached_tokens;
    return *this;
  }
  std::int64_t total() const { return prompt_tokens + completion_tokens; }
  friend bool operator==(const Usage&, const Usage&) = default;
};

enum class Role { QueryGen, Slice, Final };

const char* to_string(Role role);
bool parse_role(const std::string& text, Role& out);

struct UsageRecord {
  std::string tag;
  Role role = Role::Slice;
  Usage usage;
};

struct LedgerSnapshot {
  std::vector<UsageRecord> records;
  Usage totals;
};

// Thread-safe accumulator of per-call usage.
class UsageLedger {
 public:
  void record(std::string tag, Role role, const Usage& usage);
  LedgerSnapshot snapshot() const;
  Usage totals() const;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::vector<UsageRecord> records_;
  Usage totals_;
};

}  // namespace picot::llm
