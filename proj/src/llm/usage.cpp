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

#include "picot/llm/usage.hpp"

namespace picot::llm {

const char* to_string(Role role) {
  switch (role) {
    case Role::QueryGen: return "querygen";
    case Role::Slice: return "slice";
    case Role::Final: return "final";
  }
  return "?";
}

bool parse_role(const std::string& text, Role& out) {
  for (Role r : {Role::QueryGen, Role::Slice, Role::Final}) {
    if (text == to_string(r)) {
      out = r;
      return true;
    }
  }
  return false;
}

void UsageLedger::record(std::string tag, Role role, const Usage& usage) {
  std::lock_guard<std::mutex> lock(mu_);
  records_.push_back({std::move(tag), role, usage});
  totals_ += usage;
}

LedgerSnapshot UsageLedger::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {records_, totals_};
}

Usage UsageLedger::totals() const {
  std::lock_guard<std::mutex> lock(mu_);
  return totals_;
}

std::size_t UsageLedger::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace picot::llm
