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

#include <ostream>
#include <string>

#include "picot/pipeline/pipeline.hpp"

namespace picot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBackend = 3;

// Entry point for the `picot` tool. Subcommands: index, ask, run, report,
// config.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Human-readable execution trace: question, query, definitions, one block
// per LLM sub-query, notes, Prolog answer, final answer.
std::string format_trace(const pipeline::RunRecord& record);

}  // namespace picot::cli
