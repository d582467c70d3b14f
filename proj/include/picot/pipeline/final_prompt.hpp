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

#include <string>
#include <string_view>
#include <vector>

#include "picot/prolog/term.hpp"
#include "picot/retrieval/chunking.hpp"

namespace picot::pipeline {

// Constants without quotes, dates as YYYY-MM-DD, joined by ", ".
std::string render_prolog_answer(const std::vector<prolog::Term>& answer);

std::string build_final_prompt(const std::vector<std::string>& notes, const std::vector<retrieval::Chunk>& passages,
                               const std::vector<prolog::Term>& prolog_answer, std::string_view question,
                               std::string_view examples);

}  // namespace picot::pipeline
