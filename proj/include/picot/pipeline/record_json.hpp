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

#include <nlohmann/json.hpp>

#include "picot/evalkit.hpp"
#include "picot/pipeline/pipeline.hpp"

namespace picot::pipeline {

// Canonical JSON form of a record; see docs/runrecord.md.
nlohmann::json record_to_json(const RunRecord& r);

// One line of records.jsonl.
std::string record_to_line(const RunRecord& r);

// Score row rebuilt from a stored record. Throws nlohmann::json::exception
// on missing fields.
evalkit::ScoreRow score_row_from_json(const nlohmann::json& j);

}  // namespace picot::pipeline
