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
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "picot/config.hpp"
#include "picot/engine/knowledge_base.hpp"
#include "picot/evalkit.hpp"
#include "picot/llm/scripted_backend.hpp"
#include "picot/pipeline/pipeline.hpp"
#include "picot/retrieval/bm25.hpp"
#include "picot/retrieval/chunking.hpp"

namespace picot::testing {

std::filesystem::path fixture(const std::string& relative);
std::string read_file(const std::filesystem::path& path);

struct ScriptLine {
  llm::Role role;
  std::string question;
  std::string response;
  llm::Usage usage;
};

llm::ScriptedBackend make_script(const std::vector<ScriptLine>& lines);

// Everything a scripted replay directory describes.
struct Replay {
  Config config;
  pipeline::PipelineConfig pipeline;
  retrieval::Corpus corpus;
  retrieval::Bm25Index index;
  std::vector<evalkit::QaExample> examples;

  explicit Replay(const std::string& name);
  pipeline::Resources resources(llm::LlmBackend& backend) const;
  std::vector<pipeline::RunRecord> run(std::size_t parallel = 1) const;
};

// Names of the shipped replay directories.
const std::vector<std::string>& replay_names();

// A short in-memory corpus: three chunks with distinct vocabularies.
std::vector<retrieval::Chunk> toy_chunks();

// A random conjunctive query (atoms, then comparisons over bound variables)
// with a random knowledge base, sized for the brute-force evaluator.
struct RandomInstance {
  std::vector<prolog::Goal> goals;
  engine::KnowledgeBase kb;
};

RandomInstance random_conjunctive(std::mt19937_64& rng);

}  // namespace picot::testing
