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

#include <sstream>

#include "picot/cli/cli.hpp"
#include "picot/pipeline/final_prompt.hpp"
#include "picot/prolog/parser.hpp"

namespace picot::cli {

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string answer_text(const Instantiation& inst) {
  if (inst.parse_error) return "<unparsed> " + *inst.parse_error;
  if (inst.kind == StepKind::Verification) return inst.verdict && *inst.verdict ? "true" : "false";
  std::vector<std::string> parts;
  for (const auto& a : inst.answers) parts.push_back(prolog::render_constant(a));
  return join(parts, ", ");
}

}  // namespace

std::string format_trace(const pipeline::RunRecord& r) {
  std::ostringstream out;
  out << "Question\n" << r.question << "\n\n";
  out << "Query\n";
  if (r.query) {
    std::vector<std::string> goals;
    for (const auto& g : r.query->goals) goals.push_back(prolog::print_goal(g));
    out << join(goals, ",\n") << "\n";
    out << "Target: " << r.query->target.name << "\n";
  } else if (r.query_error) {
    out << "(unparsed) " << *r.query_error << "\n";
  }
  out << "\nDefinitions\n";
  std::istringstream defs(r.definitions_raw);
  for (std::string line; std::getline(defs, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out << line << "\n";
  }
  std::size_t n = 0;
  for (const auto& step : r.steps) {
    for (const auto& inst : step.instantiations) {
      if (!inst.llm_called) continue;
      out << "\nSub-Query " << ++n << ": " << inst.question << "\n";
      out << "    Retrieved passages: " << join(inst.evidence_titles, ", ") << "\n";
      out << "    Answer: " << answer_text(inst) << "\n";
    }
  }
  out << "\nNotes\n";
  for (const auto& note : r.notes) out << note << "\n";
  out << "\nProlog Answer: " << pipeline::render_prolog_answer(r.prolog_answer) << "\n";
  out << "Final Answer: " << r.final_answer << "\n";
  if (r.aborted) out << "Aborted: " << r.abort_reason << "\n";
  return out.str();
}

}  // namespace picot::cli
