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

#include "picot/pipeline/final_prompt.hpp"

#include "picot/llm/prompts.hpp"

namespace picot::pipeline {

namespace {

constexpr std::string_view kFinalTemplate = R"tpl(You are given the following information:
(BEGIN NOTES)
{notes}
(END NOTES)

(BEGIN EVIDENCE)
{evidence}
(END EVIDENCE)

You will be provided a question and an answer from a previous 
attempt. If the previous answer is not empty 
(e.g. <answer>...</answer>), you should copy the answer directly. 
If the previous answer is empty (i.e. <answer></answer>), 
you should try to answer the question using 
the notes and evidence provided. If there is a single answer, 
your response must end with the final answer enclosed in tags: 
<answer>FINAL_ANSWER</answer>
If there are multiple answers, your response must end with the 
final answers enclosed in tags:
<answer>FINAL_ANSWER_1,FINAL_ANSWER_2,...,FINAL_ANSWER_N</answer>.
If no information is available to answer the question, 
your response must end with: <answer></answer>.

Here are some examples:
(START OF EXAMPLES)
{examples}
(END OF EXAMPLES)
Question: {question}
Previous Answer: <answer>{answer}</answer>
Answer:)tpl";

}  // namespace

std::string render_prolog_answer(const std::vector<prolog::Term>& answer) {
  std::string out;
  for (std::size_t i = 0; i < answer.size(); ++i) {
    if (i) out += ", ";
    out += prolog::render_constant(answer[i], false);
  }
  return out;
}

std::string build_final_prompt(const std::vector<std::string>& notes, const std::vector<retrieval::Chunk>& passages,
                               const std::vector<prolog::Term>& prolog_answer, std::string_view question,
                               std::string_view examples) {
  std::string note_block;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i) note_block += '\n';
    note_block += notes[i];
  }
  const std::string evidence = llm::render_evidence(passages);
  const std::string answer = render_prolog_answer(prolog_answer);
  return llm::substitute_slots(kFinalTemplate, {{"notes", note_block},
                                                {"evidence", evidence},
                                                {"examples", examples},
                                                {"question", question},
                                                {"answer", answer}});
}

}  // namespace picot::pipeline
