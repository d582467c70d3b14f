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

#include "picot/slice.hpp"

#include <algorithm>
#include <set>

#include "picot/llm/prompts.hpp"
#include "picot/prolog/parser.hpp"

namespace picot {

using engine::Fact;
using engine::KnowledgeBase;
using engine::Solution;
using engine::SolutionSet;
using prolog::Aggregate;
using prolog::Atom;
using prolog::Goal;
using prolog::Term;

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Extraction: return "extraction";
    case StepKind::Verification: return "verification";
    case StepKind::EngineOnly: return "engine";
  }
  return "?";
}

bool StepArtifact::has_parse_failure() const {
  return std::any_of(instantiations.begin(), instantiations.end(),
                     [](const Instantiation& i) { return i.parse_error.has_value(); });
}

namespace {

Atom instantiate(const Atom& a, const Solution& s) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(engine::substitute(t, s));
  return out;
}

bool ground(const Atom& a) {
  return std::all_of(a.args.begin(), a.args.end(), [](const Term& t) { return t.is_ground(); });
}

std::string atom_text(const Atom& a) { return prolog::print_term(Term::compound(a.predicate, a.args)); }

const Atom* first_atom(const std::vector<Goal>& goals) {
  for (const auto& g : goals) {
    if (g.is_atom()) return &g.as_atom();
  }
  return nullptr;
}

bool known(const Atom& a, const KnowledgeBase& kb) {
  return !engine::solve({Goal{a}}, kb).solutions.empty();
}

void run_instantiation(const Atom& inst, std::size_t t, KnowledgeBase& kb, SliceContext& ctx, StepArtifact& art) {
  Instantiation in;
  in.goal = atom_text(inst);
  const auto slot = extraction_slot(inst, {});
  in.kind = slot ? StepKind::Extraction : StepKind::Verification;

  auto skip = [&](std::string why) {
    art.warnings.push_back(in.goal + ": " + why);
    in.skipped = std::move(why);
    art.instantiations.push_back(std::move(in));
  };

  const Definition* def = ctx.definitions.find(inst.predicate, inst.args.size());
  if (!def) return skip("no definition for " + inst.predicate + "/" + std::to_string(inst.args.size()));
  const auto open_args = std::count_if(inst.args.begin(), inst.args.end(), [](const Term& a) { return !a.is_ground(); });
  if (open_args > 1) return skip("more than one unbound argument");

  const bool quote = ctx.options.quote_strings;
  try {
    if (slot) {
      in.question = render_question(*def, inst, {}, quote);
    } else {
      in.question = render_entailment_question(render_statement(*def, Fact{inst.predicate, inst.args}, quote));
    }
  } catch (const DefinitionError& e) {
    return skip(e.what());
  }

  const auto& evidence = ctx.evidence.fetch(in.question);
  for (const auto& c : evidence.chunks) {
    in.evidence_ids.push_back(c.chunk_id);
    in.evidence_titles.push_back(c.title);
  }
  llm::LlmRequest req = ctx.options.request;
  req.role = llm::Role::Slice;
  req.prompt = llm::build_slice_prompt(evidence.chunks, in.question, ctx.options.fewshot);
  const auto resp = ctx.llm.complete(req);
  ctx.ledger.record("step" + std::to_string(t), llm::Role::Slice, resp.usage);
  in.llm_called = true;
  in.raw_response = resp.text;

  auto span = llm::extract_answer_span(resp.text);
  if (!span) {
    in.parse_error = std::string(llm::to_string(span.error().kind)) + ": " + span.error().message;
  } else if (slot) {
    auto answers = parse_answer_list(*span);
    if (!answers) {
      in.parse_error = std::string(prolog::to_string(answers.error().kind)) + ": " + answers.error().message;
    } else {
      in.answers = std::move(answers).value();
      for (const auto& a : in.answers) {
        Fact f{inst.predicate, inst.args};
        f.args[*slot] = a;
        if (kb.add(f)) in.facts_added.push_back(std::move(f));
      }
    }
  } else {
    auto verdict = parse_verdict(*span);
    if (!verdict) {
      in.parse_error = std::string(prolog::to_string(verdict.error().kind)) + ": " + verdict.error().message;
    } else {
      in.verdict = *verdict;
      Fact f{inst.predicate, inst.args};
      if (*verdict && kb.add(f)) in.facts_added.push_back(std::move(f));
    }
  }
  for (const auto& f : in.facts_added) art.facts_added.push_back(f);
  art.instantiations.push_back(std::move(in));
}

}  // namespace

StepKind classify(const Goal& goal, const SolutionSet& prior, const KnowledgeBase& kb) {
  if (goal.is_atom()) {
    const Atom& a = goal.as_atom();
    if (prior.empty()) return ground(a) ? StepKind::Verification : StepKind::Extraction;
    for (const auto& s : prior) {
      if (!ground(instantiate(a, s))) return StepKind::Extraction;
    }
    return StepKind::Verification;
  }
  if (const auto* agg = std::get_if<Aggregate>(&goal.node)) {
    const Atom* inner = first_atom(agg->inner);
    if (!inner) return StepKind::EngineOnly;
    for (const auto& s : prior) {
      if (!known(instantiate(*inner, s), kb)) return StepKind::Extraction;
    }
  }
  return StepKind::EngineOnly;
}

StepArtifact slice_step(const prolog::Query& q, std::size_t t, const SolutionSet& prior, KnowledgeBase& kb,
                        SliceContext& ctx) {
  StepArtifact art;
  art.step_index = t;
  art.goal = q.goals.at(t - 1);
  art.goal_text = prolog::print_goal(art.goal);
  art.kind = classify(art.goal, prior, kb);

  const Atom* target = nullptr;
  const bool aggregate = std::holds_alternative<Aggregate>(art.goal.node);
  if (art.goal.is_atom()) {
    target = &art.goal.as_atom();
  } else if (aggregate && art.kind == StepKind::Extraction) {
    const auto& agg = std::get<Aggregate>(art.goal.node);
    target = first_atom(agg.inner);
    if (agg.inner.size() > 1) art.warnings.push_back("only the first atom of the aggregate goal is extracted");
  }

  if (target) {
    std::vector<Atom> insts;
    std::set<std::string> seen;
    for (const auto& s : prior) {
      Atom inst = instantiate(*target, s);
      if (!seen.insert(atom_text(inst)).second) continue;
      if (aggregate && known(inst, kb)) continue;
      insts.push_back(std::move(inst));
    }
    if (insts.size() > ctx.options.max_instantiations) {
      art.warnings.push_back("instantiations truncated from " + std::to_string(insts.size()) + " to " +
                             std::to_string(ctx.options.max_instantiations));
      insts.resize(ctx.options.max_instantiations);
    }
    for (const auto& inst : insts) run_instantiation(inst, t, kb, ctx, art);
  }

  auto result = engine::solve_prefix(q, t, kb);
  art.solution_after = std::move(result.solutions);
  art.defects = std::move(result.defects);
  return art;
}

}  // namespace picot
