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

#include "picot/cli/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "picot/config.hpp"
#include "picot/evalkit.hpp"
#include "picot/llm/http_backend.hpp"
#include "picot/llm/scripted_backend.hpp"
#include "picot/pipeline/final_prompt.hpp"
#include "picot/pipeline/record_json.hpp"
#include "picot/retrieval/chunking.hpp"

namespace picot::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad user input; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag values. A flag only overrides the config when it was given.
struct Flags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string mode;
  std::size_t top_k = 0;
  std::string backend;
  std::string script;
  std::vector<std::string> ablate;
  std::size_t parallel = 0;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::string index;
  std::string corpus;

  std::vector<std::pair<CLI::Option*, std::string>> keyed;  // option -> config key
  CLI::Option* ablate_opt = nullptr;
};

void add_config_flags(CLI::App& cmd, Flags& f, bool pipeline_flags) {
  const Config defaults;
  cmd.add_option("--config", f.config_path, "config file (key = value)")->check(CLI::ExistingFile);
  cmd.add_option("--set", f.overrides, "override a config key, KEY=VALUE (repeatable)");
  auto keyed = [&](CLI::Option* opt, const std::string& key) {
    opt->default_str(defaults.get(key));
    f.keyed.emplace_back(opt, key);
  };
  keyed(cmd.add_option("--corpus", f.corpus, "corpus JSONL"), "data.corpus");
  keyed(cmd.add_option("--index", f.index, "BM25 index file"), "data.index");
  if (!pipeline_flags) return;
  keyed(cmd.add_option("--mode", f.mode, "evidence mode")->check(CLI::IsMember({"rag", "incontext"})), "mode");
  keyed(cmd.add_option("--top-k", f.top_k, "passages per retrieval"), "retriever.top_k");
  keyed(cmd.add_option("--backend", f.backend, "LLM backend")->check(CLI::IsMember({"http", "script"})),
        "llm.backend");
  keyed(cmd.add_option("--script", f.script, "scripted responses (JSONL)"), "script.path");
  f.ablate_opt = cmd.add_option("--ablate", f.ablate, "drop a final-prompt component (repeatable)")
                     ->check(CLI::IsMember({"passages", "notes", "prolog_answer"}))
                     ->default_str("none");
  keyed(cmd.add_option("--parallel", f.parallel, "worker threads"), "run.parallel");
  keyed(cmd.add_option("--sample", f.sample, "random subset size, 0 for all"), "run.sample");
  keyed(cmd.add_option("--seed", f.seed, "sampling seed"), "run.seed");
}

Config resolve_config(const Flags& f) {
  Config cfg;
  if (!f.config_path.empty()) cfg.merge_file(f.config_path);
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got " + kv);
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& [opt, key] : f.keyed) {
    if (opt->count() > 0) cfg.set(key, opt->as<std::string>());
  }
  if (f.ablate_opt && f.ablate_opt->count() > 0) {
    for (const auto& a : f.ablate) cfg.set("ablation." + a, "true");
  }
  return cfg;
}

// Index and corpus chunks, loaded once per command.
struct Loaded {
  std::optional<retrieval::Bm25Index> index;
  std::vector<retrieval::Chunk> corpus_chunks;
  std::unique_ptr<llm::LlmBackend> backend;
  pipeline::Resources resources() const {
    pipeline::Resources r;
    r.index = index ? &*index : nullptr;
    r.corpus = corpus_chunks.empty() && index ? &index->chunks() : &corpus_chunks;
    r.llm = backend.get();
    return r;
  }
};

Loaded load_resources(const Config& cfg, std::ostream& err) {
  Loaded l;
  const std::string& index_path = cfg.get("data.index");
  const std::string& corpus_path = cfg.get("data.corpus");
  if (!corpus_path.empty()) {
    auto corpus = retrieval::ingest_corpus(fs::path(corpus_path), cfg.get_unsigned("retriever.chunk_size"));
    for (const auto& issue : corpus.issues) err << "warning: corpus line " << issue.line << ": " << issue.message << "\n";
    l.corpus_chunks = std::move(corpus.chunks);
  }
  if (!index_path.empty()) {
    l.index = retrieval::Bm25Index::load(index_path);
    l.index->set_params(cfg.bm25_params());
  } else if (!l.corpus_chunks.empty()) {
    l.index = retrieval::Bm25Index::build(l.corpus_chunks, cfg.bm25_params());
  }
  if (!l.index && l.corpus_chunks.empty()) throw InputError("no evidence source: give --index or --corpus");

  if (cfg.get("llm.backend") == "script") {
    if (cfg.get("script.path").empty()) throw InputError("script backend needs --script");
    l.backend = std::make_unique<llm::ScriptedBackend>(
        llm::ScriptedBackend::load(fs::path(cfg.get("script.path")), cfg.get_bool("script.strict")));
  } else {
    l.backend = std::make_unique<llm::HttpBackend>(cfg.http_config());
  }
  return l;
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << data;
}

std::vector<evalkit::ScoreRow> rows_from_records(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open records " + path.string());
  std::vector<evalkit::ScoreRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(pipeline::score_row_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("records line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

int cmd_index(const Config& cfg, const std::string& out_path, std::ostream& out) {
  if (cfg.get("data.corpus").empty()) throw InputError("index needs a corpus");
  const auto corpus = retrieval::ingest_corpus(fs::path(cfg.get("data.corpus")),
                                               cfg.get_unsigned("retriever.chunk_size"));
  const std::size_t chunks = corpus.chunks.size();
  auto index = retrieval::Bm25Index::build(corpus.chunks, cfg.bm25_params());
  index.save(out_path);
  out << "indexed " << corpus.documents.size() << " docs, " << chunks << " chunks";
  if (!corpus.issues.empty()) out << ", skipped " << corpus.issues.size() << " lines";
  out << " -> " << out_path << "\n";
  return kExitOk;
}

struct AskFlags {
  std::string question;
  std::string id = "ask";
  std::vector<std::string> gold;
  bool trace = false;
  bool show_prompt = false;
};

int cmd_ask(const Config& cfg, const AskFlags& a, std::ostream& out, std::ostream& err) {
  const auto pcfg = cfg.pipeline_config();
  const Loaded loaded = load_resources(cfg, err);
  evalkit::QaExample ex{a.id, a.question, a.gold, std::nullopt};
  const auto rec = pipeline::answer_question(ex, pcfg, loaded.resources());
  if (a.trace) out << format_trace(rec) << "\n";
  if (a.show_prompt) out << rec.final_prompt << "\n";
  if (rec.aborted) {
    err << "error: " << rec.abort_reason << "\n";
    return kExitBackend;
  }
  out << rec.final_answer << "\n";
  return kExitOk;
}

int cmd_run(const Config& cfg, const std::string& dataset, const std::string& out_dir, std::string run_id,
            std::ostream& out, std::ostream& err) {
  auto examples = evalkit::load_dataset(fs::path(dataset));
  if (const std::size_t n = cfg.get_unsigned("run.sample"); n > 0) {
    std::vector<evalkit::QaExample> picked;
    for (std::size_t i : evalkit::sample_indices(examples.size(), n, cfg.get_unsigned("run.seed"))) {
      picked.push_back(examples[i]);
    }
    examples = std::move(picked);
  }
  const auto pcfg = cfg.pipeline_config();
  const Loaded loaded = load_resources(cfg, err);
  const auto records =
      pipeline::run_dataset(examples, pcfg, loaded.resources(), std::max<std::size_t>(1, cfg.get_unsigned("run.parallel")));

  if (run_id.empty()) run_id = fs::path(dataset).stem().string();
  const fs::path dir = fs::path(out_dir) / run_id;
  fs::create_directories(dir);
  std::string lines;
  std::vector<evalkit::ScoreRow> rows;
  for (const auto& r : records) {
    lines += pipeline::record_to_line(r) + "\n";
    rows.push_back(pipeline::score_record(r));
    if (r.aborted) err << "warning: " << r.question_id << " aborted: " << r.abort_reason << "\n";
  }
  write_file(dir / "records.jsonl", lines);
  write_file(dir / "config.toml", cfg.dump());
  out << "wrote " << records.size() << " records to " << (dir / "records.jsonl").string() << "\n";
  try {
    const auto report = evalkit::aggregate(rows);
    const std::string text = evalkit::format_report(report);
    write_file(dir / "report.txt", text);
    write_file(dir / "report.json", evalkit::report_json(report, rows).dump(2) + "\n");
    out << text;
  } catch (const std::invalid_argument&) {
    err << "warning: no scorable records, report skipped\n";
  }
  return records.empty() ? kExitInput : kExitOk;
}

int cmd_report(const std::string& records_path, bool as_json, std::ostream& out) {
  const auto rows = rows_from_records(records_path);
  if (rows.empty()) throw InputError("no records in " + records_path);
  evalkit::AggregateReport report;
  try {
    report = evalkit::aggregate(rows);
  } catch (const std::invalid_argument&) {
    throw InputError("every record in " + records_path + " is aborted");
  }
  if (as_json) {
    out << evalkit::report_json(report, rows).dump(2) << "\n";
  } else {
    out << evalkit::format_report(report);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prolog-guided multi-hop question answering"};
  app.name("picot");
  app.require_subcommand(1);

  Flags index_flags;
  std::string index_out = "picot.idx";
  auto* index_cmd = app.add_subcommand("index", "build a BM25 index from a corpus");
  add_config_flags(*index_cmd, index_flags, false);
  index_cmd->add_option("corpus_path", index_flags.corpus, "corpus JSONL");
  index_cmd->add_option("--out", index_out, "index file")->capture_default_str();

  Flags ask_flags;
  AskFlags ask;
  auto* ask_cmd = app.add_subcommand("ask", "answer one question");
  add_config_flags(*ask_cmd, ask_flags, true);
  ask_cmd->add_option("question", ask.question, "question text")->required();
  ask_cmd->add_option("--id", ask.id, "question id")->capture_default_str();
  ask_cmd->add_option("--gold", ask.gold, "gold answer (repeatable)");
  ask_cmd->add_flag("--trace", ask.trace, "print the execution trace");
  ask_cmd->add_flag("--show-prompt", ask.show_prompt, "print the final prompt");

  Flags run_flags;
  std::string dataset;
  std::string run_out = "runs";
  std::string run_id;
  auto* run_cmd = app.add_subcommand("run", "answer every question of a dataset");
  add_config_flags(*run_cmd, run_flags, true);
  run_cmd->add_option("dataset", dataset, "dataset JSONL")->required();
  run_cmd->add_option("--out", run_out, "output root")->capture_default_str();
  run_cmd->add_option("--run-id", run_id, "run directory name (default: dataset file stem)");

  std::string records_path;
  bool report_json = false;
  auto* report_cmd = app.add_subcommand("report", "aggregate a records.jsonl file");
  report_cmd->add_option("records", records_path, "records.jsonl")->required();
  report_cmd->add_flag("--json", report_json, "print the JSON summary");

  Flags config_flags;
  auto* config_cmd = app.add_subcommand("config", "print the merged configuration");
  add_config_flags(*config_cmd, config_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*index_cmd) {
      if (index_flags.corpus.empty() && index_flags.config_path.empty()) throw InputError("index needs a corpus path");
      Config cfg = resolve_config(index_flags);
      if (!index_flags.corpus.empty()) cfg.set("data.corpus", index_flags.corpus);
      return cmd_index(cfg, index_out, out);
    }
    if (*ask_cmd) return cmd_ask(resolve_config(ask_flags), ask, out, err);
    if (*run_cmd) return cmd_run(resolve_config(run_flags), dataset, run_out, run_id, out, err);
    if (*report_cmd) return cmd_report(records_path, report_json, out);
    if (*config_cmd) {
      out << resolve_config(config_flags).dump();
      return kExitOk;
    }
  } catch (const llm::TransportError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    // Config, ingest, index, dataset and script problems are input errors.
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace picot::cli
