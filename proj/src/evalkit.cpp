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

#include "picot/evalkit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace picot::evalkit {

std::vector<QaExample> load_dataset(std::istream& in) {
  std::vector<QaExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      QaExample ex;
      ex.id = j.at("id").get<std::string>();
      ex.question = j.at("question").get<std::string>();
      ex.gold_answers = j.at("answers").get<std::vector<std::string>>();
      if (ex.gold_answers.empty()) throw std::invalid_argument("answers must not be empty");
      if (j.contains("gold_docs") && !j.at("gold_docs").is_null()) {
        ex.gold_docs = j.at("gold_docs").get<std::vector<std::string>>();
      }
      out.push_back(std::move(ex));
    } catch (const std::exception& e) {
      throw DatasetError("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<QaExample> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset " + path.string());
  return load_dataset(in);
}

std::vector<std::size_t> sample_indices(std::size_t size, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  if (n >= size) return idx;
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates with explicit draws keeps the subset identical
  // across standard library implementations.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double f1_single(const std::string& pred, const std::string& gold) {
  const auto p = split_ws(normalize_answer(pred));
  const auto g = split_ws(normalize_answer(gold));
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : g) ++counts[t];
  int common = 0;
  for (const auto& t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2 * precision * recall / (precision + recall);
}

}  // namespace

std::string normalize_answer(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) continue;
    lower.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
  }
  std::string out;
  for (const auto& w : split_ws(lower)) {
    if (w == "a" || w == "an" || w == "the") continue;
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

int exact_match(std::string_view pred, const std::vector<std::string>& golds) {
  const std::string p = normalize_answer(pred);
  return std::any_of(golds.begin(), golds.end(), [&](const std::string& g) { return normalize_answer(g) == p; })
             ? 1
             : 0;
}

double token_f1(std::string_view pred, const std::vector<std::string>& golds) {
  double best = 0.0;
  for (const auto& g : golds) best = std::max(best, f1_single(std::string(pred), g));
  return best;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

Stat stat(const std::vector<double>& xs) { return {mean(xs), standard_error(xs)}; }

AggregateReport aggregate(const std::vector<ScoreRow>& rows) {
  AggregateReport r;
  std::vector<double> em, f1, rc, lc, pt, ct, cached;
  for (const auto& row : rows) {
    if (row.aborted) {
      ++r.aborted;
      continue;
    }
    em.push_back(row.em);
    f1.push_back(row.f1);
    rc.push_back(row.retrieval_calls);
    lc.push_back(row.llm_calls);
    pt.push_back(row.prompt_tokens);
    ct.push_back(row.completion_tokens);
    cached.push_back(row.cached_tokens);
    ++r.categories[row.error_category];
  }
  r.n = em.size();
  if (r.n == 0) throw std::invalid_argument("no scorable rows");
  r.em = stat(em);
  r.f1 = stat(f1);
  r.retrieval_calls = stat(rc);
  r.llm_calls = stat(lc);
  r.prompt_tokens = stat(pt);
  r.completion_tokens = stat(ct);
  r.cached_tokens = stat(cached);
  return r;
}

namespace {

std::string fmt(const char* f, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string pct(std::size_t k, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", n ? 100.0 * static_cast<double>(k) / static_cast<double>(n) : 0.0);
  return buf;
}

}  // namespace

std::string format_report(const AggregateReport& r) {
  std::ostringstream out;
  out << "questions scored: " << r.n << "  aborted: " << r.aborted << "\n\n";
  out << "metric              mean +- se\n";
  out << "EM (x100)           " << fmt("%.1f +- %.1f", 100 * r.em.mean, 100 * r.em.se) << "\n";
  out << "F1 (x100)           " << fmt("%.1f +- %.1f", 100 * r.f1.mean, 100 * r.f1.se) << "\n";
  out << "BM25 queries        " << fmt("%.2f +- %.2f", r.retrieval_calls.mean, r.retrieval_calls.se) << "\n";
  out << "LLM calls           " << fmt("%.2f +- %.2f", r.llm_calls.mean, r.llm_calls.se) << "\n";
  out << "prompt tokens (k)   " << fmt("%.2f +- %.2f", r.prompt_tokens.mean / 1000, r.prompt_tokens.se / 1000);
  out << fmt(" (cached %.2f +- %.2f)", r.cached_tokens.mean / 1000, r.cached_tokens.se / 1000) << "\n";
  out << "completion tok (k)  " << fmt("%.2f +- %.2f", r.completion_tokens.mean / 1000, r.completion_tokens.se / 1000)
      << "\n\n";

  auto count = [&](const char* name) {
    auto it = r.categories.find(name);
    return it == r.categories.end() ? std::size_t{0} : it->second;
  };
  const std::size_t qp = count("QueryParseError");
  const std::size_t ep = count("ExecutionParseError");
  const std::size_t ip = count("IntermediatePredicateExistence");
  const std::size_t fp = count("FinalPredicateExistence");
  out << "error type                              share\n";
  out << "Parsing errors:\n";
  out << "  Prolog query parsing error            " << pct(qp, r.n) << "\n";
  out << "  Execution parsing error               " << pct(ep, r.n) << "\n";
  out << "Execution errors:\n";
  out << "  Intermediate predicate existence      " << pct(ip, r.n) << "\n";
  out << "  Final predicate existence             " << pct(fp, r.n) << "\n";
  out << "Total errors                            " << pct(qp + ep + ip + fp, r.n) << "\n";
  return out.str();
}

nlohmann::json report_json(const AggregateReport& r, const std::vector<ScoreRow>& rows) {
  auto s = [](const Stat& x) { return nlohmann::json{{"mean", x.mean}, {"se", x.se}}; };
  nlohmann::json per = nlohmann::json::array();
  for (const auto& row : rows) {
    per.push_back({{"id", row.id},
                   {"em", row.em},
                   {"f1", row.f1},
                   {"error_category", row.error_category},
                   {"aborted", row.aborted},
                   {"llm_calls", row.llm_calls},
                   {"retrieval_calls", row.retrieval_calls}});
  }
  return {{"n", r.n},
          {"aborted", r.aborted},
          {"em", s(r.em)},
          {"f1", s(r.f1)},
          {"retrieval_calls", s(r.retrieval_calls)},
          {"llm_calls", s(r.llm_calls)},
          {"prompt_tokens", s(r.prompt_tokens)},
          {"completion_tokens", s(r.completion_tokens)},
          {"cached_tokens", s(r.cached_tokens)},
          {"error_categories", r.categories},
          {"rows", per}};
}

}  // namespace picot::evalkit
