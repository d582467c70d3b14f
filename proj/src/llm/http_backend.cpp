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

#include "picot/llm/http_backend.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace picot::llm {

HttpBackend::HttpBackend(HttpConfig cfg) : cfg_(std::move(cfg)) {
  const std::size_t scheme = cfg_.base_url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("base_url needs a scheme: " + cfg_.base_url);
  const std::size_t slash = cfg_.base_url.find('/', scheme + 3);
  origin_ = cfg_.base_url.substr(0, slash);
  std::string base = slash == std::string::npos ? "" : cfg_.base_url.substr(slash);
  while (!base.empty() && base.back() == '/') base.pop_back();
  path_ = base + "/chat/completions";
  if (cfg_.attempts < 1) cfg_.attempts = 1;
}

std::string HttpBackend::request_body(const LlmRequest& req) const {
  nlohmann::json body = {
      {"model", cfg_.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt}}})},
      {"max_tokens", req.max_tokens},
  };
  if (req.decode == DecodeMode::Greedy) {
    body["temperature"] = 0.0;
  } else {
    body["temperature"] = req.temperature;
    body["top_p"] = req.top_p;
  }
  return body.dump();
}

LlmResponse HttpBackend::parse_response_body(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    LlmResponse r;
    const auto& content = j.at("choices").at(0).at("message").at("content");
    r.text = content.is_null() ? std::string() : content.get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
      const auto& u = j["usage"];
      r.usage.prompt_tokens = u.value("prompt_tokens", 0);
      r.usage.completion_tokens = u.value("completion_tokens", 0);
      if (u.contains("prompt_tokens_details") && u["prompt_tokens_details"].is_object()) {
        r.usage.cached_tokens = u["prompt_tokens_details"].value("cached_tokens", 0);
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("unusable completion body: ") + e.what());
  }
}

LlmResponse HttpBackend::complete(const LlmRequest& req) {
  const std::string body = request_body(req);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  std::string last_error;
  int delay = cfg_.backoff_ms;
  for (int attempt = 1; attempt <= cfg_.attempts; ++attempt) {
    httplib::Client cli(origin_);
    const auto secs = static_cast<time_t>(cfg_.timeout_s);
    const auto usecs = static_cast<time_t>((cfg_.timeout_s - static_cast<double>(secs)) * 1e6);
    cli.set_connection_timeout(secs, usecs);
    cli.set_read_timeout(secs, usecs);
    cli.set_write_timeout(secs, usecs);
    auto res = cli.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
    } else if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      return parse_response_body(res->body);
    }
    if (attempt < cfg_.attempts) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      delay *= 2;
    }
  }
  throw TransportError(last_error + " after " + std::to_string(cfg_.attempts) + " attempts to " + origin_ + path_);
}

}  // namespace picot::llm
