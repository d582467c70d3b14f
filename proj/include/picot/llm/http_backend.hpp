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

#include "picot/llm/backend.hpp"

namespace picot::llm {

struct HttpConfig {
  std::string base_url = "http://localhost:8000/v1";
  std::string model;
  std::string api_key;  // sent as a bearer token when non-empty
  double timeout_s = 300.0;
  int attempts = 3;
  int backoff_ms = 500;  // doubled after each failed attempt
};

// Chat-completions client: POST {base_url}/chat/completions.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(HttpConfig cfg);
  LlmResponse complete(const LlmRequest& req) override;

  // Request body for req, exposed for tests.
  std::string request_body(const LlmRequest& req) const;
  // Parses a response body; throws TransportError when it is unusable.
  static LlmResponse parse_response_body(const std::string& body);

 private:
  HttpConfig cfg_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // base path + /chat/completions
};

}  // namespace picot::llm
