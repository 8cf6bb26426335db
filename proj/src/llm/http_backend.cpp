// Copyright 2026 The evollm Authors
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

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <future>
#include <json.hpp>
#include <thread>

#include "core/error.hpp"
#include "llm/backend.hpp"

namespace evollm {
namespace {

using Clock = std::chrono::steady_clock;
using std::chrono::milliseconds;

struct Attempt {
  bool retriable = false;
  std::string error;
  std::optional<std::string> text;
};

std::string extract_text(const std::string& body, ApiStyle style) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw BackendFailure("service returned a non-JSON body");
  }
  try {
    const auto& choice = doc.at("choices").at(0);
    if (style == ApiStyle::kChat) {
      return choice.at("message").at("content").get<std::string>();
    }
    return choice.at("text").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw BackendFailure("service response lacks choices[0] text");
  }
}

}  // namespace

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  config_.validate();
  const std::string& url = config_.endpoint_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint_url must start with http:// or https://");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported endpoint scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (!config_.auth_token_env.empty()) {
    const char* token = std::getenv(config_.auth_token_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw ConfigError("environment variable " + config_.auth_token_env +
                        " holding the backend token is not set");
    }
    token_ = token;
  }
}

std::string HttpBackend::request_body(const CompletionRequest& request) const {
  nlohmann::json body;
  body["model"] = config_.model_name;
  if (config_.api_style == ApiStyle::kChat) {
    body["messages"] = nlohmann::json::array(
        {{{"role", "user"}, {"content", request.prompt}}});
  } else {
    body["prompt"] = request.prompt;
  }
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  body["stop"] = request.stop;
  return body.dump();
}

std::string HttpBackend::complete(const CompletionRequest& request) {
  const std::string body = request_body(request);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  const auto deadline = Clock::now() + config_.timeout * (config_.retry_limit + 1);
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= config_.retry_limit; ++attempt) {
    const auto remaining = std::chrono::duration_cast<milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) break;
    const milliseconds budget = std::min(config_.timeout, remaining);

    auto client = std::make_shared<httplib::Client>(scheme_host_port_);
    client->set_connection_timeout(budget);
    client->set_read_timeout(budget);
    client->set_write_timeout(budget);
    auto pending = std::async(std::launch::async, [client, headers, body, this] {
      Attempt a;
      auto res = client->Post(path_, headers, body, "application/json");
      if (!res) {
        a.retriable = true;
        a.error = "transport error: " + httplib::to_string(res.error());
      } else if (res->status >= 200 && res->status < 300) {
        a.text = res->body;
      } else {
        a.retriable = res->status == 429 || res->status >= 500;
        a.error = "HTTP status " + std::to_string(res->status);
      }
      return a;
    });
    // Hard per-attempt bound: a slow or trickling server is cut off.
    if (pending.wait_for(budget) == std::future_status::timeout) {
      client->stop();
    }
    Attempt result = pending.get();
    if (result.text) return extract_text(*result.text, config_.api_style);
    last_error = result.error.empty() ? "request timed out" : result.error;
    if (!result.retriable) throw BackendFailure(last_error);

    if (attempt < config_.retry_limit) {
      const milliseconds delay{config_.backoff_initial.count() << std::min(attempt, 20)};
      const auto left = std::chrono::duration_cast<milliseconds>(deadline - Clock::now());
      std::this_thread::sleep_for(std::clamp(delay, milliseconds(0), std::max(left, milliseconds(0))));
    }
  }
  throw BackendFailure("backend unavailable after " +
                       std::to_string(config_.retry_limit + 1) +
                       " attempts: " + last_error);
}

void HttpBackend::probe() const {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  // Any HTTP answer (even 404/405) proves the endpoint is reachable.
  auto res = client.Get(path_);
  if (!res) {
    throw ConfigError("backend endpoint " + scheme_host_port_ +
                      " is unreachable: " + httplib::to_string(res.error()));
  }
}

}  // namespace evollm
