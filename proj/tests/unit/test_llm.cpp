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

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "core/error.hpp"
#include "llm/backend.hpp"

using namespace evollm;
using namespace std::chrono_literals;

namespace {

// Local HTTP server on an ephemeral port, stopped on destruction.
class TestServer {
 public:
  TestServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

BackendConfig http_config(const std::string& url) {
  BackendConfig c;
  c.kind = BackendKind::kHttp;
  c.endpoint_url = url;
  c.model_name = "test-model";
  c.timeout = 2000ms;
  c.backoff_initial = 5ms;
  c.retry_limit = 2;
  return c;
}

std::string chat_reply(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

const std::string kRows =
    "0.30: 400 500;400 500,1\n"
    "0.20: 423 510;423 510,1\n"
    "0.10: 436 520;436 520,1\n"
    "0.05: 447 530;447 530,1\n"
    "0.04: ";

}  // namespace

TEST_SUITE("llm") {
  TEST_CASE("replay serves its script once") {
    ReplayBackend b({"413 543;", "1 2;"});
    CHECK(b.complete({}) == "413 543;");
    CHECK(b.complete({}) == "1 2;");
    CHECK_THROWS_AS(b.complete({}), BackendFailure);
    CHECK(b.offline());
  }

  TEST_CASE("echo returns the last anchor") {
    EchoBestBackend b;
    CHECK(b.complete({kRows}) == "447 530;");
    CHECK_THROWS_AS(b.complete({"not a prompt"}), BackendFailure);
    const std::string raw =
        "header\n\nsolution: [0.5000, 1.0000] value: 2.0000\n"
        "solution: [0.2500, -0.5000] value: 1.0000\n\nsolution: ";
    CHECK(b.complete({raw}) == "[0.2500, -0.5000]");
  }

  TEST_CASE("extrapolate oracle") {
    CHECK(oracle_extrapolate({{400}, {410}}, 1000) == std::vector<std::int64_t>{420});
    CHECK(oracle_extrapolate({{5}, {2}}, 1000) == std::vector<std::int64_t>{0});
    CHECK(oracle_extrapolate({{990}, {999}}, 1000) == std::vector<std::int64_t>{1000});
    CHECK(oracle_extrapolate({{7, 8}}, 1000) == std::vector<std::int64_t>{7, 8});
    CHECK_THROWS_AS(oracle_extrapolate({}, 1000), BackendFailure);
    ExtrapolateBackend b(1000);
    // Anchors 423, 436, 447 in the first dimension: 2*447 - 436 = 458.
    CHECK(b.complete({kRows}) == "458 540;");
  }

  TEST_CASE("default token budget covers the widest answer") {
    const DiscretizationSpec spec;
    CHECK(default_max_tokens(2, spec) >= 10);
    CHECK(default_max_tokens(10, spec) > default_max_tokens(2, spec));
  }

  TEST_CASE("backend config validation") {
    BackendConfig c;
    CHECK_NOTHROW(c.validate());
    c.temperature_low = 2.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = BackendConfig{};
    c.retry_limit = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = BackendConfig{};
    c.kind = BackendKind::kHttp;
    CHECK_THROWS_AS(make_backend(c, {}), ConfigError);
    c = BackendConfig{};
    c.kind = BackendKind::kEchoBest;
    CHECK(make_backend(c, {})->kind() == BackendKind::kEchoBest);
  }

  TEST_CASE("chat and completion bodies") {
    BackendConfig c = http_config("http://127.0.0.1:1/v1/chat/completions");
    HttpBackend chat(c);
    CompletionRequest r{"P", 0.5, 12, {";"}};
    auto body = nlohmann::json::parse(chat.request_body(r));
    CHECK(body["model"] == "test-model");
    CHECK(body["messages"][0]["role"] == "user");
    CHECK(body["messages"][0]["content"] == "P");
    CHECK(body["temperature"] == 0.5);
    CHECK(body["max_tokens"] == 12);
    CHECK(body["stop"] == nlohmann::json::array({";"}));
    c.api_style = ApiStyle::kCompletion;
    HttpBackend completion(c);
    body = nlohmann::json::parse(completion.request_body(r));
    CHECK(body["prompt"] == "P");
    CHECK_FALSE(body.contains("messages"));
  }

  TEST_CASE("successful exchange with bearer auth") {
    TestServer ts;
    std::string seen_auth;
    ts.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
      seen_auth = req.get_header_value("Authorization");
      res.set_content(chat_reply("413 543;"), "application/json");
    });
    ::setenv("EVOLLM_TEST_TOKEN", "sekrit-123", 1);
    BackendConfig c = http_config(ts.url("/v1/chat/completions"));
    c.auth_token_env = "EVOLLM_TEST_TOKEN";
    HttpBackend b(c);
    CHECK(b.complete({"x"}) == "413 543;");
    CHECK(seen_auth == "Bearer sekrit-123");
    CHECK_NOTHROW(b.probe());
    CHECK_FALSE(b.offline());
  }

  TEST_CASE("completion style response") {
    TestServer ts;
    ts.server().Post("/v1/completions", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"choices":[{"text":"7 8;"}]})", "application/json");
    });
    BackendConfig c = http_config(ts.url("/v1/completions"));
    c.api_style = ApiStyle::kCompletion;
    HttpBackend b(c);
    CHECK(b.complete({"x"}) == "7 8;");
  }

  TEST_CASE("retries transient errors") {
    TestServer ts;
    std::atomic<int> calls{0};
    ts.server().Post("/c", [&](const httplib::Request&, httplib::Response& res) {
      const int n = ++calls;
      if (n == 1) {
        res.status = 500;
      } else if (n == 2) {
        res.status = 429;
      } else {
        res.set_content(chat_reply("1 2;"), "application/json");
      }
    });
    HttpBackend b(http_config(ts.url("/c")));
    CHECK(b.complete({"x"}) == "1 2;");
    CHECK(calls == 3);
  }

  TEST_CASE("gives up after the retry limit") {
    TestServer ts;
    std::atomic<int> calls{0};
    ts.server().Post("/c", [&](const httplib::Request&, httplib::Response& res) {
      ++calls;
      res.status = 503;
    });
    HttpBackend b(http_config(ts.url("/c")));
    CHECK_THROWS_AS(b.complete({"x"}), BackendFailure);
    CHECK(calls == 3);
  }

  TEST_CASE("client errors are not retried") {
    TestServer ts;
    std::atomic<int> calls{0};
    ts.server().Post("/c", [&](const httplib::Request&, httplib::Response& res) {
      ++calls;
      res.status = 400;
    });
    HttpBackend b(http_config(ts.url("/c")));
    CHECK_THROWS_AS(b.complete({"x"}), BackendFailure);
    CHECK(calls == 1);
  }

  TEST_CASE("malformed response body") {
    TestServer ts;
    ts.server().Post("/c", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"unexpected":true})", "application/json");
    });
    HttpBackend b(http_config(ts.url("/c")));
    CHECK_THROWS_AS(b.complete({"x"}), BackendFailure);
  }

  TEST_CASE("slow server is bounded by the deadline") {
    TestServer ts;
    ts.server().Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(1500ms);
      res.set_content(chat_reply("1;"), "application/json");
    });
    BackendConfig c = http_config(ts.url("/slow"));
    c.timeout = 200ms;
    c.retry_limit = 1;
    HttpBackend b(c);
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(b.complete({"x"}), BackendFailure);
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    // Bound: timeout * (retries + 1) plus scheduling slack.
    CHECK(elapsed < 1000ms);
  }

  TEST_CASE("missing token variable") {
    ::unsetenv("EVOLLM_TEST_MISSING_TOKEN");
    BackendConfig c = http_config("http://127.0.0.1:1/c");
    c.auth_token_env = "EVOLLM_TEST_MISSING_TOKEN";
    try {
      HttpBackend b(c);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("EVOLLM_TEST_MISSING_TOKEN") != std::string::npos);
    }
  }

  TEST_CASE("token never appears in errors") {
    TestServer ts;
    ts.server().Post("/c", [](const httplib::Request&, httplib::Response& res) {
      res.status = 401;
      res.set_content("bad token", "text/plain");
    });
    ::setenv("EVOLLM_TEST_TOKEN", "sekrit-456", 1);
    BackendConfig c = http_config(ts.url("/c"));
    c.auth_token_env = "EVOLLM_TEST_TOKEN";
    HttpBackend b(c);
    try {
      b.complete({"x"});
      FAIL("expected BackendFailure");
    } catch (const BackendFailure& e) {
      CHECK(std::string(e.what()).find("sekrit-456") == std::string::npos);
    }
    CHECK(b.request_body({"x"}).find("sekrit-456") == std::string::npos);
  }

  TEST_CASE("probe of an unreachable endpoint") {
    int port = 0;
    {
      httplib::Server s;
      port = s.bind_to_any_port("127.0.0.1");
    }
    BackendConfig c = http_config("http://127.0.0.1:" + std::to_string(port) + "/c");
    c.timeout = 300ms;
    HttpBackend b(c);
    CHECK_THROWS_AS(b.probe(), ConfigError);
    CHECK_THROWS_AS(b.complete({"x"}), BackendFailure);
  }
}
