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

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codec/codec.hpp"

namespace evollm {

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.7;
  int max_tokens = 32;
  std::vector<std::string> stop = {";", "\n"};
};

/// Token budget large enough for `width` bins of `spec` plus separators.
int default_max_tokens(std::size_t width, const DiscretizationSpec& spec);

enum class BackendKind { kHttp, kReplay, kExtrapolate, kEchoBest };
/// Request body shape of the HTTP backend.
enum class ApiStyle { kChat, kCompletion };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend_kind(std::string_view s);

struct BackendConfig {
  BackendKind kind = BackendKind::kExtrapolate;
  std::string endpoint_url;
  std::string model_name;
  /// Name of the environment variable holding the bearer token. The token
  /// itself never enters configs or logs.
  std::string auth_token_env;
  ApiStyle api_style = ApiStyle::kChat;
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds backoff_initial{250};
  double temperature_low = 0.3;
  double temperature_high = 1.0;
  int retry_limit = 3;
  /// Canned completions for the replay backend, served in order.
  std::vector<std::string> replay_script;
  /// Check connectivity before a run starts (HTTP only).
  bool probe_on_start = true;

  void validate() const;
};

/// A text-completion service. Implementations are safe for concurrent
/// complete() calls.
class Backend {
 public:
  virtual ~Backend() = default;
  /// Returns the raw completion or throws BackendFailure.
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual BackendKind kind() const noexcept = 0;
  /// Offline backends are pure functions of their input.
  virtual bool offline() const noexcept { return true; }
};

/// Serves a fixed script, then fails.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::vector<std::string> script);
  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::kReplay; }

 private:
  std::mutex mutex_;
  std::vector<std::string> script_;
  std::size_t cursor_ = 0;
};

/// Echoes the anchor of the last prompt row (the incumbent). With the
/// default context settings this reproduces Gaussian hill climbing.
class EchoBestBackend final : public Backend {
 public:
  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::kEchoBest; }
};

/// Linear extrapolation of the last two row anchors, per dimension.
class ExtrapolateBackend final : public Backend {
 public:
  explicit ExtrapolateBackend(std::int64_t resolution) : resolution_(resolution) {}
  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::kExtrapolate; }

 private:
  std::int64_t resolution_;
};

/// 2*last - previous per dimension, clamped to [0, resolution]; a single
/// anchor is echoed. Throws BackendFailure on an empty list.
std::vector<std::int64_t> oracle_extrapolate(
    const std::vector<std::vector<std::int64_t>>& anchors,
    std::int64_t resolution);

/// JSON-over-HTTP chat/completion client with bounded retries.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);
  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::kHttp; }
  bool offline() const noexcept override { return false; }

  /// Throws ConfigError when the endpoint cannot be reached at all.
  void probe() const;
  /// Request body as sent on the wire (exposed for tests).
  std::string request_body(const CompletionRequest& request) const;

 private:
  BackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::string token_;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const DiscretizationSpec& spec);

}  // namespace evollm
