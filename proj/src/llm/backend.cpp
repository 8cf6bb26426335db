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

#include "llm/backend.hpp"

#include "core/error.hpp"

namespace evollm {

int default_max_tokens(std::size_t width, const DiscretizationSpec& spec) {
  return static_cast<int>(width) * (spec.digits() + 1) + 4;
}

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHttp: return "http";
    case BackendKind::kReplay: return "replay";
    case BackendKind::kExtrapolate: return "extrapolate";
    case BackendKind::kEchoBest: return "echo_best";
  }
  return "?";
}

std::optional<BackendKind> parse_backend_kind(std::string_view s) {
  if (s == "http") return BackendKind::kHttp;
  if (s == "replay") return BackendKind::kReplay;
  if (s == "extrapolate") return BackendKind::kExtrapolate;
  if (s == "echo_best") return BackendKind::kEchoBest;
  return std::nullopt;
}

void BackendConfig::validate() const {
  if (kind == BackendKind::kHttp) {
    if (endpoint_url.empty()) throw ConfigError("http backend requires endpoint_url");
    if (model_name.empty()) throw ConfigError("http backend requires model_name");
  }
  if (!(temperature_low >= 0.0) || !(temperature_low <= temperature_high)) {
    throw ConfigError("temperature range must satisfy 0 <= low <= high");
  }
  if (retry_limit < 0) throw ConfigError("retry_limit must be non-negative");
  if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const DiscretizationSpec& spec) {
  config.validate();
  switch (config.kind) {
    case BackendKind::kHttp: return std::make_unique<HttpBackend>(config);
    case BackendKind::kReplay: return std::make_unique<ReplayBackend>(config.replay_script);
    case BackendKind::kExtrapolate: return std::make_unique<ExtrapolateBackend>(spec.resolution);
    case BackendKind::kEchoBest: return std::make_unique<EchoBestBackend>();
  }
  throw ConfigError("unknown backend kind");
}

}  // namespace evollm
