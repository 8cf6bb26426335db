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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/types.hpp"
#include "llm/backend.hpp"
#include "strategies/strategy.hpp"
#include "tasks/problem.hpp"

namespace evollm {

/// Settings of the instruction-dataset exporter.
struct FinetuneConfig {
  /// Task names the teacher runs on; each uses the experiment's task
  /// settings with the name replaced. Empty means the experiment task only.
  std::vector<std::string> tasks;
  std::string output = "finetune.jsonl";
};

struct ExperimentConfig {
  TaskConfig task;
  StrategyConfig strategy;
  EvalBudget budget{20, 5};
  std::vector<std::uint64_t> seeds{0};
  BackendConfig backend;
  std::string output_dir = "runs";
  /// Seeds run concurrently, each with its own state and log file.
  std::size_t parallel_seeds = 1;
  FinetuneConfig finetune;

  /// Throws ConfigError.
  void validate() const;
};

/// Every field, with defaults materialized and unset options as null.
nlohmann::json to_json(const ExperimentConfig& config);
/// Missing fields take defaults; unknown fields are a ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Sets the field at dot-separated `path` of a materialized config document.
/// `value` is read as JSON when possible and as a bare string otherwise.
/// Throws ConfigError when the path does not name an existing field.
void apply_override(nlohmann::json& doc, std::string_view path, std::string_view value);

/// Parses `path=value` and applies it.
void apply_assignment(nlohmann::json& doc, std::string_view assignment);

}  // namespace evollm
