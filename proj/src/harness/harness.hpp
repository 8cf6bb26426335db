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
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness/config.hpp"

namespace evollm {

/// Build identifier written into every log header.
std::string code_version();

struct RunResult {
  std::uint64_t seed = 0;
  std::filesystem::path log_path;
  std::size_t generations = 0;
  /// Best fitness after each generation.
  std::vector<double> best_curve;
  double best_fitness = 0.0;
  std::size_t queries = 0;
  std::size_t fallbacks = 0;
};

/// One seed, logged to `log` as line-delimited JSON: a header line, one
/// record per generation and a closing summary. `backend` may be null for
/// strategies that do not query a model.
RunResult run_seed(const ExperimentConfig& config, std::uint64_t seed,
                   std::shared_ptr<Backend> backend, std::ostream& log);

/// Validates the config (including the HTTP reachability probe) and runs
/// every seed into `<output_dir>/seed_<s>.jsonl`. Throws ConfigError before
/// any run starts when something does not resolve.
std::vector<RunResult> run_experiment(const ExperimentConfig& config);

/// Log file name for a seed.
std::string log_file_name(std::uint64_t seed);

struct SummaryRow {
  std::string task;
  std::string strategy;
  std::size_t generation = 0;
  double mean_best = 0.0;
  double stderr_best = 0.0;
  std::size_t n_seeds = 0;
};

/// Per-generation mean and standard error (sample std / sqrt(n), 0 for one
/// seed) of best-so-far fitness. Throws AggregationError on mismatched
/// budgets, tasks or strategies.
std::vector<SummaryRow> aggregate_logs(const std::vector<std::filesystem::path>& logs);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes summary.csv next to every group of seed logs under `dir`. Returns
/// the written paths.
std::vector<std::filesystem::path> aggregate_directory(const std::filesystem::path& dir);

struct AblationAxis {
  std::string path;
  std::vector<std::string> values;
};

/// Parses `path=v1,v2,...`.
AblationAxis parse_axis(std::string_view spec);

struct LabeledConfig {
  std::string label;
  nlohmann::json config;
};

/// Cartesian product of the axes over `base` (a materialized config
/// document), first axis varying slowest. No axes yields the base alone,
/// labelled "base". Unknown paths throw ConfigError.
std::vector<LabeledConfig> ablation_grid(const nlohmann::json& base,
                                         const std::vector<AblationAxis>& axes);

/// Runs each grid point into `<output_dir>/<label>`.
std::vector<LabeledConfig> run_ablation(const ExperimentConfig& base,
                                        const std::vector<AblationAxis>& axes);

struct FinetuneRecord {
  std::string input;
  std::string target;
  std::string task;
  std::uint64_t seed = 0;
  std::size_t generation = 0;
  nlohmann::json to_json() const;
};

/// Runs the teacher strategy on every configured task and seed; after each
/// post-warm-up tell, pairs the rendered prompt (one per dimension block)
/// with the teacher's new mean encoded as bins.
std::vector<FinetuneRecord> generate_finetune_records(const ExperimentConfig& config);

/// Writes the records as JSONL plus `<out>.meta.json`. Warns when empty.
/// Returns the record count.
std::size_t export_finetune_dataset(const ExperimentConfig& config,
                                    const std::filesystem::path& out);

/// Records expected from the counting rule for `config`.
std::size_t expected_finetune_records(const ExperimentConfig& config);

/// Summary statistics of a dataset file (record counts, lengths, target
/// movement).
nlohmann::json dataset_stats(const std::filesystem::path& dataset);

struct PromptCheck {
  std::size_t checked = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Checks a prompt text file, or every record of a JSONL dataset, against
/// the prompt grammar and the proposal format.
PromptCheck validate_prompt_file(const std::filesystem::path& path);

struct ReportOptions {
  bool plots = false;
};

/// Writes `<dir>/report/curves/*.csv`, optional SVG plots and a manifest with
/// SHA-256 hashes of every emitted file. Throws ReportError when `dir` holds
/// no summaries.
nlohmann::json write_report(const std::filesystem::path& dir,
                            const ReportOptions& options = {});

}  // namespace evollm
