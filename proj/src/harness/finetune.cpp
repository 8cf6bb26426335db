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

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "codec/codec.hpp"
#include "core/error.hpp"
#include "harness/harness.hpp"
#include "prompt/grammar.hpp"
#include "prompt/prompt.hpp"

namespace evollm {

namespace fs = std::filesystem;
using nlohmann::json;

json FinetuneRecord::to_json() const {
  return {{"input", input}, {"target", target}, {"task", task}, {"seed", seed},
          {"generation", generation}};
}

namespace {

std::vector<TaskConfig> teacher_tasks(const ExperimentConfig& config) {
  if (config.finetune.tasks.empty()) return {config.task};
  std::vector<TaskConfig> out;
  for (const std::string& name : config.finetune.tasks) {
    TaskConfig t = config.task;
    t.name = name;
    out.push_back(std::move(t));
  }
  return out;
}

void check_teacher(const ExperimentConfig& config) {
  if (config.strategy.name == "evollm") {
    throw ConfigError("the fine-tune teacher must be a baseline strategy, not evollm");
  }
  if (config.strategy.prompt.representation != Representation::kDiscretized) {
    throw ConfigError("fine-tune export needs the discretized prompt representation");
  }
}

std::size_t block_count(std::size_t dims, std::size_t block_size) {
  const std::size_t b = block_size == 0 ? dims : block_size;
  return (dims + b - 1) / b;
}

}  // namespace

std::size_t expected_finetune_records(const ExperimentConfig& config) {
  const std::size_t g = config.budget.max_generations;
  const std::size_t w = config.strategy.resolved_warmup();
  const std::size_t per_run = g > w ? g - w : 0;
  std::size_t total = 0;
  for (const TaskConfig& t : teacher_tasks(config)) {
    const std::size_t dims = make_problem(t)->dims();
    total += per_run * config.seeds.size() * block_count(dims, config.strategy.block_size);
  }
  return total;
}

std::vector<FinetuneRecord> generate_finetune_records(const ExperimentConfig& config) {
  check_teacher(config);
  config.validate();
  const PromptConfig& pc = config.strategy.prompt;
  const DiscretizationSpec& spec = config.strategy.codec;
  std::vector<FinetuneRecord> records;
  for (const TaskConfig& task : teacher_tasks(config)) {
    std::unique_ptr<Problem> problem = make_problem(task);
    const std::vector<DimBlock> blocks =
        partition_blocks(problem->dims(), config.strategy.block_size == 0
                                              ? problem->dims()
                                              : config.strategy.block_size);
    for (std::uint64_t seed : config.seeds) {
      std::unique_ptr<Strategy> teacher = make_strategy(
          config.strategy, problem->bounds(), config.budget.population_size, seed);
      Rng prompt_rng(mix_seed(seed, "prompt"));
      for (std::size_t g = 0; g < config.budget.max_generations; ++g) {
        const Population pop = teacher->ask();
        teacher->tell(problem->evaluate_batch(pop, g));
        if (g < teacher->warmup_generations()) continue;
        const std::vector<std::int64_t> next = encode_vector(teacher->state().mean, spec);
        for (const DimBlock& block : blocks) {
          FinetuneRecord r;
          r.input = render_prompt(teacher->buffer(), pc, spec, block, prompt_rng).text;
          r.target = format_bins(std::span(next).subspan(block.start, block.width()));
          r.task = std::string(problem->name());
          r.seed = seed;
          r.generation = g;
          records.push_back(std::move(r));
        }
      }
    }
  }
  return records;
}

std::size_t export_finetune_dataset(const ExperimentConfig& config, const fs::path& out) {
  const std::vector<FinetuneRecord> records = generate_finetune_records(config);
  if (out.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out.parent_path(), ec);
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open dataset file " + out.string());
  for (const FinetuneRecord& r : records) file << r.to_json().dump() << '\n';
  file.flush();
  if (!file) throw IoError("failed writing dataset file " + out.string());
  if (records.empty()) {
    spdlog::warn("fine-tune export wrote zero records to {}", out.string());
  }

  const PromptConfig& pc = config.strategy.prompt;
  json meta{{"records", records.size()},
            {"expected_records", expected_finetune_records(config)},
            {"teacher", config.strategy.name},
            {"target", "teacher mean after the generation, encoded as bins"},
            {"query_rule",
             {{"enabled", pc.improvement_query},
              {"formula", "best - |best| * (1 - factor)"},
              {"factor_low", pc.query_factor_low},
              {"factor_high", pc.query_factor_high},
              {"decimals", pc.fitness_decimals}}},
            {"code_version", code_version()},
            {"config", to_json(config)}};
  const fs::path meta_path = fs::path(out.string() + ".meta.json");
  std::ofstream mf(meta_path, std::ios::binary | std::ios::trunc);
  mf << meta.dump(2) << '\n';
  if (!mf) throw IoError("cannot write " + meta_path.string());
  return records.size();
}

namespace {

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed JSON");
    }
  }
  return out;
}

const std::set<std::string> kRecordFields = {"input", "target", "task", "seed", "generation"};

DiscretizationSpec permissive_spec() {
  DiscretizationSpec s;
  s.resolution = std::int64_t{1} << 40;
  return s;
}

}  // namespace

json dataset_stats(const fs::path& dataset) {
  const std::vector<json> records = read_jsonl(dataset);
  std::map<std::string, std::size_t> per_task;
  std::set<std::uint64_t> seeds;
  double input_chars = 0.0;
  double rows = 0.0;
  double width = 0.0;
  double moves = 0.0;
  std::size_t move_count = 0;
  std::size_t stationary = 0;
  std::size_t unparsed = 0;
  for (const json& r : records) {
    const std::string input = r.value("input", "");
    const std::string target = r.value("target", "");
    ++per_task[r.value("task", "")];
    seeds.insert(r.value("seed", std::uint64_t{0}));
    input_chars += static_cast<double>(input.size());
    try {
      const ParsedPrompt p = parse_prompt(input);
      const ParsedProposal t = parse_proposal(target, p.width, permissive_spec());
      rows += static_cast<double>(p.rows.size());
      width += static_cast<double>(p.width);
      const auto& anchor = p.rows.back().anchor;
      bool same = true;
      for (std::size_t i = 0; i < anchor.size(); ++i) {
        moves += std::abs(static_cast<double>(t.bins[i] - anchor[i]));
        ++move_count;
        same = same && t.bins[i] == anchor[i];
      }
      if (same) ++stationary;
    } catch (const ParseFailure&) {
      ++unparsed;
    }
  }
  const double n = records.empty() ? 1.0 : static_cast<double>(records.size());
  const double parsed = std::max(1.0, static_cast<double>(records.size() - unparsed));
  return {{"records", records.size()},
          {"per_task", per_task},
          {"distinct_seeds", seeds.size()},
          {"mean_input_chars", input_chars / n},
          {"mean_context_rows", rows / parsed},
          {"mean_block_width", width / parsed},
          {"stationary_target_fraction", static_cast<double>(stationary) / parsed},
          {"mean_abs_bin_move", move_count == 0 ? 0.0 : moves / static_cast<double>(move_count)},
          {"unparsable_records", unparsed}};
}

PromptCheck validate_prompt_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  PromptCheck check;

  const std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool dataset = path.extension() == ".jsonl" ||
                       (first != std::string::npos && text[first] == '{');
  if (!dataset) {
    check.checked = 1;
    try {
      const ParsedPrompt p = parse_prompt(text);
      if (render_parsed(p) != text) check.problems.push_back("prompt does not re-render identically");
    } catch (const ParseFailure& e) {
      check.problems.push_back(e.what());
    }
    return check;
  }

  std::size_t lineno = 0;
  for (const json& r : read_jsonl(path)) {
    ++lineno;
    ++check.checked;
    const std::string where = "record " + std::to_string(lineno) + ": ";
    std::set<std::string> keys;
    for (const auto& [k, _] : r.items()) keys.insert(k);
    if (keys != kRecordFields) {
      check.problems.push_back(where + "fields must be exactly input, target, task, seed, generation");
      continue;
    }
    try {
      const std::string input = r.at("input").get<std::string>();
      const ParsedPrompt p = parse_prompt(input);
      if (render_parsed(p) != input) check.problems.push_back(where + "input does not re-render identically");
      parse_proposal(r.at("target").get<std::string>(), p.width, permissive_spec());
    } catch (const ParseFailure& e) {
      check.problems.push_back(where + e.what());
    } catch (const json::exception& e) {
      check.problems.push_back(where + e.what());
    }
  }
  return check;
}

}  // namespace evollm
