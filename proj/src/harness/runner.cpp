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

#include <algorithm>
#include <fstream>
#include <future>

#include "codec/codec.hpp"
#include "core/error.hpp"
#include "harness/harness.hpp"

#ifndef EVOLLM_VERSION_STRING
#define EVOLLM_VERSION_STRING "unknown"
#endif

namespace evollm {

using nlohmann::json;

std::string code_version() { return EVOLLM_VERSION_STRING; }

std::string log_file_name(std::uint64_t seed) {
  return "seed_" + std::to_string(seed) + ".jsonl";
}

namespace {

json population_json(const Population& pop) {
  json rows = json::array();
  for (std::size_t i = 0; i < pop.rows(); ++i) {
    const auto r = pop.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

json bins_json(const Population& pop, const DiscretizationSpec& spec) {
  json rows = json::array();
  for (std::size_t i = 0; i < pop.rows(); ++i) rows.push_back(encode_vector(pop.row(i), spec));
  return rows;
}

}  // namespace

RunResult run_seed(const ExperimentConfig& config, std::uint64_t seed,
                   std::shared_ptr<Backend> backend, std::ostream& log) {
  std::unique_ptr<Problem> problem = make_problem(config.task);
  std::unique_ptr<Strategy> strategy =
      make_strategy(config.strategy, problem->bounds(), config.budget.population_size,
                    seed, backend, &config.backend);
  auto* evollm = dynamic_cast<EvoLlm*>(strategy.get());

  log << json{{"type", "header"},
              {"seed", seed},
              {"code_version", code_version()},
              {"task", problem->name()},
              {"strategy", strategy->name()},
              {"dims", problem->dims()},
              {"warmup_generations", strategy->warmup_generations()},
              {"config", to_json(config)}}
             .dump()
      << '\n';

  RunResult result;
  result.seed = seed;
  for (std::size_t g = 0; g < config.budget.max_generations; ++g) {
    const std::vector<double> mean = strategy->state().mean;
    const Phase phase = strategy->state().phase;
    const Population pop = strategy->ask();
    const std::vector<double> fitness = problem->evaluate_batch(pop, g);
    strategy->tell(fitness);
    const SearchState& st = strategy->state();

    json rec{{"type", "generation"},
             {"generation", g},
             {"phase", to_string(phase)},
             {"mean", mean},
             {"sigma", st.sigma},
             {"population", population_json(pop)},
             {"bins", bins_json(pop, config.strategy.codec)},
             {"fitness", fitness},
             {"best_fitness", st.best_fitness},
             {"best_solution", st.best_solution},
             {"next_mean", st.mean},
             {"clipped", strategy->clipped_last_ask()}};
    if (evollm != nullptr) {
      json llm = strategy->step_info();
      if (llm.empty()) llm = {{"blocks", json::array()}, {"fallbacks", 0}, {"queries", 0}};
      llm["run_fallback_rate"] = evollm->fallback_rate();
      llm["latency_ms"] = 0.0;
      for (const auto& b : llm["blocks"]) {
        llm["latency_ms"] = llm["latency_ms"].get<double>() + b["latency_ms"].get<double>();
      }
      if (!llm.contains("fallback_rate")) llm["fallback_rate"] = 0.0;
      rec["llm"] = std::move(llm);
    } else if (!strategy->step_info().empty()) {
      rec["info"] = strategy->step_info();
    }
    log << rec.dump() << '\n';
    result.best_curve.push_back(st.best_fitness);
  }

  result.generations = config.budget.max_generations;
  result.best_fitness = strategy->state().best_fitness;
  json summary{{"type", "summary"},
               {"generations", result.generations},
               {"best_fitness", strategy->state().has_best() ? json(result.best_fitness) : json(nullptr)},
               {"best_solution", strategy->state().best_solution}};
  if (evollm != nullptr) {
    result.queries = evollm->queries();
    result.fallbacks = evollm->fallbacks();
    summary["llm"] = {{"queries", result.queries},
                      {"fallbacks", result.fallbacks},
                      {"fallback_rate", evollm->fallback_rate()}};
  }
  // A zero-generation budget leaves a header-only log.
  if (result.generations > 0) log << summary.dump() << '\n';
  log.flush();
  if (!log) throw IoError("failed to write the trajectory log");
  return result;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const bool needs_backend = config.strategy.name == "evollm";
  if (needs_backend && config.backend.kind == BackendKind::kHttp) {
    HttpBackend probe(config.backend);
    if (config.backend.probe_on_start) probe.probe();
  }

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  auto run_one = [&](std::uint64_t seed) {
    std::shared_ptr<Backend> backend;
    if (needs_backend) backend = make_backend(config.backend, config.strategy.codec);
    const std::filesystem::path path = dir / log_file_name(seed);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open log file " + path.string());
    RunResult r = run_seed(config, seed, std::move(backend), out);
    r.log_path = path;
    return r;
  };

  std::vector<RunResult> results(config.seeds.size());
  const std::size_t width = std::max<std::size_t>(1, config.parallel_seeds);
  for (std::size_t start = 0; start < config.seeds.size(); start += width) {
    const std::size_t end = std::min(config.seeds.size(), start + width);
    if (end - start == 1) {
      results[start] = run_one(config.seeds[start]);
      continue;
    }
    std::vector<std::future<RunResult>> jobs;
    for (std::size_t i = start; i < end; ++i) {
      jobs.push_back(std::async(std::launch::async, run_one, config.seeds[i]));
    }
    for (std::size_t i = start; i < end; ++i) results[i] = jobs[i - start].get();
  }
  return results;
}

}  // namespace evollm
