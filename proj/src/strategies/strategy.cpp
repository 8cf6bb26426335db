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

#include "strategies/strategy.hpp"

#include <string>

#include "core/error.hpp"

namespace evollm {

std::size_t StrategyConfig::resolved_warmup() const {
  if (warmup_generations) return *warmup_generations;
  return (name == "evollm" || name == "hill_climb") ? 4 : 0;
}

void StrategyConfig::validate(std::size_t dims) const {
  if (name != "evollm" && name != "hill_climb" && name != "random_search" &&
      name != "snes") {
    throw ConfigError("unknown strategy '" + name + "'");
  }
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be non-negative");
  if (block_size > dims) {
    throw ConfigError("block_size " + std::to_string(block_size) +
                      " exceeds the search dimension " + std::to_string(dims));
  }
  if (init_mean && init_mean->size() != dims) {
    throw ConfigError("init_mean length does not match the search dimension");
  }
  if (!(snes.init_sigma > 0.0)) throw ConfigError("snes.init_sigma must be positive");
  if ((snes.lr_mean && !(*snes.lr_mean > 0.0)) ||
      (snes.lr_sigma && !(*snes.lr_sigma > 0.0))) {
    throw ConfigError("snes learning rates must be positive");
  }
  try {
    prompt.validate();
    codec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

Strategy::Strategy(SearchBounds bounds, std::size_t population_size,
                   const StrategyConfig& config, std::uint64_t seed)
    : buffer_(bounds),
      bounds_(std::move(bounds)),
      population_size_(population_size),
      warmup_(config.resolved_warmup()),
      sample_rng_(mix_seed(seed, "sample")) {
  if (population_size_ == 0) throw InvalidArgument("population size must be positive");
  config.validate(bounds_.dims());
  state_.sigma = config.sigma;
  if (config.init_mean) {
    state_.mean = *config.init_mean;
    bounds_.clip(state_.mean);
  } else {
    state_.mean.resize(bounds_.dims());
    for (std::size_t d = 0; d < bounds_.dims(); ++d) {
      state_.mean[d] = sample_rng_.uniform(bounds_.lower[d], bounds_.upper[d]);
    }
  }
  state_.phase = warmup_ > 0 ? Phase::kWarmup : Phase::kLlm;
}

Population Strategy::sample_uniform(Rng& rng) const {
  Population pop(population_size_, bounds_.dims());
  for (std::size_t i = 0; i < pop.rows(); ++i) {
    auto row = pop.row(i);
    for (std::size_t d = 0; d < row.size(); ++d) {
      row[d] = rng.uniform(bounds_.lower[d], bounds_.upper[d]);
    }
  }
  return pop;
}

void Strategy::clip_row(std::span<double> row) {
  bool moved = false;
  for (std::size_t d = 0; d < row.size(); ++d) {
    if (row[d] < bounds_.lower[d]) {
      row[d] = bounds_.lower[d];
      moved = true;
    } else if (row[d] > bounds_.upper[d]) {
      row[d] = bounds_.upper[d];
      moved = true;
    }
  }
  if (moved) ++clipped_;
}

Population Strategy::sample(Rng& rng) {
  Population pop(population_size_, bounds_.dims());
  for (std::size_t i = 0; i < pop.rows(); ++i) {
    auto row = pop.row(i);
    for (std::size_t d = 0; d < row.size(); ++d) {
      row[d] = state_.mean[d] + state_.sigma * rng.normal();
    }
    clip_row(row);
  }
  return pop;
}

Population Strategy::ask() {
  if (pending_) throw InvalidArgument("ask() called twice without tell()");
  clipped_ = 0;
  Population pop = state_.generation < warmup_ ? sample_uniform(sample_rng_)
                                                : sample(sample_rng_);
  pending_ = pop;
  return pop;
}

void Strategy::tell(std::span<const double> fitness) {
  if (!pending_) throw InvalidArgument("tell() without a preceding ask()");
  if (fitness.size() != pending_->rows()) {
    throw ShapeError("expected " + std::to_string(pending_->rows()) +
                     " fitness values, got " + std::to_string(fitness.size()));
  }
  const double previous_best = state_.best_fitness;
  const Generation& latest = buffer_.append(*pending_, fitness);
  pending_.reset();

  const EvaluationRef best = buffer_.best();
  state_.best_fitness = best.fitness;
  state_.best_solution.assign(best.candidate.begin(), best.candidate.end());

  step_info_ = nlohmann::json::object();
  if (state_.generation < warmup_) {
    state_.mean = state_.best_solution;
  } else {
    update(latest, previous_best);
  }
  ++state_.generation;
  state_.phase = state_.generation < warmup_ ? Phase::kWarmup : Phase::kLlm;
}

}  // namespace evollm
