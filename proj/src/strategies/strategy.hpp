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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "codec/codec.hpp"
#include "core/archive.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "llm/backend.hpp"
#include "prompt/prompt_config.hpp"

namespace evollm {

struct SnesConfig {
  /// Defaults: 1 and (3 + ln D) / (5 sqrt D).
  std::optional<double> lr_mean;
  std::optional<double> lr_sigma;
  double init_sigma = 1.0;
  /// Antithetic pairs (s, -s).
  bool mirrored = false;
};

struct StrategyConfig {
  std::string name = "evollm";
  double sigma = 0.2;
  /// Random-search generations before the strategy's own update rule takes
  /// over. Unset means 4 for evollm and hill_climb, 0 otherwise.
  std::optional<std::size_t> warmup_generations;
  /// Dimensions per model query; 0 means all dimensions in one query.
  std::size_t block_size = 0;
  std::optional<std::vector<double>> init_mean;
  PromptConfig prompt;
  DiscretizationSpec codec;
  /// A proposal equal to the incumbent's encoding recentres on the exact
  /// incumbent instead of its bin centre.
  bool snap_to_incumbent = true;
  SnesConfig snes;

  std::size_t resolved_warmup() const;
  void validate(std::size_t dims) const;
};

/// Ask-evaluate-tell optimizer over a bounded box; fitness is minimized.
///
/// Every strategy keeps the full evaluation history, tracks the incumbent and
/// starts with `warmup` generations of uniform random search. tell() must
/// follow each ask().
class Strategy {
 public:
  Strategy(SearchBounds bounds, std::size_t population_size,
           const StrategyConfig& config, std::uint64_t seed);
  virtual ~Strategy() = default;
  Strategy(const Strategy&) = delete;
  Strategy& operator=(const Strategy&) = delete;

  virtual std::string_view name() const noexcept = 0;

  /// N x D candidates, all inside the bounds.
  Population ask();
  /// Fitness for the population returned by the last ask().
  void tell(std::span<const double> fitness);

  const SearchState& state() const noexcept { return state_; }
  const ArchiveBuffer& buffer() const noexcept { return buffer_; }
  const SearchBounds& bounds() const noexcept { return bounds_; }
  std::size_t population_size() const noexcept { return population_size_; }
  std::size_t warmup_generations() const noexcept { return warmup_; }
  /// Candidates of the last ask() that had at least one coordinate clipped.
  std::size_t clipped_last_ask() const noexcept { return clipped_; }
  /// Strategy-specific details of the last tell(), for trajectory logs.
  const nlohmann::json& step_info() const noexcept { return step_info_; }

 protected:
  /// Population for a post-warm-up generation. Default: mean + sigma * N(0, I).
  virtual Population sample(Rng& rng);
  /// Post-warm-up distribution update. The buffer already holds `latest`,
  /// and state().best_* include it; `previous_best` is the incumbent fitness
  /// before this generation.
  virtual void update(const Generation& latest, double previous_best) = 0;

  Population sample_uniform(Rng& rng) const;
  /// Clips a row, counting it if any coordinate moved.
  void clip_row(std::span<double> row);

  SearchState state_;
  ArchiveBuffer buffer_;
  SearchBounds bounds_;
  std::size_t population_size_;
  std::size_t warmup_;
  nlohmann::json step_info_ = nlohmann::json::object();

 private:
  Rng sample_rng_;
  std::optional<Population> pending_;
  std::size_t clipped_ = 0;
};

/// Uniform sampling; only tracks the incumbent.
class RandomSearch final : public Strategy {
 public:
  using Strategy::Strategy;
  std::string_view name() const noexcept override { return "random_search"; }

 protected:
  Population sample(Rng& rng) override { return sample_uniform(rng); }
  void update(const Generation&, double) override;
};

/// Gaussian hill climbing: sample around the mean, move it to the best
/// candidate on strict improvement. Sigma is fixed.
class HillClimb final : public Strategy {
 public:
  using Strategy::Strategy;
  std::string_view name() const noexcept override { return "hill_climb"; }

 protected:
  void update(const Generation& latest, double previous_best) override;
};

/// Separable natural evolution strategy with a per-dimension scale vector.
class Snes final : public Strategy {
 public:
  Snes(SearchBounds bounds, std::size_t population_size,
       const StrategyConfig& config, std::uint64_t seed);
  std::string_view name() const noexcept override { return "snes"; }
  const std::vector<double>& scales() const noexcept { return scales_; }
  double lr_mean() const noexcept { return lr_mean_; }
  double lr_sigma() const noexcept { return lr_sigma_; }

 protected:
  Population sample(Rng& rng) override;
  void update(const Generation& latest, double previous_best) override;

 private:
  std::vector<double> scales_;
  std::vector<double> noise_;  // N x D standard normal draws of the last ask
  double lr_mean_;
  double lr_sigma_;
  bool mirrored_;
};

/// Zero-sum log-rank utilities; rank 0 is the lowest fitness. Tied fitness
/// values share the mean of their utilities.
std::vector<double> rank_utilities(std::span<const double> fitness);

/// Model-driven mean update: each dimension block is rendered into a prompt,
/// sent to the backend, and the parsed proposal becomes the new mean for that
/// block. Parse or backend failures recentre the block on the incumbent.
class EvoLlm final : public Strategy {
 public:
  EvoLlm(SearchBounds bounds, std::size_t population_size,
         const StrategyConfig& config, std::uint64_t seed,
         std::shared_ptr<Backend> backend, double temperature_low = 0.3,
         double temperature_high = 1.0);
  std::string_view name() const noexcept override { return "evollm"; }

  std::size_t queries() const noexcept { return queries_; }
  std::size_t fallbacks() const noexcept { return fallbacks_; }
  double fallback_rate() const noexcept {
    return queries_ == 0 ? 0.0 : static_cast<double>(fallbacks_) / static_cast<double>(queries_);
  }

 protected:
  void update(const Generation& latest, double previous_best) override;

 private:
  PromptConfig prompt_;
  DiscretizationSpec codec_;
  std::size_t block_size_;
  bool snap_;
  std::shared_ptr<Backend> backend_;
  Rng prompt_rng_;
  std::size_t queries_ = 0;
  std::size_t fallbacks_ = 0;
  double temperature_low_;
  double temperature_high_;
};

/// Builds a strategy by name. EvoLLM needs a backend; its temperature range
/// comes from `backend_config` when given.
std::unique_ptr<Strategy> make_strategy(const StrategyConfig& config,
                                        const SearchBounds& bounds,
                                        std::size_t population_size,
                                        std::uint64_t seed,
                                        std::shared_ptr<Backend> backend = nullptr,
                                        const BackendConfig* backend_config = nullptr);

}  // namespace evollm
