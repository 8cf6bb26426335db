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

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace evollm {

/// Minimization objective over a box.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual std::string_view name() const noexcept = 0;
  virtual const SearchBounds& bounds() const noexcept = 0;
  std::size_t dims() const noexcept { return bounds().dims(); }
  /// Noisy problems depend on `generation` through their rollout seeds.
  virtual bool noisy() const noexcept = 0;
  /// One finite fitness per row, in row order. Throws EvaluationError.
  virtual std::vector<double> evaluate_batch(const Population& candidates,
                                             std::size_t generation) const = 0;
};

enum class BbobFunction { kSphere, kRosenbrock, kDiscus, kRastrigin, kSchwefel };

std::optional<BbobFunction> parse_bbob_function(std::string_view name);
std::string_view to_string(BbobFunction f);

/// Untransformed function value; throws EvaluationError on non-finite input.
double bbob_evaluate(BbobFunction f, std::span<const double> x);

class BbobProblem final : public Problem {
 public:
  /// With a shift seed, f is evaluated at x - o for a fixed offset o drawn
  /// uniformly from [-1, 1]^D.
  BbobProblem(BbobFunction f, SearchBounds bounds,
              std::optional<std::uint64_t> shift_seed = std::nullopt);
  std::string_view name() const noexcept override { return to_string(f_); }
  const SearchBounds& bounds() const noexcept override { return bounds_; }
  bool noisy() const noexcept override { return false; }
  std::vector<double> evaluate_batch(const Population& candidates,
                                     std::size_t generation) const override;
  const std::vector<double>& shift() const noexcept { return shift_; }

 private:
  BbobFunction f_;
  SearchBounds bounds_;
  std::vector<double> shift_;
};

/// obs -> tanh hidden layer -> linear logits -> argmax.
///
/// Flat parameter layout: W1 (hidden x obs, row-major), b1, W2 (actions x
/// hidden, row-major), b2.
struct MlpPolicySpec {
  std::size_t obs_dim = 4;
  std::size_t hidden_dim = 2;
  std::size_t action_count = 2;
  std::size_t param_count() const noexcept {
    return (obs_dim + 1) * hidden_dim + (hidden_dim + 1) * action_count;
  }
};

/// Lowest index wins ties. Throws ShapeError on length mismatch.
std::size_t mlp_act(std::span<const double> params, std::span<const double> obs,
                    const MlpPolicySpec& spec);

struct RolloutConfig {
  std::size_t rollouts_per_eval = 8;
  std::size_t max_steps = 500;
  std::uint64_t base_seed = 0;
  /// Worker threads for batch evaluation; 0 or 1 evaluates inline.
  std::size_t threads = 0;
};

/// CartPole-v1 physics (explicit Euler, tau 0.02 s).
class CartPoleEnv {
 public:
  static constexpr std::size_t kObsDim = 4;
  static constexpr std::size_t kActions = 2;
  /// State uniform in [-0.05, 0.05]^4 from `seed`.
  void reset(std::uint64_t seed);
  void reset_to(const std::array<double, 4>& state) { state_ = state; }
  /// Returns the reward (1 per step, including the terminating one).
  double step(std::size_t action);
  bool terminated() const noexcept;
  std::array<double, 4> observation() const;
  const std::array<double, 4>& state() const noexcept { return state_; }

 private:
  std::array<double, 4> state_{};
};

/// Acrobot-v1 ("book" dynamics, one RK4 step of 0.2 s).
class AcrobotEnv {
 public:
  static constexpr std::size_t kObsDim = 6;
  static constexpr std::size_t kActions = 3;
  /// Joint angles and velocities uniform in [-0.1, 0.1], stored at float
  /// precision like the reference implementation.
  void reset(std::uint64_t seed);
  void reset_to(const std::array<double, 4>& state) { state_ = state; }
  /// Torque index 0, 1, 2 for -1, 0, +1. Reward -1, or 0 on reaching the goal.
  double step(std::size_t action);
  bool terminated() const noexcept;
  std::array<double, 6> observation() const;
  const std::array<double, 4>& state() const noexcept { return state_; }

 private:
  std::array<double, 4> state_{};
};

enum class ControlEnv { kCartPole, kAcrobot };

std::optional<ControlEnv> parse_control_env(std::string_view name);
std::string_view to_string(ControlEnv env);
/// 4-2-2 for CartPole, 6-3-3 for Acrobot unless `hidden` overrides.
MlpPolicySpec default_policy_spec(ControlEnv env,
                                  std::optional<std::size_t> hidden = std::nullopt);

/// Total reward of one episode under the MLP policy.
double rollout(ControlEnv env, std::span<const double> params,
               const MlpPolicySpec& spec, std::uint64_t seed,
               std::size_t max_steps);

/// Negated mean return over rollouts with seeds
/// base_seed + generation * rollouts_per_eval + r.
double policy_fitness(ControlEnv env, std::span<const double> params,
                      const MlpPolicySpec& spec, const RolloutConfig& config,
                      std::size_t generation);

class ControlProblem final : public Problem {
 public:
  ControlProblem(ControlEnv env, MlpPolicySpec spec, RolloutConfig rollout,
                 double lower = -3.0, double upper = 3.0);
  std::string_view name() const noexcept override { return to_string(env_); }
  const SearchBounds& bounds() const noexcept override { return bounds_; }
  bool noisy() const noexcept override { return true; }
  std::vector<double> evaluate_batch(const Population& candidates,
                                     std::size_t generation) const override;
  const MlpPolicySpec& policy_spec() const noexcept { return spec_; }
  const RolloutConfig& rollout_config() const noexcept { return rollout_; }

 private:
  ControlEnv env_;
  MlpPolicySpec spec_;
  RolloutConfig rollout_;
  SearchBounds bounds_;
};

struct TaskConfig {
  std::string name = "sphere";
  /// Search dimension for synthetic functions; ignored by control tasks.
  std::size_t dims = 2;
  double lower = -3.0;
  double upper = 3.0;
  std::optional<std::uint64_t> shift_seed;
  std::optional<std::size_t> hidden_dim;
  RolloutConfig rollout;
};

/// Throws ConfigError on unknown names or invalid settings.
std::unique_ptr<Problem> make_problem(const TaskConfig& config);

}  // namespace evollm
