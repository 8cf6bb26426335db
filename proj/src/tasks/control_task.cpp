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
#include <cmath>
#include <future>
#include <string>

#include "core/error.hpp"
#include "tasks/problem.hpp"

namespace evollm {

std::optional<ControlEnv> parse_control_env(std::string_view name) {
  if (name == "cartpole") return ControlEnv::kCartPole;
  if (name == "acrobot") return ControlEnv::kAcrobot;
  return std::nullopt;
}

std::string_view to_string(ControlEnv env) {
  return env == ControlEnv::kCartPole ? "cartpole" : "acrobot";
}

MlpPolicySpec default_policy_spec(ControlEnv env, std::optional<std::size_t> hidden) {
  if (env == ControlEnv::kCartPole) {
    return {CartPoleEnv::kObsDim, hidden.value_or(2), CartPoleEnv::kActions};
  }
  return {AcrobotEnv::kObsDim, hidden.value_or(3), AcrobotEnv::kActions};
}

namespace {

template <typename Env>
double run_episode(std::span<const double> params, const MlpPolicySpec& spec,
                   std::uint64_t seed, std::size_t max_steps) {
  Env env;
  env.reset(seed);
  double total = 0.0;
  for (std::size_t t = 0; t < max_steps; ++t) {
    const auto obs = env.observation();
    total += env.step(mlp_act(params, obs, spec));
    if (env.terminated()) break;
  }
  return total;
}

}  // namespace

double rollout(ControlEnv env, std::span<const double> params,
               const MlpPolicySpec& spec, std::uint64_t seed, std::size_t max_steps) {
  return env == ControlEnv::kCartPole
             ? run_episode<CartPoleEnv>(params, spec, seed, max_steps)
             : run_episode<AcrobotEnv>(params, spec, seed, max_steps);
}

double policy_fitness(ControlEnv env, std::span<const double> params,
                      const MlpPolicySpec& spec, const RolloutConfig& config,
                      std::size_t generation) {
  if (config.rollouts_per_eval == 0) {
    throw InvalidArgument("rollouts_per_eval must be at least 1");
  }
  const std::uint64_t first =
      config.base_seed + static_cast<std::uint64_t>(generation) * config.rollouts_per_eval;
  double sum = 0.0;
  for (std::size_t r = 0; r < config.rollouts_per_eval; ++r) {
    sum += rollout(env, params, spec, first + r, config.max_steps);
  }
  return -(sum / static_cast<double>(config.rollouts_per_eval));
}

ControlProblem::ControlProblem(ControlEnv env, MlpPolicySpec spec,
                               RolloutConfig rollout, double lower, double upper)
    : env_(env),
      spec_(spec),
      rollout_(rollout),
      bounds_(SearchBounds::uniform(spec.param_count(), lower, upper)) {
  bounds_.validate();
  if (rollout_.rollouts_per_eval == 0) {
    throw InvalidArgument("rollouts_per_eval must be at least 1");
  }
}

std::vector<double> ControlProblem::evaluate_batch(const Population& candidates,
                                                   std::size_t generation) const {
  if (candidates.cols() != dims()) {
    throw ShapeError("candidate length " + std::to_string(candidates.cols()) +
                     " does not match parameter count " + std::to_string(dims()));
  }
  const std::size_t n = candidates.rows();
  std::vector<double> out(n);
  auto eval_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      out[i] = policy_fitness(env_, candidates.row(i), spec_, rollout_, generation);
    }
  };
  const std::size_t workers = std::min(rollout_.threads, n);
  if (workers <= 1) {
    eval_range(0, n);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t lo = 0; lo < n; lo += chunk) {
      jobs.push_back(std::async(std::launch::async, eval_range, lo, std::min(n, lo + chunk)));
    }
    for (auto& j : jobs) j.get();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(out[i])) {
      throw EvaluationError("non-finite fitness for candidate " + std::to_string(i));
    }
  }
  return out;
}

}  // namespace evollm
