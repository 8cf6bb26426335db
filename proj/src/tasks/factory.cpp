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

#include "core/error.hpp"
#include "tasks/problem.hpp"

namespace evollm {

std::unique_ptr<Problem> make_problem(const TaskConfig& config) {
  if (!(config.lower < config.upper)) {
    throw ConfigError("task bounds must satisfy lower < upper");
  }
  if (auto f = parse_bbob_function(config.name)) {
    if (config.dims == 0) throw ConfigError("task.dims must be positive");
    return std::make_unique<BbobProblem>(
        *f, SearchBounds::uniform(config.dims, config.lower, config.upper),
        config.shift_seed);
  }
  if (auto env = parse_control_env(config.name)) {
    if (config.rollout.rollouts_per_eval == 0 || config.rollout.max_steps == 0) {
      throw ConfigError("rollouts_per_eval and max_steps must be positive");
    }
    if (config.hidden_dim && *config.hidden_dim == 0) {
      throw ConfigError("task.hidden_dim must be positive");
    }
    return std::make_unique<ControlProblem>(
        *env, default_policy_spec(*env, config.hidden_dim), config.rollout,
        config.lower, config.upper);
  }
  throw ConfigError("unknown task '" + config.name + "'");
}

}  // namespace evollm
