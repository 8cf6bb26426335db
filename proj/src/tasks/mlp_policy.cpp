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
#include <string>
#include <vector>

#include "core/error.hpp"
#include "tasks/problem.hpp"

namespace evollm {

std::size_t mlp_act(std::span<const double> params, std::span<const double> obs,
                    const MlpPolicySpec& spec) {
  if (params.size() != spec.param_count()) {
    throw ShapeError("policy expects " + std::to_string(spec.param_count()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  if (obs.size() != spec.obs_dim) {
    throw ShapeError("policy expects " + std::to_string(spec.obs_dim) +
                     " observations, got " + std::to_string(obs.size()));
  }
  const std::size_t h = spec.hidden_dim;
  const std::size_t o = spec.obs_dim;
  const double* w1 = params.data();
  const double* b1 = w1 + h * o;
  const double* w2 = b1 + h;
  const double* b2 = w2 + spec.action_count * h;

  std::vector<double> hidden(h);
  for (std::size_t i = 0; i < h; ++i) {
    double z = b1[i];
    for (std::size_t j = 0; j < o; ++j) z += w1[i * o + j] * obs[j];
    hidden[i] = std::tanh(z);
  }
  std::size_t best = 0;
  double best_logit = 0.0;
  for (std::size_t a = 0; a < spec.action_count; ++a) {
    double z = b2[a];
    for (std::size_t i = 0; i < h; ++i) z += w2[a * h + i] * hidden[i];
    if (a == 0 || z > best_logit) {
      best = a;
      best_logit = z;
    }
  }
  return best;
}

}  // namespace evollm
