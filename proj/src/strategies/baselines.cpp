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

namespace evollm {

void RandomSearch::update(const Generation&, double) {
  state_.mean = state_.best_solution;
}

void HillClimb::update(const Generation& latest, double previous_best) {
  const std::size_t pos = latest.best_position();
  if (latest.fitness[pos] < previous_best) {
    const auto row = latest.candidates.row(pos);
    state_.mean.assign(row.begin(), row.end());
  }
}

}  // namespace evollm
