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

#include "core/types.hpp"

#include <algorithm>
#include <string>

#include "core/error.hpp"

namespace evollm {

void SearchBounds::validate() const {
  if (lower.empty()) throw InvalidArgument("search bounds need at least one dimension");
  if (lower.size() != upper.size()) {
    throw InvalidArgument("lower/upper bound lengths differ: " +
                          std::to_string(lower.size()) + " vs " +
                          std::to_string(upper.size()));
  }
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] < upper[d])) {
      throw InvalidArgument("bounds must satisfy lower < upper (dimension " +
                            std::to_string(d) + ")");
    }
  }
}

bool SearchBounds::contains(std::span<const double> x) const {
  if (x.size() != dims()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (x[d] < lower[d] || x[d] > upper[d]) return false;
  }
  return true;
}

void SearchBounds::clip(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) {
    x[d] = std::clamp(x[d], lower[d], upper[d]);
  }
}

SearchBounds SearchBounds::uniform(std::size_t dims, double lower,
                                   double upper) {
  SearchBounds b{std::vector<double>(dims, lower),
                 std::vector<double>(dims, upper)};
  b.validate();
  return b;
}

Population::Population(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("population data holds " + std::to_string(data_.size()) +
                     " values, expected " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

std::string_view to_string(Phase phase) {
  return phase == Phase::kWarmup ? "warmup" : "llm";
}

void EvalBudget::validate() const {
  if (population_size == 0) throw InvalidArgument("population_size must be positive");
}

}  // namespace evollm
