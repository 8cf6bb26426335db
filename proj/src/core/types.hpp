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

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace evollm {

/// Box constraints x_d in [lower_d, upper_d].
struct SearchBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dims() const noexcept { return lower.size(); }
  /// Throws InvalidArgument unless lower < upper element-wise and the
  /// vectors have equal, non-zero length.
  void validate() const;
  bool contains(std::span<const double> x) const;
  void clip(std::span<double> x) const;

  static SearchBounds uniform(std::size_t dims, double lower, double upper);
};

/// Row-major N x D block of candidate solutions.
class Population {
 public:
  Population() = default;
  Population(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Population(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Phase { kWarmup, kLlm };

std::string_view to_string(Phase phase);

/// Search distribution plus incumbent. Fitness is minimized.
struct SearchState {
  std::vector<double> mean;
  double sigma = 0.0;
  std::size_t generation = 0;
  std::vector<double> best_solution;
  double best_fitness = std::numeric_limits<double>::infinity();
  Phase phase = Phase::kWarmup;

  bool has_best() const noexcept { return !best_solution.empty(); }
};

struct EvalBudget {
  std::size_t max_generations = 1;
  std::size_t population_size = 1;
  void validate() const;
};

}  // namespace evollm
