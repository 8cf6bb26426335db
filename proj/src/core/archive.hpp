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
#include <span>
#include <vector>

#include "core/types.hpp"

namespace evollm {

/// One evaluated population.
struct Generation {
  std::size_t index = 0;
  Population candidates;
  std::vector<double> fitness;
  /// improved[i]: fitness[i] beat the best fitness of all earlier
  /// generations. Frozen at insertion. The first generation has no incumbent
  /// to improve on, so its flags are all false.
  std::vector<bool> improved;

  std::size_t size() const noexcept { return fitness.size(); }
  /// Position of the lowest fitness; ties go to the lower position.
  std::size_t best_position() const;
  double best_fitness() const { return fitness[best_position()]; }
};

/// Non-owning view of a single evaluation inside an ArchiveBuffer.
struct EvaluationRef {
  std::size_t generation = 0;
  std::size_t position = 0;
  std::span<const double> candidate;
  double fitness = 0.0;
  bool improved = false;
};

/// Append-only history of all evaluations of a run.
///
/// Ordering between evaluations is (fitness, generation, position), which
/// makes every "best" query deterministic regardless of seed.
class ArchiveBuffer {
 public:
  explicit ArchiveBuffer(SearchBounds bounds);

  const SearchBounds& bounds() const noexcept { return bounds_; }
  std::size_t dims() const noexcept { return bounds_.dims(); }
  std::size_t size() const noexcept { return generations_.size(); }
  bool empty() const noexcept { return generations_.empty(); }
  std::size_t total_evaluations() const noexcept { return total_; }

  /// Throws ShapeError on dimension or length mismatch.
  const Generation& append(const Population& candidates,
                           std::span<const double> fitness);

  /// Throws IndexError when k is out of range.
  const Generation& at(std::size_t k) const;
  const std::vector<Generation>& generations() const noexcept {
    return generations_;
  }

  /// The m lowest-fitness evaluations among generations 0..k, ascending.
  std::vector<EvaluationRef> best_up_to(std::size_t k, std::size_t m) const;
  /// The lowest-fitness member of generation k alone.
  EvaluationRef best_within(std::size_t k) const;
  /// Best evaluation over generations 0..k (== best_up_to(k, 1).front()).
  EvaluationRef prefix_best(std::size_t k) const;
  /// Best over the whole buffer. Requires a non-empty buffer.
  EvaluationRef best() const { return prefix_best(size() - 1); }

  EvaluationRef ref(std::size_t generation, std::size_t position) const;

 private:
  void check_index(std::size_t k) const;

  SearchBounds bounds_;
  std::vector<Generation> generations_;
  // (generation, position) of the best evaluation up to each generation.
  std::vector<std::pair<std::size_t, std::size_t>> prefix_best_;
  std::size_t total_ = 0;
};

/// Strict ordering used for every ranking of evaluations.
bool evaluation_less(const EvaluationRef& a, const EvaluationRef& b);

}  // namespace evollm
