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

#include "core/archive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace evollm {

std::size_t Generation::best_position() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < fitness.size(); ++i) {
    if (fitness[i] < fitness[best]) best = i;
  }
  return best;
}

bool evaluation_less(const EvaluationRef& a, const EvaluationRef& b) {
  if (a.fitness != b.fitness) return a.fitness < b.fitness;
  if (a.generation != b.generation) return a.generation < b.generation;
  return a.position < b.position;
}

ArchiveBuffer::ArchiveBuffer(SearchBounds bounds) : bounds_(std::move(bounds)) {
  bounds_.validate();
}

const Generation& ArchiveBuffer::append(const Population& candidates,
                                        std::span<const double> fitness) {
  if (candidates.rows() == 0) throw ShapeError("cannot append an empty generation");
  if (candidates.cols() != dims()) {
    throw ShapeError("candidate length " + std::to_string(candidates.cols()) +
                     " does not match search dimension " +
                     std::to_string(dims()));
  }
  if (fitness.size() != candidates.rows()) {
    throw ShapeError("fitness length " + std::to_string(fitness.size()) +
                     " does not match candidate count " +
                     std::to_string(candidates.rows()));
  }
  for (double f : fitness) {
    if (std::isnan(f)) throw ShapeError("fitness values must not be NaN");
  }

  Generation g;
  g.index = generations_.size();
  g.candidates = candidates;
  g.fitness.assign(fitness.begin(), fitness.end());
  g.improved.assign(g.fitness.size(), false);
  if (!generations_.empty()) {
    const double incumbent = best().fitness;
    for (std::size_t i = 0; i < g.fitness.size(); ++i) {
      g.improved[i] = g.fitness[i] < incumbent;
    }
  }

  const std::size_t pos = g.best_position();
  std::pair<std::size_t, std::size_t> best_loc{g.index, pos};
  if (!prefix_best_.empty()) {
    const auto [pg, pp] = prefix_best_.back();
    // Strict comparison keeps the earlier evaluation on ties.
    if (!(g.fitness[pos] < generations_[pg].fitness[pp])) best_loc = {pg, pp};
  }
  total_ += g.size();
  generations_.push_back(std::move(g));
  prefix_best_.push_back(best_loc);
  return generations_.back();
}

void ArchiveBuffer::check_index(std::size_t k) const {
  if (k >= generations_.size()) {
    throw IndexError("generation index " + std::to_string(k) +
                     " out of range (buffer holds " +
                     std::to_string(generations_.size()) + ")");
  }
}

const Generation& ArchiveBuffer::at(std::size_t k) const {
  check_index(k);
  return generations_[k];
}

EvaluationRef ArchiveBuffer::ref(std::size_t generation,
                                 std::size_t position) const {
  const Generation& g = at(generation);
  if (position >= g.size()) {
    throw IndexError("position " + std::to_string(position) +
                     " out of range in generation " +
                     std::to_string(generation));
  }
  return {generation, position, g.candidates.row(position), g.fitness[position],
          g.improved[position]};
}

std::vector<EvaluationRef> ArchiveBuffer::best_up_to(std::size_t k,
                                                     std::size_t m) const {
  check_index(k);
  if (m == 0) throw InvalidArgument("best_up_to needs m >= 1");
  std::vector<EvaluationRef> all;
  for (std::size_t g = 0; g <= k; ++g) {
    for (std::size_t i = 0; i < generations_[g].size(); ++i) {
      all.push_back(ref(g, i));
    }
  }
  const std::size_t take = std::min(m, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take),
                    all.end(), evaluation_less);
  all.resize(take);
  return all;
}

EvaluationRef ArchiveBuffer::best_within(std::size_t k) const {
  return ref(k, at(k).best_position());
}

EvaluationRef ArchiveBuffer::prefix_best(std::size_t k) const {
  check_index(k);
  const auto [g, p] = prefix_best_[k];
  return ref(g, p);
}

}  // namespace evollm
