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

#include "prompt/prompt.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "core/error.hpp"

namespace evollm {
namespace {

// Worst first, best last; ties put the ranking winner last.
bool worse_first(const EvaluationRef& a, const EvaluationRef& b) {
  return evaluation_less(b, a);
}

std::vector<std::size_t> generation_priority(const ArchiveBuffer& buffer,
                                             const PromptConfig& config,
                                             Rng& rng) {
  const std::size_t n = buffer.size();
  std::vector<std::size_t> order(n);
  switch (config.generation_selection) {
    case GenerationSelection::kLast:
      for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
      break;
    case GenerationSelection::kBest: {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return evaluation_less(buffer.best_within(a),
                                                buffer.best_within(b));
                       });
      break;
    }
    case GenerationSelection::kRandom:
      std::iota(order.begin(), order.end(), std::size_t{0});
      rng.shuffle(std::span<std::size_t>(order));
      break;
  }
  return order;
}

double label_fitness(const ArchiveBuffer& buffer, std::size_t k,
                     LabelMode mode) {
  return mode == LabelMode::kWithinGeneration ? buffer.best_within(k).fitness
                                              : buffer.prefix_best(k).fitness;
}

}  // namespace

std::vector<DimBlock> partition_blocks(std::size_t dims, std::size_t block_size) {
  if (dims == 0) throw InvalidArgument("cannot partition zero dimensions");
  if (block_size == 0 || block_size > dims) {
    throw InvalidArgument("block_size must be within [1, " +
                          std::to_string(dims) + "]");
  }
  std::vector<DimBlock> blocks;
  for (std::size_t s = 0; s < dims; s += block_size) {
    blocks.push_back({s, std::min(s + block_size, dims)});
  }
  return blocks;
}

std::vector<EvaluationRef> select_candidates(const ArchiveBuffer& buffer,
                                             std::size_t k,
                                             const PromptConfig& config,
                                             Rng& rng) {
  const Generation& gen = buffer.at(k);
  const std::size_t m = config.context_members;
  std::vector<EvaluationRef> members;
  switch (config.candidate_selection) {
    case CandidateSelection::kRandom:
      for (std::size_t pos : rng.sample_without_replacement(gen.size(), m)) {
        members.push_back(buffer.ref(k, pos));
      }
      break;
    case CandidateSelection::kBestWithin: {
      for (std::size_t i = 0; i < gen.size(); ++i) members.push_back(buffer.ref(k, i));
      std::sort(members.begin(), members.end(), evaluation_less);
      if (members.size() > m) members.resize(m);
      break;
    }
    case CandidateSelection::kBestUpTo:
      members = buffer.best_up_to(k, m);
      break;
  }
  if (config.candidate_sorting == Sorting::kImproving) {
    std::sort(members.begin(), members.end(), worse_first);
  } else {
    rng.shuffle(std::span<EvaluationRef>(members));
  }
  return members;
}

std::vector<ContextRow> select_rows(const ArchiveBuffer& buffer,
                                    const PromptConfig& config,
                                    const DiscretizationSpec& spec,
                                    const DimBlock& block, Rng& rng) {
  if (buffer.empty()) throw RenderError("cannot build a prompt from an empty buffer");
  std::vector<ContextRow> rows;
  std::set<std::string> seen;
  for (std::size_t k : generation_priority(buffer, config, rng)) {
    if (rows.size() == config.context_generations) break;
    ContextRow row{k, label_fitness(buffer, k, config.label_mode),
                   buffer.prefix_best(k), select_candidates(buffer, k, config, rng)};
    if (config.uniqueness_filtering &&
        !seen.insert(format_row(row, config, spec, block)).second) {
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (config.generation_sorting == Sorting::kImproving) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ContextRow& a, const ContextRow& b) {
                       if (a.label_fitness != b.label_fitness) {
                         return a.label_fitness > b.label_fitness;
                       }
                       return a.generation > b.generation;
                     });
  } else {
    rng.shuffle(std::span<ContextRow>(rows));
  }
  return rows;
}

std::vector<std::size_t> select_generations(const ArchiveBuffer& buffer,
                                            const PromptConfig& config,
                                            const DiscretizationSpec& spec,
                                            const DimBlock& block, Rng& rng) {
  std::vector<std::size_t> out;
  for (const ContextRow& row : select_rows(buffer, config, spec, block, rng)) {
    out.push_back(row.generation);
  }
  return out;
}

}  // namespace evollm
