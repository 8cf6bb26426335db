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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "codec/codec.hpp"
#include "core/archive.hpp"
#include "core/rng.hpp"
#include "prompt/prompt_config.hpp"

namespace evollm {

/// Half-open dimension range [start, end).
struct DimBlock {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t width() const noexcept { return end - start; }
  bool operator==(const DimBlock&) const = default;
};

/// Contiguous partition: block j covers [j*B, min((j+1)*B, D)).
std::vector<DimBlock> partition_blocks(std::size_t dims, std::size_t block_size);

/// One context line before formatting.
struct ContextRow {
  std::size_t generation = 0;
  double label_fitness = 0.0;
  EvaluationRef anchor;                ///< best solution in generations 0..k
  std::vector<EvaluationRef> members;  ///< in render order
};

struct RenderedPrompt {
  std::string text;
  DimBlock block;
  /// Target fitness of the final query line; NaN when the query is disabled.
  double query_fitness = 0.0;
  std::size_t rows = 0;
};

/// Members shown for generation k, ordered per candidate_sorting (improving
/// puts the worst first and the best last).
std::vector<EvaluationRef> select_candidates(const ArchiveBuffer& buffer,
                                             std::size_t k,
                                             const PromptConfig& config,
                                             Rng& rng);

/// Chooses up to K generations, applies uniqueness filtering on the rendered
/// row for `block`, picks each row's members and orders the rows.
std::vector<ContextRow> select_rows(const ArchiveBuffer& buffer,
                                    const PromptConfig& config,
                                    const DiscretizationSpec& spec,
                                    const DimBlock& block, Rng& rng);

/// Ordered generation indices of select_rows (top row first).
std::vector<std::size_t> select_generations(const ArchiveBuffer& buffer,
                                            const PromptConfig& config,
                                            const DiscretizationSpec& spec,
                                            const DimBlock& block, Rng& rng);

/// `<LABEL>: <ANCHOR>;<MEMBERS>` without the trailing newline.
std::string format_row(const ContextRow& row, const PromptConfig& config,
                       const DiscretizationSpec& spec, const DimBlock& block);

/// Fixed-point rendering used for every fitness label.
std::string format_fitness(double value, int decimals);

/// best - |best| * (1 - factor), factor ~ U[low, high], rounded to the label
/// precision. For positive fitness this is best * factor.
double compute_query_fitness(double best_fitness, const PromptConfig& config,
                             Rng& rng);

/// Discretized prompt: one row per selected generation, each followed by a
/// newline, then the query prefix `<q>: ` when improvement_query is set.
/// Throws RenderError on an empty buffer.
RenderedPrompt render_prompt(const ArchiveBuffer& buffer,
                             const PromptConfig& config,
                             const DiscretizationSpec& spec,
                             const DimBlock& block, Rng& rng);

/// Natural-language prompt over raw floats (4 decimals), used as the
/// text-representation baseline.
RenderedPrompt render_raw_text_prompt(const ArchiveBuffer& buffer,
                                      const PromptConfig& config,
                                      const DimBlock& block, Rng& rng);

struct ParsedProposal {
  std::vector<std::int64_t> bins;
  bool clamped = false;
  std::string raw_text;
};

/// Reads the first whitespace-separated integer run that precedes ';' or the
/// end of the first line. Throws ParseFailure unless exactly `width`
/// integers are found.
ParsedProposal parse_proposal(std::string_view completion, std::size_t width,
                              const DiscretizationSpec& spec);

/// Parses `[x1, x2, ...]` (or the first line of numbers) from a completion of
/// the raw-text prompt. Throws ParseFailure.
std::vector<double> parse_raw_proposal(std::string_view completion,
                                       std::size_t width);

/// Bins rendered as `<INT( INT)*>;`, the proposal/target wire format.
std::string format_bins(std::span<const std::int64_t> bins);

}  // namespace evollm
