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
#include <cstdio>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "prompt/prompt.hpp"

namespace evollm {
namespace {

void check_block(const ArchiveBuffer& buffer, const DimBlock& block) {
  if (block.start >= block.end || block.end > buffer.dims()) {
    throw InvalidArgument("dimension block [" + std::to_string(block.start) +
                          ", " + std::to_string(block.end) +
                          ") is not inside [0, " +
                          std::to_string(buffer.dims()) + ")");
  }
}

void append_bins(std::string& out, std::span<const double> x,
                 const DiscretizationSpec& spec, const DimBlock& block) {
  for (std::size_t d = block.start; d < block.end; ++d) {
    if (d != block.start) out += ' ';
    out += std::to_string(encode(x[d], spec));
  }
}

}  // namespace

std::string format_fitness(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string format_bins(std::span<const std::int64_t> bins) {
  std::string out;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(bins[i]);
  }
  out += ';';
  return out;
}

std::string format_row(const ContextRow& row, const PromptConfig& config,
                       const DiscretizationSpec& spec, const DimBlock& block) {
  std::string out = format_fitness(row.label_fitness, config.fitness_decimals);
  out += ": ";
  append_bins(out, row.anchor.candidate, spec, block);
  out += ';';
  for (std::size_t i = 0; i < row.members.size(); ++i) {
    const EvaluationRef& m = row.members[i];
    if (i != 0) out += ',';
    append_bins(out, m.candidate, spec, block);
    if (config.improvement_indicator) {
      // Only members that were sampled in this row's generation carry the
      // improvement mark; older members re-shown here are plain context.
      out += (m.improved && m.generation == row.generation) ? ",1" : ",0";
    }
  }
  return out;
}

double compute_query_fitness(double best_fitness, const PromptConfig& config,
                             Rng& rng) {
  const double factor = rng.uniform(config.query_factor_low, config.query_factor_high);
  const double target = best_fitness - std::abs(best_fitness) * (1.0 - factor);
  const double scale = std::pow(10.0, config.fitness_decimals);
  return std::round(target * scale) / scale;
}

RenderedPrompt render_prompt(const ArchiveBuffer& buffer,
                             const PromptConfig& config,
                             const DiscretizationSpec& spec,
                             const DimBlock& block, Rng& rng) {
  if (buffer.empty()) throw RenderError("cannot render a prompt from an empty buffer");
  check_block(buffer, block);
  RenderedPrompt out;
  out.block = block;
  const std::vector<ContextRow> rows = select_rows(buffer, config, spec, block, rng);
  for (const ContextRow& row : rows) {
    out.text += format_row(row, config, spec, block);
    out.text += '\n';
  }
  out.rows = rows.size();
  out.query_fitness = std::numeric_limits<double>::quiet_NaN();
  if (config.improvement_query) {
    out.query_fitness = compute_query_fitness(buffer.best().fitness, config, rng);
    out.text += format_fitness(out.query_fitness, config.fitness_decimals);
    out.text += ": ";
  }
  return out;
}

}  // namespace evollm
