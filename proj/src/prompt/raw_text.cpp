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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "prompt/prompt.hpp"

namespace evollm {
namespace {

constexpr std::string_view kPreamble =
    "You are helping to minimize an unknown function. Below are solutions "
    "that have already been evaluated together with their function values. "
    "Lower values are better. The list is ordered from worst to best.\n\n";

std::string format_vector(std::span<const double> x, const DimBlock& block) {
  std::string out = "[";
  char buf[64];
  for (std::size_t d = block.start; d < block.end; ++d) {
    if (d != block.start) out += ", ";
    std::snprintf(buf, sizeof(buf), "%.4f", x[d]);
    out += buf;
  }
  out += ']';
  return out;
}

}  // namespace

RenderedPrompt render_raw_text_prompt(const ArchiveBuffer& buffer,
                                      const PromptConfig& config,
                                      const DimBlock& block, Rng& rng) {
  if (buffer.empty()) throw RenderError("cannot render a prompt from an empty buffer");
  if (block.start >= block.end || block.end > buffer.dims()) {
    throw InvalidArgument("dimension block outside the search space");
  }
  // Selection is shared with the discretized renderer; the spec only matters
  // for uniqueness filtering, where the default grid is adequate.
  const std::vector<ContextRow> rows =
      select_rows(buffer, config, DiscretizationSpec{}, block, rng);
  std::vector<EvaluationRef> shown;
  for (const ContextRow& row : rows) {
    shown.insert(shown.end(), row.members.begin(), row.members.end());
  }
  if (config.candidate_sorting == Sorting::kImproving) {
    std::stable_sort(shown.begin(), shown.end(),
                     [](const EvaluationRef& a, const EvaluationRef& b) {
                       return evaluation_less(b, a);
                     });
  }

  RenderedPrompt out;
  out.block = block;
  out.rows = shown.size();
  out.text = kPreamble;
  char buf[64];
  for (const EvaluationRef& e : shown) {
    std::snprintf(buf, sizeof(buf), "%.4f", e.fitness);
    out.text += "solution: " + format_vector(e.candidate, block) + " value: " + buf + "\n";
  }
  out.text += "\nPropose a new solution with " + std::to_string(block.width()) +
              (block.width() == 1 ? " coordinate" : " coordinates");
  out.query_fitness = std::numeric_limits<double>::quiet_NaN();
  if (config.improvement_query) {
    out.query_fitness = compute_query_fitness(buffer.best().fitness, config, rng);
    std::snprintf(buf, sizeof(buf), "%.4f", out.query_fitness);
    out.text += " whose value is about " + std::string(buf);
  } else {
    out.text += " whose value is lower than all of the above";
  }
  out.text +=
      ". Reply with the solution only, formatted as [x1, x2, ...].\nsolution: ";
  return out;
}

std::vector<double> parse_raw_proposal(std::string_view completion,
                                       std::size_t width) {
  const std::string raw(completion);
  std::string_view body = completion;
  const auto open = body.find('[');
  if (open != std::string_view::npos) {
    const auto close = body.find(']', open);
    if (close == std::string_view::npos) {
      throw ParseFailure("unterminated '[' in raw proposal", raw);
    }
    body = body.substr(open + 1, close - open - 1);
  } else {
    const auto nl = body.find('\n');
    if (nl != std::string_view::npos) body = body.substr(0, nl);
  }
  std::vector<double> values;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v)) {
      throw ParseFailure("non-numeric token '" + token + "' in raw proposal", raw);
    }
    values.push_back(v);
    token.clear();
  };
  for (char c : body) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (values.size() != width) {
    throw ParseFailure("expected " + std::to_string(width) + " numbers, found " +
                           std::to_string(values.size()),
                       raw);
  }
  return values;
}

}  // namespace evollm
