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

// Randomized render check shared by the unit and acceptance suites.

#include <cstdlib>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "llm/backend.hpp"
#include "prompt/grammar.hpp"
#include "prompt/prompt.hpp"

namespace evollm::testing {

inline const std::regex& row_regex() {
  static const std::regex re(R"(^-?\d+(\.\d+)?: \d+( \d+)*;\d+( \d+)*(,[01])?(,\d+( \d+)*(,[01])?)*$)");
  return re;
}

inline const std::regex& query_regex() {
  static const std::regex re(R"(^-?\d+(\.\d+)?: $)");
  return re;
}

struct RandomCase {
  ArchiveBuffer buffer;
  PromptConfig config;
  DiscretizationSpec spec;
  DimBlock block;
};

inline RandomCase random_case(std::uint64_t seed) {
  Rng rng(mix_seed(seed, "property-case"));
  const std::size_t dims = 1 + rng.uniform_index(6);
  ArchiveBuffer buffer(SearchBounds::uniform(dims, -3.0, 3.0));
  const std::size_t gens = 1 + rng.uniform_index(15);
  const std::size_t n = 1 + rng.uniform_index(8);
  const bool ties = rng.uniform() < 0.3;
  for (std::size_t g = 0; g < gens; ++g) {
    Population pop(n, dims);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (double& v : pop.row(i)) {
        v = rng.uniform(-3.0, 3.0);
        s += v * v;
      }
      f[i] = ties ? std::floor(s) : s;
    }
    buffer.append(pop, f);
  }
  PromptConfig c;
  c.context_generations = 1 + rng.uniform_index(8);
  c.context_members = 1 + rng.uniform_index(8);
  c.generation_selection = static_cast<GenerationSelection>(rng.uniform_index(3));
  c.candidate_selection = static_cast<CandidateSelection>(rng.uniform_index(3));
  c.generation_sorting = static_cast<Sorting>(rng.uniform_index(2));
  c.candidate_sorting = static_cast<Sorting>(rng.uniform_index(2));
  c.improvement_indicator = rng.uniform() < 0.5;
  c.uniqueness_filtering = rng.uniform() < 0.5;
  c.improvement_query = rng.uniform() < 0.5;
  c.fitness_decimals = static_cast<int>(rng.uniform_index(5));
  c.label_mode = static_cast<LabelMode>(rng.uniform_index(2));
  const std::int64_t resolutions[] = {50, 100, 1000, 10000};
  DiscretizationSpec spec{-3.0, 3.0, resolutions[rng.uniform_index(4)]};
  const std::size_t start = rng.uniform_index(dims);
  const std::size_t end = start + 1 + rng.uniform_index(dims - start);
  return {std::move(buffer), c, spec, {start, end}};
}

/// Empty on success, otherwise a description of the first violation.
inline std::string check_random_render(std::uint64_t seed) {
  const RandomCase rc = random_case(seed);
  const std::string tag = "case " + std::to_string(seed) + ": ";
  Rng render_rng(seed);
  const RenderedPrompt p = render_prompt(rc.buffer, rc.config, rc.spec, rc.block, render_rng);
  Rng again_rng(seed);
  if (render_prompt(rc.buffer, rc.config, rc.spec, rc.block, again_rng).text != p.text) {
    return tag + "render is not a pure function of its inputs";
  }

  std::vector<std::string> lines;
  std::stringstream ss(p.text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  const bool ends_with_newline = !p.text.empty() && p.text.back() == '\n';
  const std::size_t row_lines = rc.config.improvement_query ? lines.size() - 1 : lines.size();
  if (rc.config.improvement_query == ends_with_newline) return tag + "query line placement";
  if (row_lines == 0 || row_lines != p.rows) return tag + "row count mismatch";
  for (std::size_t i = 0; i < row_lines; ++i) {
    if (!std::regex_match(lines[i], row_regex())) return tag + "row does not match: " + lines[i];
  }
  if (rc.config.improvement_query && !std::regex_match(lines.back(), query_regex())) {
    return tag + "query does not match: " + lines.back();
  }
  const IndicatorMode mode = rc.config.improvement_indicator ? IndicatorMode::kOn : IndicatorMode::kOff;
  try {
    const ParsedPrompt parsed = parse_prompt(p.text, mode);
    if (render_parsed(parsed) != p.text) return tag + "grammar re-render differs";
    if (parsed.width != rc.block.width()) return tag + "parsed width differs";
  } catch (const std::exception& e) {
    return tag + "grammar parse failed: " + e.what();
  }

  // Monotonicity, checked against the buffer's stored fitness values.
  Rng rows_rng(seed);
  const auto rows = select_rows(rc.buffer, rc.config, rc.spec, rc.block, rows_rng);
  if (rc.config.generation_sorting == Sorting::kImproving) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].label_fitness > rows[i - 1].label_fitness) return tag + "row labels increase";
    }
  }
  if (rc.config.candidate_sorting == Sorting::kImproving) {
    for (const ContextRow& row : rows) {
      for (std::size_t i = 1; i < row.members.size(); ++i) {
        if (row.members[i].fitness > row.members[i - 1].fitness) return tag + "member fitness increases";
      }
    }
  }

  // Echoing the last anchor parses back to that anchor.
  EchoBestBackend echo;
  CompletionRequest req;
  req.prompt = p.text;
  const std::string completion = echo.complete(req);
  const ParsedProposal proposal = parse_proposal(completion, rc.block.width(), rc.spec);
  const auto& anchor = rows.back().anchor.candidate;
  const std::vector<std::int64_t> expected =
      encode_vector(anchor.subspan(rc.block.start, rc.block.width()), rc.spec);
  if (proposal.bins != expected) return tag + "echo round trip differs";
  return {};
}

}  // namespace evollm::testing
