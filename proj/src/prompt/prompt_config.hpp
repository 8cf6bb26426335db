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
#include <optional>
#include <string_view>

namespace evollm {

enum class GenerationSelection { kRandom, kLast, kBest };
enum class CandidateSelection { kRandom, kBestWithin, kBestUpTo };
enum class Sorting { kImproving, kRandom };
/// What a row's leading fitness label reports: the best fitness found inside
/// generation k (default, matches the reference transcripts) or the best
/// found in generations 0..k.
enum class LabelMode { kWithinGeneration, kUpToGeneration };
enum class Representation { kDiscretized, kRawText };

/// Context-construction settings for one model query. Defaults are the
/// recommended configuration: five most recent generations, each showing the
/// five best evaluations seen so far, sorted worst-to-best, with improvement
/// flags and a fitness query.
struct PromptConfig {
  std::size_t context_generations = 5;
  std::size_t context_members = 5;
  GenerationSelection generation_selection = GenerationSelection::kLast;
  CandidateSelection candidate_selection = CandidateSelection::kBestUpTo;
  Sorting generation_sorting = Sorting::kImproving;
  Sorting candidate_sorting = Sorting::kImproving;
  bool improvement_indicator = true;
  bool uniqueness_filtering = false;
  bool improvement_query = true;
  double query_factor_low = 0.5;
  double query_factor_high = 0.9;
  int fitness_decimals = 2;
  LabelMode label_mode = LabelMode::kWithinGeneration;
  Representation representation = Representation::kDiscretized;

  void validate() const;
};

std::string_view to_string(GenerationSelection v);
std::string_view to_string(CandidateSelection v);
std::string_view to_string(Sorting v);
std::string_view to_string(LabelMode v);
std::string_view to_string(Representation v);

std::optional<GenerationSelection> parse_generation_selection(std::string_view s);
std::optional<CandidateSelection> parse_candidate_selection(std::string_view s);
std::optional<Sorting> parse_sorting(std::string_view s);
std::optional<LabelMode> parse_label_mode(std::string_view s);
std::optional<Representation> parse_representation(std::string_view s);

}  // namespace evollm
