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

#include "prompt/prompt_config.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace evollm {

void PromptConfig::validate() const {
  if (context_generations == 0) throw InvalidArgument("context_generations must be >= 1");
  if (context_members == 0) throw InvalidArgument("context_members must be >= 1");
  if (!(query_factor_low > 0.0) || !(query_factor_low <= query_factor_high) ||
      !std::isfinite(query_factor_high)) {
    throw InvalidArgument("query factor range must satisfy 0 < low <= high");
  }
  if (fitness_decimals < 0 || fitness_decimals > 12) {
    throw InvalidArgument("fitness_decimals must be within [0, 12]");
  }
}

std::string_view to_string(GenerationSelection v) {
  switch (v) {
    case GenerationSelection::kRandom: return "random";
    case GenerationSelection::kLast: return "last";
    case GenerationSelection::kBest: return "best";
  }
  return "?";
}

std::string_view to_string(CandidateSelection v) {
  switch (v) {
    case CandidateSelection::kRandom: return "random";
    case CandidateSelection::kBestWithin: return "best_within";
    case CandidateSelection::kBestUpTo: return "best_up_to";
  }
  return "?";
}

std::string_view to_string(Sorting v) {
  return v == Sorting::kImproving ? "improving" : "random";
}

std::string_view to_string(LabelMode v) {
  return v == LabelMode::kWithinGeneration ? "within_generation" : "up_to_generation";
}

std::string_view to_string(Representation v) {
  return v == Representation::kDiscretized ? "discretized" : "raw_text";
}

std::optional<GenerationSelection> parse_generation_selection(std::string_view s) {
  if (s == "random") return GenerationSelection::kRandom;
  if (s == "last") return GenerationSelection::kLast;
  if (s == "best") return GenerationSelection::kBest;
  return std::nullopt;
}

std::optional<CandidateSelection> parse_candidate_selection(std::string_view s) {
  if (s == "random") return CandidateSelection::kRandom;
  if (s == "best_within") return CandidateSelection::kBestWithin;
  if (s == "best_up_to" || s == "best_across") return CandidateSelection::kBestUpTo;
  return std::nullopt;
}

std::optional<Sorting> parse_sorting(std::string_view s) {
  if (s == "improving") return Sorting::kImproving;
  if (s == "random") return Sorting::kRandom;
  return std::nullopt;
}

std::optional<LabelMode> parse_label_mode(std::string_view s) {
  if (s == "within_generation") return LabelMode::kWithinGeneration;
  if (s == "up_to_generation") return LabelMode::kUpToGeneration;
  return std::nullopt;
}

std::optional<Representation> parse_representation(std::string_view s) {
  if (s == "discretized") return Representation::kDiscretized;
  if (s == "raw_text") return Representation::kRawText;
  return std::nullopt;
}

}  // namespace evollm
