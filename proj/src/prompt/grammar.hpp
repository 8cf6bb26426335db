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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evollm {

/// A context line read back from prompt text.
struct PromptRow {
  std::string label;
  std::vector<std::int64_t> anchor;
  std::vector<std::vector<std::int64_t>> members;
  std::vector<int> flags;  ///< one per member, empty without indicators
};

struct ParsedPrompt {
  std::vector<PromptRow> rows;
  std::optional<std::string> query_label;
  bool indicator = false;
  std::size_t width = 0;
};

enum class IndicatorMode { kAuto, kOn, kOff };

/// Strict reader for the discretized prompt format:
///
///   LBL: INT( INT)*;INT( INT)*[,0|1](,INT( INT)*[,0|1])*\n   (one or more)
///   [LBL: ]                                                  (query prefix)
///
/// All anchors and members share one width; improvement flags are either on
/// every member or on none. With width 1 the flag fields are ambiguous, so
/// kAuto then assumes flags when every second field is 0 or 1. Throws
/// ParseFailure with a line number on any deviation.
ParsedPrompt parse_prompt(std::string_view text,
                          IndicatorMode mode = IndicatorMode::kAuto);

/// Inverse of parse_prompt; render_parsed(parse_prompt(t)) == t.
std::string render_parsed(const ParsedPrompt& prompt);

bool matches_grammar(std::string_view text,
                     IndicatorMode mode = IndicatorMode::kAuto);

}  // namespace evollm
