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
#include <charconv>
#include <string>

#include "core/error.hpp"
#include "prompt/prompt.hpp"

namespace evollm {

ParsedProposal parse_proposal(std::string_view completion, std::size_t width,
                              const DiscretizationSpec& spec) {
  ParsedProposal out;
  out.raw_text = std::string(completion);

  std::size_t begin = 0;
  while (begin < completion.size() &&
         std::isspace(static_cast<unsigned char>(completion[begin]))) {
    ++begin;
  }
  std::string_view body = completion.substr(begin);
  body = body.substr(0, std::min(body.find(';'), body.find('\n')));

  std::size_t i = 0;
  while (i < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
    const std::string_view token = body.substr(i, j - i);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ptr != token.data() + token.size() ||
        (ec != std::errc() && ec != std::errc::result_out_of_range)) {
      throw ParseFailure("non-integer token '" + std::string(token) + "'", out.raw_text);
    }
    if (ec == std::errc::result_out_of_range) {
      value = token.front() == '-' ? -1 : spec.resolution + 1;
    }
    out.bins.push_back(clamp_bin(value, spec, &out.clamped));
    i = j;
  }
  if (out.bins.empty()) throw ParseFailure("no integers in completion", out.raw_text);
  if (out.bins.size() != width) {
    throw ParseFailure("expected " + std::to_string(width) + " integers, found " +
                           std::to_string(out.bins.size()),
                       out.raw_text);
  }
  return out;
}

}  // namespace evollm
