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
#include <cstdio>
#include <string>

#include "core/error.hpp"
#include "llm/backend.hpp"
#include "prompt/grammar.hpp"
#include "prompt/prompt.hpp"

namespace evollm {
namespace {

constexpr std::string_view kRawLine = "solution: [";

bool is_raw_text(std::string_view prompt) {
  return prompt.find(kRawLine) != std::string_view::npos;
}

// Solution vectors listed in a raw-text prompt, top to bottom.
std::vector<std::vector<double>> raw_solutions(std::string_view prompt) {
  std::vector<std::vector<double>> out;
  std::size_t pos = 0;
  while ((pos = prompt.find(kRawLine, pos)) != std::string_view::npos) {
    const std::size_t close = prompt.find(']', pos);
    if (close == std::string_view::npos) break;
    const std::string_view vec = prompt.substr(pos + kRawLine.size() - 1, close - pos - kRawLine.size() + 2);
    std::size_t width = static_cast<std::size_t>(std::count(vec.begin(), vec.end(), ',')) + 1;
    out.push_back(parse_raw_proposal(vec, width));
    pos = close;
  }
  return out;
}

std::string format_raw(const std::vector<double>& x) {
  std::string out = "[";
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i != 0) out += ", ";
    std::snprintf(buf, sizeof(buf), "%.4f", x[i]);
    out += buf;
  }
  return out + "]";
}

std::vector<std::vector<std::int64_t>> anchors_of(std::string_view prompt) {
  std::vector<std::vector<std::int64_t>> anchors;
  try {
    for (const PromptRow& row : parse_prompt(prompt).rows) anchors.push_back(row.anchor);
  } catch (const ParseFailure& e) {
    throw BackendFailure(std::string("oracle cannot read prompt: ") + e.what());
  }
  return anchors;
}

}  // namespace

ReplayBackend::ReplayBackend(std::vector<std::string> script)
    : script_(std::move(script)) {}

std::string ReplayBackend::complete(const CompletionRequest&) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (cursor_ >= script_.size()) throw BackendFailure("replay script exhausted");
  return script_[cursor_++];
}

std::string EchoBestBackend::complete(const CompletionRequest& request) {
  if (is_raw_text(request.prompt)) {
    const auto solutions = raw_solutions(request.prompt);
    if (solutions.empty()) throw BackendFailure("prompt lists no solutions");
    return format_raw(solutions.back());
  }
  const auto anchors = anchors_of(request.prompt);
  if (anchors.empty()) throw BackendFailure("prompt has no rows");
  return format_bins(anchors.back());
}

std::vector<std::int64_t> oracle_extrapolate(
    const std::vector<std::vector<std::int64_t>>& anchors,
    std::int64_t resolution) {
  if (anchors.empty()) throw BackendFailure("no parseable rows to extrapolate");
  const auto& last = anchors.back();
  if (anchors.size() == 1) return last;
  const auto& prev = anchors[anchors.size() - 2];
  if (prev.size() != last.size()) throw BackendFailure("anchor widths differ");
  std::vector<std::int64_t> out(last.size());
  for (std::size_t d = 0; d < last.size(); ++d) {
    out[d] = std::clamp<std::int64_t>(2 * last[d] - prev[d], 0, resolution);
  }
  return out;
}

std::string ExtrapolateBackend::complete(const CompletionRequest& request) {
  if (is_raw_text(request.prompt)) {
    const auto solutions = raw_solutions(request.prompt);
    if (solutions.empty()) throw BackendFailure("prompt lists no solutions");
    if (solutions.size() == 1) return format_raw(solutions.back());
    const auto& last = solutions.back();
    const auto& prev = solutions[solutions.size() - 2];
    std::vector<double> next(last.size());
    for (std::size_t d = 0; d < last.size(); ++d) next[d] = 2.0 * last[d] - prev[d];
    return format_raw(next);
  }
  return format_bins(oracle_extrapolate(anchors_of(request.prompt), resolution_));
}

}  // namespace evollm
