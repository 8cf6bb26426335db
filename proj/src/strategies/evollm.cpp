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
#include <chrono>
#include <future>
#include <string>

#include "core/error.hpp"
#include "core/hashing.hpp"
#include "prompt/prompt.hpp"
#include "strategies/strategy.hpp"

namespace evollm {

namespace {

struct BlockCall {
  DimBlock block;
  RenderedPrompt prompt;
  CompletionRequest request;
  std::string completion;
  std::string error;
  bool backend_failed = false;
  double latency_ms = 0.0;
};

void call_backend(Backend& backend, BlockCall& call, bool timed) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    call.completion = backend.complete(call.request);
  } catch (const BackendFailure& e) {
    call.backend_failed = true;
    call.error = e.what();
  }
  if (timed) {
    call.latency_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  }
}

}  // namespace

EvoLlm::EvoLlm(SearchBounds bounds, std::size_t population_size,
               const StrategyConfig& config, std::uint64_t seed,
               std::shared_ptr<Backend> backend, double temperature_low,
               double temperature_high)
    : Strategy(std::move(bounds), population_size, config, seed),
      prompt_(config.prompt),
      codec_(config.codec),
      block_size_(config.block_size == 0 ? bounds_.dims() : config.block_size),
      snap_(config.snap_to_incumbent),
      backend_(std::move(backend)),
      prompt_rng_(mix_seed(seed, "prompt")),
      temperature_low_(temperature_low),
      temperature_high_(temperature_high) {
  if (!backend_) throw ConfigError("the evollm strategy needs a backend");
  if (!(temperature_low_ >= 0.0 && temperature_low_ <= temperature_high_)) {
    throw ConfigError("temperature range must satisfy 0 <= low <= high");
  }
}

void EvoLlm::update(const Generation&, double) {
  const bool raw = prompt_.representation == Representation::kRawText;
  std::vector<BlockCall> calls;
  for (const DimBlock& block : partition_blocks(bounds_.dims(), block_size_)) {
    BlockCall call;
    call.block = block;
    call.prompt = raw ? render_raw_text_prompt(buffer_, prompt_, block, prompt_rng_)
                      : render_prompt(buffer_, prompt_, codec_, block, prompt_rng_);
    call.request.prompt = call.prompt.text;
    call.request.temperature = prompt_rng_.uniform(temperature_low_, temperature_high_);
    call.request.max_tokens =
        raw ? static_cast<int>(block.width() * 12 + 8) : default_max_tokens(block.width(), codec_);
    if (raw) call.request.stop = {"\n"};
    calls.push_back(std::move(call));
  }

  const bool timed = !backend_->offline();
  if (timed && calls.size() > 1) {
    std::vector<std::future<void>> pending;
    pending.reserve(calls.size());
    for (BlockCall& call : calls) {
      pending.push_back(std::async(std::launch::async, [this, &call, timed] {
        call_backend(*backend_, call, timed);
      }));
    }
    for (auto& f : pending) f.get();
  } else {
    for (BlockCall& call : calls) call_backend(*backend_, call, timed);
  }

  std::vector<double> next = state_.mean;
  nlohmann::json blocks = nlohmann::json::array();
  std::size_t failed = 0;
  for (BlockCall& call : calls) {
    const DimBlock& b = call.block;
    std::string status = "ok";
    bool clamped = false;
    bool snapped = false;
    bool ok = !call.backend_failed;
    if (!ok) status = "backend_failure";
    if (ok) {
      try {
        if (raw) {
          std::vector<double> x = parse_raw_proposal(call.completion, b.width());
          for (std::size_t j = 0; j < b.width(); ++j) {
            const std::size_t d = b.start + j;
            const double lo = bounds_.lower[d];
            const double hi = bounds_.upper[d];
            if (x[j] < lo || x[j] > hi) clamped = true;
            next[d] = std::min(std::max(x[j], lo), hi);
          }
        } else {
          ParsedProposal p = parse_proposal(call.completion, b.width(), codec_);
          clamped = p.clamped;
          const std::span<const double> best(state_.best_solution.data() + b.start, b.width());
          if (snap_ && p.bins == encode_vector(best, codec_)) {
            snapped = true;
            for (std::size_t j = 0; j < b.width(); ++j) next[b.start + j] = best[j];
          } else {
            const std::vector<double> x = decode_vector(p.bins, codec_);
            for (std::size_t j = 0; j < b.width(); ++j) next[b.start + j] = x[j];
          }
        }
      } catch (const ParseFailure& e) {
        ok = false;
        status = "parse_failure";
        call.error = e.what();
      }
    }
    if (!ok) {
      ++failed;
      for (std::size_t d = b.start; d < b.end; ++d) next[d] = state_.best_solution[d];
    }
    blocks.push_back({{"start", b.start},
                      {"end", b.end},
                      {"prompt_sha256", sha256_hex(call.prompt.text)},
                      {"completion", call.completion},
                      {"status", status},
                      {"error", call.error},
                      {"clamped", clamped},
                      {"snapped", snapped},
                      {"temperature", call.request.temperature},
                      {"latency_ms", call.latency_ms}});
  }

  bounds_.clip(next);
  state_.mean = std::move(next);
  queries_ += calls.size();
  fallbacks_ += failed;
  step_info_["blocks"] = std::move(blocks);
  step_info_["fallbacks"] = failed;
  step_info_["fallback_rate"] =
      calls.empty() ? 0.0 : static_cast<double>(failed) / static_cast<double>(calls.size());
  step_info_["queries"] = calls.size();
}

}  // namespace evollm
