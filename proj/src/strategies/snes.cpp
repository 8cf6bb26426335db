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
#include <cmath>
#include <numeric>

#include "strategies/strategy.hpp"

namespace evollm {

std::vector<double> rank_utilities(std::span<const double> fitness) {
  const std::size_t n = fitness.size();
  std::vector<double> u(n, 0.0);
  if (n == 0) return u;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });

  std::vector<double> by_rank(n);
  const double top = std::log(static_cast<double>(n) / 2.0 + 1.0);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    by_rank[r] = std::max(0.0, top - std::log(static_cast<double>(r + 1)));
    total += by_rank[r];
  }
  for (std::size_t r = 0; r < n; ++r) {
    by_rank[r] = by_rank[r] / total - 1.0 / static_cast<double>(n);
  }
  for (std::size_t r = 0; r < n;) {
    std::size_t end = r + 1;
    while (end < n && fitness[order[end]] == fitness[order[r]]) ++end;
    double sum = 0.0;
    for (std::size_t j = r; j < end; ++j) sum += by_rank[j];
    const double shared = sum / static_cast<double>(end - r);
    for (std::size_t j = r; j < end; ++j) u[order[j]] = shared;
    r = end;
  }
  return u;
}

Snes::Snes(SearchBounds bounds, std::size_t population_size,
           const StrategyConfig& config, std::uint64_t seed)
    : Strategy(std::move(bounds), population_size, config, seed),
      scales_(bounds_.dims(), config.snes.init_sigma),
      mirrored_(config.snes.mirrored) {
  const double d = static_cast<double>(bounds_.dims());
  lr_mean_ = config.snes.lr_mean.value_or(1.0);
  lr_sigma_ = config.snes.lr_sigma.value_or((3.0 + std::log(d)) / (5.0 * std::sqrt(d)));
  state_.sigma = config.snes.init_sigma;
}

Population Snes::sample(Rng& rng) {
  const std::size_t n = population_size_;
  const std::size_t d = bounds_.dims();
  noise_.assign(n * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      noise_[i * d + j] = (mirrored_ && i % 2 == 1) ? -noise_[(i - 1) * d + j]
                                                    : rng.normal();
    }
  }
  Population pop(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = pop.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = state_.mean[j] + scales_[j] * noise_[i * d + j];
    }
    clip_row(row);
  }
  return pop;
}

void Snes::update(const Generation& latest, double) {
  const std::size_t n = latest.size();
  const std::size_t d = bounds_.dims();
  if (noise_.size() != n * d) return;
  const std::vector<double> u = rank_utilities(latest.fitness);
  for (std::size_t j = 0; j < d; ++j) {
    double grad_mu = 0.0;
    double grad_sigma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = noise_[i * d + j];
      grad_mu += u[i] * s;
      grad_sigma += u[i] * (s * s - 1.0);
    }
    state_.mean[j] += lr_mean_ * scales_[j] * grad_mu;
    scales_[j] *= std::exp(lr_sigma_ / 2.0 * grad_sigma);
  }
  bounds_.clip(state_.mean);
  double mean_scale = 0.0;
  for (double s : scales_) mean_scale += s;
  state_.sigma = mean_scale / static_cast<double>(d);
  step_info_["scales"] = scales_;
}

}  // namespace evollm
