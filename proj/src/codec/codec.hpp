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
#include <span>
#include <vector>

namespace evollm {

/// Uniform grid over [lower, upper] with bins 0..resolution (inclusive), so
/// bin i sits at lower + i * (upper - lower) / resolution.
struct DiscretizationSpec {
  double lower = -3.0;
  double upper = 3.0;
  std::int64_t resolution = 1000;

  double bin_width() const noexcept {
    return (upper - lower) / static_cast<double>(resolution);
  }
  /// Decimal digits of the largest bin index.
  int digits() const noexcept;
  void validate() const;
};

/// Nearest bin (half away from zero), clamped to [0, R]. Throws CodecError on
/// non-finite input.
std::int64_t encode(double x, const DiscretizationSpec& spec);

/// Bin centre. Out-of-range bins are clamped first and *clamped is set.
double decode(std::int64_t bin, const DiscretizationSpec& spec,
              bool* clamped = nullptr);

std::int64_t clamp_bin(std::int64_t bin, const DiscretizationSpec& spec,
                       bool* clamped = nullptr);

/// Element-wise encode; errors name the offending index.
std::vector<std::int64_t> encode_vector(std::span<const double> x,
                                        const DiscretizationSpec& spec);
std::vector<double> decode_vector(std::span<const std::int64_t> bins,
                                  const DiscretizationSpec& spec,
                                  bool* clamped = nullptr);

}  // namespace evollm
