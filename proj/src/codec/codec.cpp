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

#include "codec/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace evollm {

int DiscretizationSpec::digits() const noexcept {
  int d = 1;
  for (std::int64_t r = resolution; r >= 10; r /= 10) ++d;
  return d;
}

void DiscretizationSpec::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw InvalidArgument("discretization needs finite lower < upper");
  }
  if (resolution < 2) {
    throw InvalidArgument("discretization resolution must be >= 2, got " +
                          std::to_string(resolution));
  }
  if (!(bin_width() > 0.0)) throw InvalidArgument("bin width underflows to zero");
}

std::int64_t clamp_bin(std::int64_t bin, const DiscretizationSpec& spec,
                       bool* clamped) {
  const std::int64_t c = std::clamp<std::int64_t>(bin, 0, spec.resolution);
  if (clamped != nullptr && c != bin) *clamped = true;
  return c;
}

std::int64_t encode(double x, const DiscretizationSpec& spec) {
  if (!std::isfinite(x)) throw CodecError("cannot encode non-finite value");
  const double scaled =
      (x - spec.lower) * static_cast<double>(spec.resolution) /
      (spec.upper - spec.lower);
  const double r = static_cast<double>(spec.resolution);
  // std::round rounds halfway cases away from zero.
  return static_cast<std::int64_t>(std::round(std::clamp(scaled, 0.0, r)));
}

double decode(std::int64_t bin, const DiscretizationSpec& spec, bool* clamped) {
  const std::int64_t b = clamp_bin(bin, spec, clamped);
  // Multiply before dividing so that bin R lands exactly on the upper bound.
  return spec.lower + (spec.upper - spec.lower) * static_cast<double>(b) /
                          static_cast<double>(spec.resolution);
}

std::vector<std::int64_t> encode_vector(std::span<const double> x,
                                        const DiscretizationSpec& spec) {
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    try {
      out[i] = encode(x[i], spec);
    } catch (const CodecError& e) {
      throw CodecError(std::string(e.what()) + " at index " + std::to_string(i));
    }
  }
  return out;
}

std::vector<double> decode_vector(std::span<const std::int64_t> bins,
                                  const DiscretizationSpec& spec,
                                  bool* clamped) {
  std::vector<double> out(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) out[i] = decode(bins[i], spec, clamped);
  return out;
}

}  // namespace evollm
