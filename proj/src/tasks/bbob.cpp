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

#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "tasks/problem.hpp"

namespace evollm {

std::optional<BbobFunction> parse_bbob_function(std::string_view name) {
  if (name == "sphere") return BbobFunction::kSphere;
  if (name == "rosenbrock") return BbobFunction::kRosenbrock;
  if (name == "discus") return BbobFunction::kDiscus;
  if (name == "rastrigin") return BbobFunction::kRastrigin;
  if (name == "schwefel") return BbobFunction::kSchwefel;
  return std::nullopt;
}

std::string_view to_string(BbobFunction f) {
  switch (f) {
    case BbobFunction::kSphere: return "sphere";
    case BbobFunction::kRosenbrock: return "rosenbrock";
    case BbobFunction::kDiscus: return "discus";
    case BbobFunction::kRastrigin: return "rastrigin";
    case BbobFunction::kSchwefel: return "schwefel";
  }
  return "unknown";
}

double bbob_evaluate(BbobFunction f, std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw EvaluationError("non-finite coordinate at index " + std::to_string(i));
    }
  }
  const std::size_t n = x.size();
  double s = 0.0;
  switch (f) {
    case BbobFunction::kSphere:
      for (double v : x) s += v * v;
      return s;
    case BbobFunction::kRosenbrock:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        s += 100.0 * a * a + b * b;
      }
      return s;
    case BbobFunction::kDiscus:
      if (n == 0) return 0.0;
      s = 1e6 * x[0] * x[0];
      for (std::size_t i = 1; i < n; ++i) s += x[i] * x[i];
      return s;
    case BbobFunction::kRastrigin:
      s = 10.0 * static_cast<double>(n);
      for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
      return s;
    case BbobFunction::kSchwefel:
      s = 418.9829 * static_cast<double>(n);
      for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
      return s;
  }
  throw EvaluationError("unknown function");
}

BbobProblem::BbobProblem(BbobFunction f, SearchBounds bounds,
                         std::optional<std::uint64_t> shift_seed)
    : f_(f), bounds_(std::move(bounds)) {
  bounds_.validate();
  if (shift_seed) {
    Rng rng(mix_seed(*shift_seed, "shift"));
    shift_.resize(bounds_.dims());
    for (double& o : shift_) o = rng.uniform(-1.0, 1.0);
  }
}

std::vector<double> BbobProblem::evaluate_batch(const Population& candidates,
                                                std::size_t) const {
  if (candidates.cols() != dims()) {
    throw ShapeError("candidate length " + std::to_string(candidates.cols()) +
                     " does not match dimension " + std::to_string(dims()));
  }
  std::vector<double> out(candidates.rows());
  std::vector<double> z(dims());
  for (std::size_t i = 0; i < candidates.rows(); ++i) {
    const auto row = candidates.row(i);
    for (std::size_t d = 0; d < z.size(); ++d) {
      z[d] = shift_.empty() ? row[d] : row[d] - shift_[d];
    }
    out[i] = bbob_evaluate(f_, z);
  }
  return out;
}

}  // namespace evollm
