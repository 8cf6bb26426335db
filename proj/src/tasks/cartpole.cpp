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

#include "core/error.hpp"
#include "core/rng.hpp"
#include "tasks/problem.hpp"
#include "tasks/trig.hpp"

namespace evollm {

namespace {

constexpr double kGravity = 9.8;
constexpr double kMassCart = 1.0;
constexpr double kMassPole = 0.1;
constexpr double kTotalMass = kMassPole + kMassCart;
constexpr double kLength = 0.5;
constexpr double kPoleMassLength = kMassPole * kLength;
constexpr double kForceMag = 10.0;
constexpr double kTau = 0.02;
constexpr double kThetaThreshold = 12 * 2 * std::numbers::pi / 360;
constexpr double kXThreshold = 2.4;

}  // namespace

void CartPoleEnv::reset(std::uint64_t seed) {
  Rng rng(mix_seed(seed, "cartpole"));
  for (double& v : state_) v = rng.uniform(-0.05, 0.05);
}

// Operation order mirrors the reference implementation so that results agree
// to the last bit.
double CartPoleEnv::step(std::size_t action) {
  if (action > 1) throw InvalidArgument("cartpole action must be 0 or 1");
  auto [x, x_dot, theta, theta_dot] = state_;
  const double force = action == 1 ? kForceMag : -kForceMag;
  const double costheta = detail::cos_ref(theta);
  const double sintheta = detail::sin_ref(theta);
  const double temp =
      (force + kPoleMassLength * (theta_dot * theta_dot) * sintheta) / kTotalMass;
  const double thetaacc =
      (kGravity * sintheta - costheta * temp) /
      (kLength * (4.0 / 3.0 - kMassPole * (costheta * costheta) / kTotalMass));
  const double xacc = temp - kPoleMassLength * thetaacc * costheta / kTotalMass;
  x = x + kTau * x_dot;
  x_dot = x_dot + kTau * xacc;
  theta = theta + kTau * theta_dot;
  theta_dot = theta_dot + kTau * thetaacc;
  state_ = {x, x_dot, theta, theta_dot};
  return 1.0;
}

bool CartPoleEnv::terminated() const noexcept {
  const double x = state_[0];
  const double theta = state_[2];
  return x < -kXThreshold || x > kXThreshold || theta < -kThetaThreshold ||
         theta > kThetaThreshold;
}

std::array<double, 4> CartPoleEnv::observation() const {
  std::array<double, 4> obs;
  for (std::size_t i = 0; i < 4; ++i) obs[i] = static_cast<float>(state_[i]);
  return obs;
}

}  // namespace evollm
