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
#include <numbers>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "tasks/problem.hpp"
#include "tasks/trig.hpp"

namespace evollm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDt = 0.2;
constexpr double kM1 = 1.0;
constexpr double kM2 = 1.0;
constexpr double kL1 = 1.0;
constexpr double kLc1 = 0.5;
constexpr double kLc2 = 0.5;
constexpr double kI1 = 1.0;
constexpr double kI2 = 1.0;
constexpr double kG = 9.8;
constexpr double kMaxVel1 = 4 * kPi;
constexpr double kMaxVel2 = 9 * kPi;
constexpr double kTorques[3] = {-1.0, 0.0, 1.0};

using State = std::array<double, 4>;

// The reference squares with pow(), which is not always x * x. The volatile
// exponent keeps the compiler from folding the call.
double square(double x) {
  volatile double two = 2.0;
  return std::pow(x, two);
}

// Left-to-right evaluation exactly as in the reference derivative function.
State dsdt(const State& s, double a) {
  const double theta1 = s[0];
  const double theta2 = s[1];
  const double dtheta1 = s[2];
  const double dtheta2 = s[3];
  const double d1 = kM1 * (kLc1 * kLc1) +
                    kM2 * (kL1 * kL1 + kLc2 * kLc2 + 2 * kL1 * kLc2 * detail::cos_ref(theta2)) +
                    kI1 + kI2;
  const double d2 = kM2 * (kLc2 * kLc2 + kL1 * kLc2 * detail::cos_ref(theta2)) + kI2;
  const double phi2 = kM2 * kLc2 * kG * detail::cos_ref(theta1 + theta2 - kPi / 2.0);
  const double phi1 = -kM2 * kL1 * kLc2 * square(dtheta2) * detail::sin_ref(theta2) -
                      2 * kM2 * kL1 * kLc2 * dtheta2 * dtheta1 * detail::sin_ref(theta2) +
                      (kM1 * kLc1 + kM2 * kL1) * kG * detail::cos_ref(theta1 - kPi / 2) + phi2;
  const double ddtheta2 =
      (a + d2 / d1 * phi1 - kM2 * kL1 * kLc2 * square(dtheta1) * detail::sin_ref(theta2) -
       phi2) /
      (kM2 * (kLc2 * kLc2) + kI2 - square(d2) / d1);
  const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
  return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

State axpy(const State& y, double h, const State& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

double wrap(double x, double m, double M) {
  const double diff = M - m;
  while (x > M) x = x - diff;
  while (x < m) x = x + diff;
  return x;
}

}  // namespace

void AcrobotEnv::reset(std::uint64_t seed) {
  Rng rng(mix_seed(seed, "acrobot"));
  for (double& v : state_) v = static_cast<float>(rng.uniform(-0.1, 0.1));
}

double AcrobotEnv::step(std::size_t action) {
  if (action > 2) throw InvalidArgument("acrobot action must be 0, 1 or 2");
  const double torque = kTorques[action];
  const double dt = kDt - 0.0;
  const double dt2 = dt / 2.0;
  const State& y0 = state_;
  const State k1 = dsdt(y0, torque);
  const State k2 = dsdt(axpy(y0, dt2, k1), torque);
  const State k3 = dsdt(axpy(y0, dt2, k2), torque);
  const State k4 = dsdt(axpy(y0, dt, k3), torque);
  State ns;
  for (std::size_t i = 0; i < 4; ++i) {
    ns[i] = y0[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  ns[0] = wrap(ns[0], -kPi, kPi);
  ns[1] = wrap(ns[1], -kPi, kPi);
  ns[2] = std::min(std::max(ns[2], -kMaxVel1), kMaxVel1);
  ns[3] = std::min(std::max(ns[3], -kMaxVel2), kMaxVel2);
  state_ = ns;
  return terminated() ? 0.0 : -1.0;
}

bool AcrobotEnv::terminated() const noexcept {
  return -detail::cos_ref(state_[0]) - detail::cos_ref(state_[1] + state_[0]) > 1.0;
}

std::array<double, 6> AcrobotEnv::observation() const {
  const State& s = state_;
  return {static_cast<float>(detail::cos_ref(s[0])), static_cast<float>(detail::sin_ref(s[0])),
          static_cast<float>(detail::cos_ref(s[1])), static_cast<float>(detail::sin_ref(s[1])),
          static_cast<float>(s[2]),           static_cast<float>(s[3])};
}

}  // namespace evollm
