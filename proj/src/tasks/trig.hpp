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

#include <cmath>

namespace evollm::detail {

// Separate libm calls. GCC otherwise merges sin(x) and cos(x) into sincos(),
// whose last bit can differ from the reference simulators.
[[gnu::noinline]] inline double sin_ref(double x) { return std::sin(x); }
[[gnu::noinline]] inline double cos_ref(double x) { return std::cos(x); }

}  // namespace evollm::detail
