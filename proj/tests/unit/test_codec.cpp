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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "codec/codec.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

using namespace evollm;

TEST_SUITE("codec") {
  TEST_CASE("reference bins") {
    const DiscretizationSpec spec;
    CHECK(encode(-0.61939515, spec) == 397);
    CHECK(encode(0.2329004, spec) == 539);
    CHECK(encode(-3.0, spec) == 0);
    CHECK(encode(3.0, spec) == 1000);
    CHECK(decode(413, spec) == doctest::Approx(-0.522).epsilon(1e-12));
    CHECK(decode(543, spec) == doctest::Approx(0.258).epsilon(1e-12));
    CHECK(decode(1000, spec) == 3.0);
    CHECK(decode(0, spec) == -3.0);
    const std::vector<std::int64_t> bins{397, 539};
    const auto x = decode_vector(bins, spec);
    CHECK(x[0] == doctest::Approx(-0.618).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(0.234).epsilon(1e-12));
    const std::vector<double> mu{-0.61939515, 0.2329004};
    CHECK(encode_vector(mu, spec) == bins);
  }

  TEST_CASE("rounding is half away from zero and clamps") {
    const DiscretizationSpec spec{0.0, 10.0, 10};
    CHECK(encode(2.5, spec) == 3);
    CHECK(encode(2.4999, spec) == 2);
    CHECK(encode(-7.0, spec) == 0);
    CHECK(encode(70.0, spec) == 10);
    bool clamped = false;
    CHECK(decode(11, spec, &clamped) == 10.0);
    CHECK(clamped);
    clamped = false;
    CHECK(decode(-1, spec, &clamped) == 0.0);
    CHECK(clamped);
    clamped = false;
    decode(5, spec, &clamped);
    CHECK_FALSE(clamped);
  }

  TEST_CASE("errors") {
    const DiscretizationSpec spec;
    CHECK_THROWS_AS(encode(std::numeric_limits<double>::quiet_NaN(), spec), CodecError);
    CHECK_THROWS_AS(encode(std::numeric_limits<double>::infinity(), spec), CodecError);
    const std::vector<double> x{0.0, std::numeric_limits<double>::quiet_NaN()};
    try {
      encode_vector(x, spec);
      FAIL("expected CodecError");
    } catch (const CodecError& e) {
      CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CHECK_THROWS_AS((DiscretizationSpec{0.0, 1.0, 1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((DiscretizationSpec{1.0, 1.0, 100}.validate()), InvalidArgument);
  }

  TEST_CASE("round trip, idempotence and monotonicity") {
    for (std::int64_t r : {50, 100, 1000, 10000}) {
      const DiscretizationSpec spec{-3.0, 3.0, r};
      Rng rng(static_cast<std::uint64_t>(r));
      std::vector<double> xs(20000);
      for (double& x : xs) x = rng.uniform(-3.0, 3.0);
      for (double x : xs) {
        const double y = decode(encode(x, spec), spec);
        CHECK(std::abs(y - x) <= spec.bin_width() / 2 + 1e-12);
        CHECK(decode(encode(y, spec), spec) == y);
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t i = 1; i < xs.size(); ++i) {
        CHECK(encode(xs[i - 1], spec) <= encode(xs[i], spec));
      }
      for (std::int64_t i = 0; i <= r; ++i) CHECK(encode(decode(i, spec), spec) == i);
    }
  }

  TEST_CASE("digits") {
    CHECK(DiscretizationSpec{}.digits() == 4);
    CHECK((DiscretizationSpec{-3, 3, 50}.digits()) == 2);
  }
}
