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

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <random>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "tasks/problem.hpp"

using namespace evollm;

namespace {

// Independent one-line evaluators.
double ref_sphere(const std::vector<double>& x) { double s = 0; for (double v : x) s += v * v; return s; }
double ref_rosen(const std::vector<double>& x) { double s = 0; for (std::size_t i = 1; i < x.size(); ++i) s += 100 * std::pow(x[i] - std::pow(x[i - 1], 2), 2) + std::pow(1 - x[i - 1], 2); return s; }
double ref_discus(const std::vector<double>& x) { double s = 1e6 * x[0] * x[0]; for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i]; return s; }
double ref_rastrigin(const std::vector<double>& x) { double s = 10.0 * x.size(); for (double v : x) s += v * v - 10 * std::cos(2 * M_PI * v); return s; }
double ref_schwefel(const std::vector<double>& x) { double s = 418.9829 * x.size(); for (double v : x) s -= v * std::sin(std::sqrt(std::fabs(v))); return s; }

nlohmann::json load_fixture() {
  std::ifstream in(std::string(EVOLLM_TEST_DATA_DIR) + "/env_reference.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

std::array<double, 4> state4(const nlohmann::json& j) {
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

template <typename Env>
void replay_fixture(const nlohmann::json& episodes, double lo, double hi) {
  REQUIRE(episodes.size() == 50);
  for (const auto& ep : episodes) {
    CAPTURE(ep["seed"].get<int>());
    Env env;
    env.reset_to(state4(ep["initial_state"]));
    double ret = 0.0;
    std::size_t steps = 0;
    for (const auto& a : ep["actions"]) {
      REQUIRE_FALSE(env.terminated());
      ret += env.step(a.get<std::size_t>());
      ++steps;
    }
    CHECK(ret == ep["return"].get<double>());
    CHECK(steps == ep["steps"].get<std::size_t>());
    CHECK(env.terminated() == ep["terminated"].get<bool>());
    const auto final_state = state4(ep["final_state"]);
    for (std::size_t i = 0; i < 4; ++i) CHECK(env.state()[i] == final_state[i]);
    CHECK(ret >= lo);
    CHECK(ret <= hi);
  }
}

}  // namespace

TEST_SUITE("tasks") {
  TEST_CASE("function examples") {
    CHECK(bbob_evaluate(BbobFunction::kSphere, std::vector<double>{0, 0}) == 0.0);
    CHECK(bbob_evaluate(BbobFunction::kRosenbrock, std::vector<double>{1, 1, 1}) == 0.0);
    CHECK(bbob_evaluate(BbobFunction::kRastrigin, std::vector<double>(5, 0.0)) == 0.0);
    CHECK(bbob_evaluate(BbobFunction::kDiscus, std::vector<double>{1, 0}) == 1e6);
    CHECK_THROWS_AS(bbob_evaluate(BbobFunction::kSphere, std::vector<double>{NAN}), EvaluationError);
    CHECK(parse_bbob_function("schwefel") == BbobFunction::kSchwefel);
    CHECK_FALSE(parse_bbob_function("ackley").has_value());
  }

  TEST_CASE("functions agree with independent evaluators") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const std::pair<BbobFunction, double (*)(const std::vector<double>&)> pairs[] = {
        {BbobFunction::kSphere, ref_sphere},     {BbobFunction::kRosenbrock, ref_rosen},
        {BbobFunction::kDiscus, ref_discus},     {BbobFunction::kRastrigin, ref_rastrigin},
        {BbobFunction::kSchwefel, ref_schwefel}};
    for (const auto& [f, ref] : pairs) {
      for (int i = 0; i < 100; ++i) {
        std::vector<double> x(1 + i % 6);
        for (double& v : x) v = u(gen);
        const double a = bbob_evaluate(f, x);
        const double b = ref(x);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
        if (f != BbobFunction::kSchwefel && f != BbobFunction::kDiscus) CHECK(a > -1e-12);
      }
    }
  }

  TEST_CASE("positive away from the optimum") {
    const std::vector<double> x{0.3, -0.2};
    CHECK(bbob_evaluate(BbobFunction::kSphere, x) > 1e-12);
    CHECK(bbob_evaluate(BbobFunction::kRosenbrock, x) > 1e-12);
    CHECK(bbob_evaluate(BbobFunction::kRastrigin, x) > 1e-12);
  }

  TEST_CASE("shifted problem") {
    BbobProblem p(BbobFunction::kSphere, SearchBounds::uniform(3, -3, 3), 5);
    REQUIRE(p.shift().size() == 3);
    for (double o : p.shift()) CHECK(std::abs(o) <= 1.0);
    Population at_optimum(1, 3, p.shift());
    CHECK(p.evaluate_batch(at_optimum, 0)[0] == doctest::Approx(0.0));
    BbobProblem plain(BbobFunction::kSphere, SearchBounds::uniform(3, -3, 3));
    CHECK(plain.shift().empty());
    CHECK_FALSE(plain.noisy());
  }

  TEST_CASE("sphere is separable") {
    // Coordinate-wise grid minimization reaches the joint optimum.
    std::vector<double> x{2.0, -1.5, 0.7};
    for (std::size_t d = 0; d < x.size(); ++d) {
      double best = x[d], best_f = INFINITY;
      for (int i = 0; i <= 600; ++i) {
        x[d] = -3.0 + 0.01 * i;
        const double f = bbob_evaluate(BbobFunction::kSphere, x);
        if (f < best_f) best_f = f, best = x[d];
      }
      x[d] = best;
    }
    CHECK(bbob_evaluate(BbobFunction::kSphere, x) < 1e-20);
  }

  TEST_CASE("mlp policy") {
    const MlpPolicySpec spec;
    CHECK(spec.param_count() == 16);
    CHECK(default_policy_spec(ControlEnv::kAcrobot).param_count() == 33);
    const std::vector<double> obs{0.1, -0.2, 0.3, 0.4};
    CHECK(mlp_act(std::vector<double>(16, 0.0), obs, spec) == 0);
    std::vector<double> p(16, 0.0);
    p[15] = 1.0;  // b2[1]
    CHECK(mlp_act(p, obs, spec) == 1);
    CHECK_THROWS_AS(mlp_act(std::vector<double>(15, 0.0), obs, spec), ShapeError);

    // Swapping hidden units 0 and 1 everywhere leaves the action unchanged.
    std::mt19937_64 gen(3);
    std::normal_distribution<double> n;
    for (int t = 0; t < 50; ++t) {
      std::vector<double> q(16);
      for (double& v : q) v = n(gen);
      std::vector<double> s = q;
      for (std::size_t i = 0; i < 4; ++i) std::swap(s[i], s[4 + i]);  // W1 rows
      std::swap(s[8], s[9]);                                           // b1
      std::swap(s[10], s[11]);                                         // W2 row 0
      std::swap(s[12], s[13]);                                         // W2 row 1
      std::vector<double> o{n(gen), n(gen), n(gen), n(gen)};
      CHECK(mlp_act(q, o, spec) == mlp_act(s, o, spec));
    }
  }

  TEST_CASE("cartpole zero policy falls quickly") {
    const MlpPolicySpec spec = default_policy_spec(ControlEnv::kCartPole);
    const std::vector<double> zero(spec.param_count(), 0.0);
    int quick = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const double r = rollout(ControlEnv::kCartPole, zero, spec, seed, 500);
      if (r < 30) ++quick;
      CHECK(r >= 1.0);
      CHECK(r <= 500.0);
    }
    CHECK(quick >= 190);
  }

  TEST_CASE("cartpole reset and step") {
    CartPoleEnv env;
    env.reset(12);
    for (double s : env.state()) {
      CHECK(s >= -0.05);
      CHECK(s <= 0.05);
    }
    double ret = 0;
    std::size_t steps = 0;
    while (!env.terminated() && steps < 500) {
      ret += env.step(steps % 2);
      ++steps;
    }
    CHECK(ret == static_cast<double>(steps));
  }

  TEST_CASE("acrobot random policy stays near the floor") {
    const MlpPolicySpec spec = default_policy_spec(ControlEnv::kAcrobot);
    std::mt19937_64 gen(1);
    std::normal_distribution<double> n;
    int floor = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      std::vector<double> p(spec.param_count());
      for (double& v : p) v = n(gen);
      const double r = rollout(ControlEnv::kAcrobot, p, spec, seed, 500);
      CHECK(r <= 0.0);
      CHECK(r >= -500.0);
      if (r <= -400.0) ++floor;
    }
    CHECK(floor >= 10);

    AcrobotEnv env;
    env.reset(4);
    std::mt19937_64 actions(9);
    for (int t = 0; t < 500; ++t) {
      env.step(actions() % 3);
      for (double s : env.state()) REQUIRE(std::isfinite(s));
      if (env.terminated()) break;
    }
    const auto obs = env.observation();
    CHECK(obs[0] * obs[0] + obs[1] * obs[1] == doctest::Approx(1.0));
  }

  TEST_CASE("cartpole matches the reference simulator") {
    replay_fixture<CartPoleEnv>(load_fixture()["cartpole"], 0.0, 500.0);
  }

  TEST_CASE("acrobot matches the reference simulator") {
    replay_fixture<AcrobotEnv>(load_fixture()["acrobot"], -500.0, 0.0);
  }

  TEST_CASE("policy fitness") {
    const MlpPolicySpec spec = default_policy_spec(ControlEnv::kCartPole);
    RolloutConfig rc;
    rc.rollouts_per_eval = 2;
    std::vector<double> p(spec.param_count(), 0.0);
    const double r0 = rollout(ControlEnv::kCartPole, p, spec, 0, rc.max_steps);
    const double r1 = rollout(ControlEnv::kCartPole, p, spec, 1, rc.max_steps);
    CHECK(policy_fitness(ControlEnv::kCartPole, p, spec, rc, 0) == -(r0 + r1) / 2);
    const double r4 = rollout(ControlEnv::kCartPole, p, spec, 4, rc.max_steps);
    const double r5 = rollout(ControlEnv::kCartPole, p, spec, 5, rc.max_steps);
    CHECK(policy_fitness(ControlEnv::kCartPole, p, spec, rc, 2) == -(r4 + r5) / 2);
  }

  TEST_CASE("control problem uses common random numbers") {
    TaskConfig tc;
    tc.name = "cartpole";
    tc.rollout.threads = 4;
    auto problem = make_problem(tc);
    CHECK(problem->dims() == 16);
    CHECK(problem->noisy());
    Rng rng(5);
    Population pop(6, 16);
    for (std::size_t i = 0; i < 6; ++i) {
      for (double& v : pop.row(i)) v = rng.normal();
    }
    for (std::size_t j = 0; j < 16; ++j) pop.row(5)[j] = pop.row(2)[j];
    const auto f = problem->evaluate_batch(pop, 3);
    CHECK(f[5] == f[2]);
    tc.rollout.threads = 0;
    CHECK(make_problem(tc)->evaluate_batch(pop, 3) == f);
    CHECK(make_problem(tc)->evaluate_batch(pop, 3) == problem->evaluate_batch(pop, 3));
    for (double v : f) {
      CHECK(v <= 0.0);
      CHECK(v >= -500.0);
    }
  }

  TEST_CASE("rollouts are deterministic") {
    const MlpPolicySpec spec = default_policy_spec(ControlEnv::kAcrobot);
    std::vector<double> p(spec.param_count(), 0.3);
    CHECK(rollout(ControlEnv::kAcrobot, p, spec, 17, 500) ==
          rollout(ControlEnv::kAcrobot, p, spec, 17, 500));
  }

  TEST_CASE("task factory") {
    TaskConfig tc;
    tc.name = "rosenbrock";
    tc.dims = 5;
    CHECK(make_problem(tc)->dims() == 5);
    tc.name = "pendulum";
    CHECK_THROWS_AS(make_problem(tc), ConfigError);
    tc.name = "sphere";
    tc.dims = 0;
    CHECK_THROWS_AS(make_problem(tc), ConfigError);
    tc.dims = 2;
    tc.lower = 3;
    CHECK_THROWS_AS(make_problem(tc), ConfigError);
  }
}
