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
#include <random>
#include <set>
#include <sstream>

#include "codec/codec.hpp"
#include "core/error.hpp"
#include "core/hashing.hpp"
#include "harness/harness.hpp"
#include "prompt/grammar.hpp"
#include "prompt/prompt.hpp"

using namespace evollm;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("evollm_test_" + name + "_" +
                                                  std::to_string(std::random_device{}()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<json> lines_of(const std::string& text) {
  std::vector<json> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

// Minimal log with a given best-so-far curve.
void write_log(const fs::path& p, const std::vector<double>& best, const std::string& task = "sphere",
               std::size_t budget = 0) {
  std::ofstream out(p);
  json cfg{{"budget", {{"max_generations", budget == 0 ? best.size() : budget}}}};
  out << json{{"type", "header"}, {"task", task}, {"strategy", "hill_climb"}, {"config", cfg}}.dump()
      << '\n';
  for (std::size_t g = 0; g < best.size(); ++g) {
    out << json{{"type", "generation"}, {"generation", g}, {"best_fitness", best[g]}}.dump() << '\n';
  }
}

ExperimentConfig small_config(const std::string& strategy = "evollm") {
  ExperimentConfig c;
  c.strategy.name = strategy;
  c.budget = {8, 5};
  c.seeds = {0, 1};
  return c;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config round trip") {
    ExperimentConfig c = small_config();
    c.task.name = "rosenbrock";
    c.task.dims = 5;
    c.strategy.prompt.context_members = 3;
    c.strategy.codec.resolution = 100;
    c.backend.kind = BackendKind::kEchoBest;
    const json doc = to_json(c);
    const ExperimentConfig back = config_from_json(doc);
    CHECK(to_json(back) == doc);
    CHECK(back.task.dims == 5);
    CHECK(back.strategy.codec.resolution == 100);
    CHECK(back.backend.kind == BackendKind::kEchoBest);
    CHECK(doc["strategy"]["warmup_generations"].is_null());
  }

  TEST_CASE("missing fields take defaults, unknown fields fail") {
    const ExperimentConfig c = config_from_json(json{{"task", {{"name", "discus"}}}});
    CHECK(c.task.name == "discus");
    CHECK(c.budget.population_size == 5);
    CHECK_THROWS_AS(config_from_json(json{{"tsak", {}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"strategy", {{"sigmaa", 1}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"seeds", "zero"}}), ConfigError);
    ExperimentConfig bad;
    bad.seeds.clear();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ExperimentConfig{};
    bad.task.name = "nope";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }

  TEST_CASE("dot-path overrides") {
    json doc = to_json(ExperimentConfig{});
    apply_assignment(doc, "strategy.codec.resolution=50");
    apply_assignment(doc, "task.name=rastrigin");
    apply_override(doc, "seeds", "[3,4]");
    const ExperimentConfig c = config_from_json(doc);
    CHECK(c.strategy.codec.resolution == 50);
    CHECK(c.task.name == "rastrigin");
    CHECK(c.seeds == std::vector<std::uint64_t>{3, 4});
    CHECK_THROWS_AS(apply_assignment(doc, "strategy.codec.bins=5"), ConfigError);
    CHECK_THROWS_AS(apply_assignment(doc, "strategy.codec=5"), ConfigError);
    CHECK_THROWS_AS(apply_assignment(doc, "no-equals-sign"), ConfigError);
  }

  TEST_CASE("logs are byte-identical across runs") {
    ExperimentConfig c = small_config();
    std::ostringstream a, b;
    run_seed(c, 3, std::make_shared<ExtrapolateBackend>(1000), a);
    run_seed(c, 3, std::make_shared<ExtrapolateBackend>(1000), b);
    CHECK(a.str() == b.str());
    const auto recs = lines_of(a.str());
    REQUIRE(recs.size() == 10);
    CHECK(recs.front()["type"] == "header");
    CHECK(recs.back()["type"] == "summary");
    double prev = INFINITY;
    for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
      CHECK(recs[i]["generation"] == i - 1);
      const double best = recs[i]["best_fitness"];
      CHECK(best <= prev);
      prev = best;
    }
    CHECK(recs[5]["phase"] == "llm");
    CHECK(recs[5]["llm"]["blocks"][0]["prompt_sha256"].get<std::string>().size() == 64);
    CHECK(recs[5]["llm"]["latency_ms"] == 0.0);
  }

  TEST_CASE("zero generations give a header-only log") {
    ExperimentConfig c = small_config();
    c.budget.max_generations = 0;
    std::ostringstream out;
    run_seed(c, 0, std::make_shared<ExtrapolateBackend>(1000), out);
    const auto recs = lines_of(out.str());
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["type"] == "header");
  }

  TEST_CASE("run_experiment writes one log per seed") {
    const fs::path dir = fresh_dir("run");
    ExperimentConfig c = small_config();
    c.output_dir = dir.string();
    c.parallel_seeds = 2;
    const auto results = run_experiment(c);
    REQUIRE(results.size() == 2);
    CHECK(fs::exists(dir / "seed_0.jsonl"));
    CHECK(fs::exists(dir / "seed_1.jsonl"));
    std::ostringstream serial;
    run_seed(c, 1, std::make_shared<ExtrapolateBackend>(1000), serial);
    CHECK(slurp(dir / "seed_1.jsonl") == serial.str());
    fs::remove_all(dir);
  }

  TEST_CASE("unreachable http backend fails before any run") {
    const fs::path dir = fresh_dir("http");
    ExperimentConfig c = small_config();
    c.output_dir = (dir / "out").string();
    c.backend.kind = BackendKind::kHttp;
    c.backend.endpoint_url = "http://127.0.0.1:9/v1/chat/completions";
    c.backend.model_name = "m";
    c.backend.timeout = std::chrono::milliseconds(300);
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    CHECK_FALSE(fs::exists(dir / "out"));
    fs::remove_all(dir);
  }

  TEST_CASE("aggregate arithmetic") {
    const fs::path dir = fresh_dir("agg");
    write_log(dir / "seed_0.jsonl", {1.0, 1.0});
    auto one = aggregate_logs({dir / "seed_0.jsonl"});
    CHECK(one[1].mean_best == 1.0);
    CHECK(one[1].stderr_best == 0.0);
    write_log(dir / "seed_1.jsonl", {3.0, 3.0});
    auto two = aggregate_logs({dir / "seed_0.jsonl", dir / "seed_1.jsonl"});
    CHECK(two[0].mean_best == 2.0);
    CHECK(two[0].n_seeds == 2);

    // Hand oracle: values {3,5,4} -> mean 4, sample std 1, stderr 1/sqrt(3).
    write_log(dir / "a.jsonl", {3, 2, 1});
    write_log(dir / "b.jsonl", {5, 2, 0});
    write_log(dir / "c.jsonl", {4, 2, 2});
    auto three = aggregate_logs({dir / "a.jsonl", dir / "b.jsonl", dir / "c.jsonl"});
    CHECK(three[0].mean_best == 4.0);
    CHECK(three[0].stderr_best == doctest::Approx(0.5773502691896258).epsilon(1e-14));
    CHECK(three[1].stderr_best == 0.0);
    CHECK(three[2].mean_best == 1.0);
    CHECK(three[2].stderr_best == doctest::Approx(0.5773502691896258).epsilon(1e-14));
    CHECK(summary_csv(three).rfind("task,strategy,generation,mean_best,stderr,n_seeds\n"
                                   "sphere,hill_climb,0,4,0.57735026919,3\n",
                                   0) == 0);

    write_log(dir / "short.jsonl", {1.0}, "sphere", 1);
    CHECK_THROWS_AS(aggregate_logs({dir / "a.jsonl", dir / "short.jsonl"}), AggregationError);
    write_log(dir / "other.jsonl", {1, 1, 1}, "rosenbrock");
    CHECK_THROWS_AS(aggregate_logs({dir / "a.jsonl", dir / "other.jsonl"}), AggregationError);
    CHECK_THROWS_AS(aggregate_logs({}), AggregationError);
    fs::remove_all(dir);
  }

  TEST_CASE("aggregate_directory writes summaries") {
    const fs::path dir = fresh_dir("aggdir");
    fs::create_directories(dir / "x");
    write_log(dir / "x" / "seed_0.jsonl", {2, 1});
    write_log(dir / "x" / "seed_1.jsonl", {4, 3});
    const auto written = aggregate_directory(dir);
    REQUIRE(written.size() == 1);
    CHECK(slurp(dir / "x" / "summary.csv") ==
          "task,strategy,generation,mean_best,stderr,n_seeds\n"
          "sphere,hill_climb,0,3,1,2\n"
          "sphere,hill_climb,1,2,1,2\n");
    fs::remove_all(dir);
  }

  TEST_CASE("ablation grid") {
    const json base = to_json(ExperimentConfig{});
    auto grid = ablation_grid(base, {parse_axis("strategy.codec.resolution=50,100,1000,10000")});
    REQUIRE(grid.size() == 4);
    CHECK(grid[0].config["strategy"]["codec"]["resolution"] == 50);
    CHECK(grid[3].label == "resolution=10000");
    grid = ablation_grid(base, {parse_axis("strategy.prompt.context_members=1,5"),
                                parse_axis("task.name=sphere,rosenbrock,discus")});
    CHECK(grid.size() == 6);
    std::set<std::string> labels;
    for (const auto& g : grid) labels.insert(g.label);
    CHECK(labels.size() == 6);
    CHECK(grid[1].config["task"]["name"] == "rosenbrock");
    CHECK(grid[1].config["strategy"]["prompt"]["context_members"] == 1);
    grid = ablation_grid(base, {});
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].label == "base");
    CHECK(grid[0].config == base);
    CHECK_THROWS_AS(ablation_grid(base, {parse_axis("strategy.codec.bins=1,2")}), ConfigError);
    CHECK_THROWS_AS(parse_axis("strategy.sigma"), ConfigError);
  }

  TEST_CASE("run_ablation writes each grid point") {
    const fs::path dir = fresh_dir("ablate");
    ExperimentConfig c = small_config();
    c.budget.max_generations = 6;
    c.output_dir = dir.string();
    const auto grid = run_ablation(c, {parse_axis("strategy.codec.resolution=100,1000")});
    REQUIRE(grid.size() == 2);
    for (const auto& g : grid) {
      CHECK(fs::exists(dir / g.label / "seed_0.jsonl"));
      CHECK(fs::exists(dir / g.label / "seed_1.jsonl"));
    }
    fs::remove_all(dir);
  }

  TEST_CASE("fine-tune export counts and targets") {
    const fs::path dir = fresh_dir("ft");
    ExperimentConfig c;
    c.strategy.name = "hill_climb";
    c.budget = {30, 5};
    c.seeds = {0, 1, 2, 3, 4};
    c.finetune.tasks = {"sphere", "rosenbrock"};
    CHECK(expected_finetune_records(c) == 260);
    const fs::path out = dir / "ft.jsonl";
    CHECK(export_finetune_dataset(c, out) == 260);
    const auto records = lines_of(slurp(out));
    REQUIRE(records.size() == 260);
    const json meta = json::parse(slurp(fs::path(out.string() + ".meta.json")));
    CHECK(meta["records"] == 260);
    CHECK(meta["expected_records"] == 260);

    for (const json& r : records) {
      std::set<std::string> keys;
      for (const auto& [k, _] : r.items()) keys.insert(k);
      CHECK(keys == std::set<std::string>{"input", "target", "task", "seed", "generation"});
      const std::string input = r["input"];
      const ParsedPrompt p = parse_prompt(input);
      CHECK(render_parsed(p) == input);
      CHECK(parse_proposal(r["target"].get<std::string>(), p.width, c.strategy.codec).bins.size() == 2);
      CHECK(r["generation"].get<std::size_t>() >= 4);
    }

    // Targets equal the teacher's logged next mean, encoded.
    ExperimentConfig sphere = c;
    sphere.finetune.tasks.clear();
    std::ostringstream log;
    run_seed(sphere, 2, nullptr, log);
    const auto recs = lines_of(log.str());
    std::size_t matched = 0;
    for (const json& r : records) {
      if (r["task"] != "sphere" || r["seed"] != 2) continue;
      const std::size_t g = r["generation"];
      const std::vector<double> mean = recs[g + 1]["next_mean"];
      CHECK(r["target"] == format_bins(encode_vector(mean, c.strategy.codec)));
      ++matched;
    }
    CHECK(matched == 26);

    const PromptCheck check = validate_prompt_file(out);
    CHECK(check.ok());
    CHECK(check.checked == 260);
    const json stats = dataset_stats(out);
    CHECK(stats["records"] == 260);
    CHECK(stats["per_task"]["rosenbrock"] == 130);
    CHECK(stats["unparsable_records"] == 0);

    // Deterministic given seeds.
    const fs::path again = dir / "again.jsonl";
    export_finetune_dataset(c, again);
    CHECK(slurp(again) == slurp(out));

    c.strategy.name = "evollm";
    CHECK_THROWS_AS(generate_finetune_records(c), ConfigError);
    fs::remove_all(dir);
  }

  TEST_CASE("zero-record export still writes a file") {
    const fs::path dir = fresh_dir("ft0");
    ExperimentConfig c;
    c.strategy.name = "hill_climb";
    c.budget = {3, 5};
    CHECK(export_finetune_dataset(c, dir / "empty.jsonl") == 0);
    CHECK(fs::exists(dir / "empty.jsonl"));
    CHECK(slurp(dir / "empty.jsonl").empty());
    fs::remove_all(dir);
  }

  TEST_CASE("validate_prompt_file") {
    const fs::path dir = fresh_dir("vp");
    std::ofstream(dir / "good.txt") << "0.44: 397 539;147 92,0,397 539,0\n0.39: ";
    std::ofstream(dir / "bad.txt") << "0.44: 397 539;147\n";
    std::ofstream(dir / "bad.jsonl") << json{{"input", "0.44: 1;1\n"}, {"target", "1;"}}.dump() << '\n'
                                     << json{{"input", "junk"}, {"target", "1;"}, {"task", "t"},
                                             {"seed", 0}, {"generation", 0}}.dump()
                                     << '\n';
    CHECK(validate_prompt_file(dir / "good.txt").ok());
    CHECK_FALSE(validate_prompt_file(dir / "bad.txt").ok());
    const PromptCheck bad = validate_prompt_file(dir / "bad.jsonl");
    CHECK(bad.checked == 2);
    CHECK(bad.problems.size() == 2);
    CHECK_THROWS_AS(validate_prompt_file(dir / "missing.txt"), IoError);
    fs::remove_all(dir);
  }

  TEST_CASE("report curves, manifest and idempotence") {
    const fs::path dir = fresh_dir("report");
    ExperimentConfig c = small_config("hill_climb");
    c.output_dir = (dir / "hc").string();
    run_experiment(c);
    aggregate_directory(dir);
    const json m1 = write_report(dir, {true});
    const fs::path curves = dir / "report" / "curves";
    std::size_t n_curves = 0;
    for (const auto& e : fs::directory_iterator(curves)) {
      ++n_curves;
      std::stringstream s(slurp(e.path()));
      std::size_t lines = 0;
      for (std::string line; std::getline(s, line);) ++lines;
      CHECK(lines == 1 + c.budget.max_generations);
    }
    CHECK(n_curves == 1);
    for (const json& f : m1["files"]) {
      CHECK(sha256_hex(slurp(dir / f["path"].get<std::string>())) == f["sha256"]);
    }
    const std::string manifest = slurp(dir / "report" / "manifest.json");
    write_report(dir, {true});
    CHECK(slurp(dir / "report" / "manifest.json") == manifest);

    const fs::path empty = fresh_dir("report_empty");
    CHECK_THROWS_AS(write_report(empty), ReportError);
    fs::remove_all(empty);
    fs::remove_all(dir);
  }
}
