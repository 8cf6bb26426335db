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

#include "evollm/evollm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "codec/codec.hpp"
#include "core/archive.hpp"
#include "core/error.hpp"
#include "harness/harness.hpp"
#include "prompt/grammar.hpp"
#include "prompt/prompt.hpp"

using nlohmann::json;
using namespace evollm;

struct evollm_archive {
  ArchiveBuffer buffer;
};

struct evollm_problem {
  std::unique_ptr<Problem> problem;
};

struct evollm_strategy {
  std::unique_ptr<Strategy> strategy;
};

namespace {

thread_local std::string g_last_error;

evollm_status fail(evollm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, mapping library exceptions onto status codes.
template <typename F>
evollm_status guard(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EVOLLM_OK;
  } catch (const Error& e) {
    return fail(static_cast<evollm_status>(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(EVOLLM_ERR_CONFIG, std::string("JSON error: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(EVOLLM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EVOLLM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EVOLLM_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_json(const char* text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

DiscretizationSpec make_spec(double lower, double upper, int64_t resolution) {
  DiscretizationSpec s{lower, upper, resolution};
  s.validate();
  return s;
}

// Reads a config sub-section by wrapping it into a full experiment document.
ExperimentConfig config_with(const char* key, const char* section_json) {
  json doc = json::object();
  if (section_json != nullptr) doc[key] = parse_json(section_json);
  return config_from_json(doc);
}

}  // namespace

extern "C" {

const char* evollm_version(void) {
  static const std::string v = code_version();
  return v.c_str();
}

const char* evollm_last_error(void) { return g_last_error.c_str(); }

const char* evollm_status_name(evollm_status status) {
  switch (status) {
    case EVOLLM_OK: return "ok";
    case EVOLLM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EVOLLM_ERR_SHAPE: return "shape";
    case EVOLLM_ERR_INDEX: return "index";
    case EVOLLM_ERR_CODEC: return "codec";
    case EVOLLM_ERR_PARSE: return "parse";
    case EVOLLM_ERR_BACKEND: return "backend";
    case EVOLLM_ERR_CONFIG: return "config";
    case EVOLLM_ERR_IO: return "io";
    case EVOLLM_ERR_RENDER: return "render";
    case EVOLLM_ERR_EVALUATION: return "evaluation";
    case EVOLLM_ERR_AGGREGATION: return "aggregation";
    case EVOLLM_ERR_REPORT: return "report";
    case EVOLLM_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case EVOLLM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void evollm_string_free(char* s) { std::free(s); }

evollm_status evollm_set_log_level(int level) {
  return guard([&] {
    require(level >= 0 && level <= 6, "log level must be in [0, 6]");
    spdlog::set_level(static_cast<spdlog::level::level_enum>(level));
  });
}

evollm_status evollm_encode(double x, double lower, double upper, int64_t resolution,
                            int64_t* out_bin) {
  return guard([&] {
    require(out_bin != nullptr, "out_bin is NULL");
    *out_bin = encode(x, make_spec(lower, upper, resolution));
  });
}

evollm_status evollm_decode(int64_t bin, double lower, double upper, int64_t resolution,
                            double* out_x, int* out_clamped) {
  return guard([&] {
    require(out_x != nullptr, "out_x is NULL");
    bool clamped = false;
    *out_x = decode(bin, make_spec(lower, upper, resolution), &clamped);
    if (out_clamped != nullptr) *out_clamped = clamped ? 1 : 0;
  });
}

evollm_status evollm_archive_create(const double* lower, const double* upper, size_t dims,
                                    evollm_archive** out) {
  return guard([&] {
    require(lower != nullptr && upper != nullptr && out != nullptr, "NULL argument");
    SearchBounds b{{lower, lower + dims}, {upper, upper + dims}};
    b.validate();
    *out = new evollm_archive{ArchiveBuffer(std::move(b))};
  });
}

void evollm_archive_destroy(evollm_archive* archive) { delete archive; }

evollm_status evollm_archive_append(evollm_archive* archive, const double* candidates,
                                    size_t rows, size_t dims, const double* fitness) {
  return guard([&] {
    require(archive != nullptr && candidates != nullptr && fitness != nullptr, "NULL argument");
    Population pop(rows, dims, std::vector<double>(candidates, candidates + rows * dims));
    archive->buffer.append(pop, std::span<const double>(fitness, rows));
  });
}

evollm_status evollm_archive_size(const evollm_archive* archive, size_t* out_generations) {
  return guard([&] {
    require(archive != nullptr && out_generations != nullptr, "NULL argument");
    *out_generations = archive->buffer.size();
  });
}

evollm_status evollm_archive_best(const evollm_archive* archive, double* out_solution,
                                  size_t dims, double* out_fitness) {
  return guard([&] {
    require(archive != nullptr && out_solution != nullptr && out_fitness != nullptr,
            "NULL argument");
    if (archive->buffer.empty()) throw IndexError("archive is empty");
    if (dims != archive->buffer.dims()) throw ShapeError("dims does not match the archive");
    const EvaluationRef best = archive->buffer.best();
    std::copy(best.candidate.begin(), best.candidate.end(), out_solution);
    *out_fitness = best.fitness;
  });
}

evollm_status evollm_archive_improved(const evollm_archive* archive, size_t k, int* out_flags,
                                      size_t rows) {
  return guard([&] {
    require(archive != nullptr && out_flags != nullptr, "NULL argument");
    const Generation& g = archive->buffer.at(k);
    if (rows != g.size()) throw ShapeError("rows does not match the generation size");
    for (size_t i = 0; i < rows; ++i) out_flags[i] = g.improved[i] ? 1 : 0;
  });
}

evollm_status evollm_render_prompt(const evollm_archive* archive, const char* prompt_json,
                                   const char* codec_json, size_t block_start,
                                   size_t block_end, uint64_t seed, char** out_text) {
  return guard([&] {
    require(archive != nullptr && out_text != nullptr, "NULL argument");
    json strategy = json::object();
    if (prompt_json != nullptr) strategy["prompt"] = parse_json(prompt_json);
    if (codec_json != nullptr) strategy["codec"] = parse_json(codec_json);
    const ExperimentConfig c = config_from_json(json{{"strategy", strategy}});
    c.strategy.prompt.validate();
    c.strategy.codec.validate();
    Rng rng(mix_seed(seed, "prompt"));
    const DimBlock block{block_start, block_end};
    const RenderedPrompt p =
        c.strategy.prompt.representation == Representation::kRawText
            ? render_raw_text_prompt(archive->buffer, c.strategy.prompt, block, rng)
            : render_prompt(archive->buffer, c.strategy.prompt, c.strategy.codec, block, rng);
    *out_text = dup_string(p.text);
  });
}

evollm_status evollm_parse_proposal(const char* completion, size_t width, int64_t resolution,
                                    int64_t* out_bins, int* out_clamped) {
  return guard([&] {
    require(completion != nullptr && out_bins != nullptr, "NULL argument");
    DiscretizationSpec spec;
    spec.resolution = resolution;
    spec.validate();
    const ParsedProposal p = parse_proposal(completion, width, spec);
    std::copy(p.bins.begin(), p.bins.end(), out_bins);
    if (out_clamped != nullptr) *out_clamped = p.clamped ? 1 : 0;
  });
}

evollm_status evollm_prompt_matches_grammar(const char* text, int* out_ok) {
  return guard([&] {
    require(text != nullptr && out_ok != nullptr, "NULL argument");
    *out_ok = matches_grammar(text) ? 1 : 0;
  });
}

evollm_status evollm_problem_create(const char* task_json, evollm_problem** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new evollm_problem{make_problem(config_with("task", task_json).task)};
  });
}

void evollm_problem_destroy(evollm_problem* problem) { delete problem; }

evollm_status evollm_problem_dims(const evollm_problem* problem, size_t* out_dims) {
  return guard([&] {
    require(problem != nullptr && out_dims != nullptr, "NULL argument");
    *out_dims = problem->problem->dims();
  });
}

evollm_status evollm_problem_evaluate(const evollm_problem* problem, const double* candidates,
                                      size_t rows, size_t dims, size_t generation,
                                      double* out_fitness) {
  return guard([&] {
    require(problem != nullptr && candidates != nullptr && out_fitness != nullptr,
            "NULL argument");
    Population pop(rows, dims, std::vector<double>(candidates, candidates + rows * dims));
    const std::vector<double> f = problem->problem->evaluate_batch(pop, generation);
    std::copy(f.begin(), f.end(), out_fitness);
  });
}

evollm_status evollm_strategy_create(const char* config_json, uint64_t seed,
                                     evollm_strategy** out) {
  return guard([&] {
    require(config_json != nullptr && out != nullptr, "NULL argument");
    const ExperimentConfig c = config_from_json(parse_json(config_json));
    c.validate();
    std::unique_ptr<Problem> problem = make_problem(c.task);
    std::shared_ptr<Backend> backend;
    if (c.strategy.name == "evollm") backend = make_backend(c.backend, c.strategy.codec);
    *out = new evollm_strategy{make_strategy(c.strategy, problem->bounds(),
                                             c.budget.population_size, seed, backend,
                                             &c.backend)};
  });
}

void evollm_strategy_destroy(evollm_strategy* strategy) { delete strategy; }

evollm_status evollm_strategy_shape(const evollm_strategy* strategy, size_t* out_rows,
                                    size_t* out_dims) {
  return guard([&] {
    require(strategy != nullptr && out_rows != nullptr && out_dims != nullptr, "NULL argument");
    *out_rows = strategy->strategy->population_size();
    *out_dims = strategy->strategy->bounds().dims();
  });
}

evollm_status evollm_strategy_ask(evollm_strategy* strategy, double* out_candidates,
                                  size_t capacity) {
  if (strategy != nullptr) {
    const size_t need = strategy->strategy->population_size() * strategy->strategy->bounds().dims();
    if (capacity < need) {
      return fail(EVOLLM_ERR_BUFFER_TOO_SMALL,
                  "ask needs room for " + std::to_string(need) + " values");
    }
  }
  return guard([&] {
    require(strategy != nullptr && out_candidates != nullptr, "NULL argument");
    const Population pop = strategy->strategy->ask();
    std::copy(pop.data().begin(), pop.data().end(), out_candidates);
  });
}

evollm_status evollm_strategy_tell(evollm_strategy* strategy, const double* fitness,
                                   size_t rows) {
  return guard([&] {
    require(strategy != nullptr && fitness != nullptr, "NULL argument");
    strategy->strategy->tell(std::span<const double>(fitness, rows));
  });
}

evollm_status evollm_strategy_mean(const evollm_strategy* strategy, double* out_mean,
                                   size_t dims) {
  return guard([&] {
    require(strategy != nullptr && out_mean != nullptr, "NULL argument");
    const auto& m = strategy->strategy->state().mean;
    if (dims != m.size()) throw ShapeError("dims does not match the strategy");
    std::copy(m.begin(), m.end(), out_mean);
  });
}

evollm_status evollm_strategy_best(const evollm_strategy* strategy, double* out_solution,
                                   size_t dims, double* out_fitness) {
  return guard([&] {
    require(strategy != nullptr && out_solution != nullptr && out_fitness != nullptr,
            "NULL argument");
    const SearchState& st = strategy->strategy->state();
    if (!st.has_best()) throw IndexError("no evaluations told yet");
    if (dims != st.best_solution.size()) throw ShapeError("dims does not match the strategy");
    std::copy(st.best_solution.begin(), st.best_solution.end(), out_solution);
    *out_fitness = st.best_fitness;
  });
}

evollm_status evollm_strategy_generation(const evollm_strategy* strategy,
                                         size_t* out_generation) {
  return guard([&] {
    require(strategy != nullptr && out_generation != nullptr, "NULL argument");
    *out_generation = strategy->strategy->state().generation;
  });
}

evollm_status evollm_strategy_step_info(const evollm_strategy* strategy, char** out_json) {
  return guard([&] {
    require(strategy != nullptr && out_json != nullptr, "NULL argument");
    *out_json = dup_string(strategy->strategy->step_info().dump());
  });
}

evollm_status evollm_config_resolve(const char* path, const char* const* overrides,
                                    size_t n_overrides, char** out_json) {
  return guard([&] {
    require(out_json != nullptr, "out_json is NULL");
    require(n_overrides == 0 || overrides != nullptr, "overrides is NULL");
    ExperimentConfig base = path != nullptr ? load_config(path) : ExperimentConfig{};
    json doc = to_json(base);
    for (size_t i = 0; i < n_overrides; ++i) apply_assignment(doc, overrides[i]);
    *out_json = dup_string(to_json(config_from_json(doc)).dump(2));
  });
}

evollm_status evollm_run_experiment(const char* config_json, char** out_json) {
  return guard([&] {
    require(config_json != nullptr, "config_json is NULL");
    const ExperimentConfig c = config_from_json(parse_json(config_json));
    const std::vector<RunResult> runs = run_experiment(c);
    json out = json::array();
    for (const RunResult& r : runs) {
      out.push_back({{"seed", r.seed},
                     {"log", r.log_path.string()},
                     {"generations", r.generations},
                     {"best_fitness", r.generations > 0 ? json(r.best_fitness) : json(nullptr)},
                     {"queries", r.queries},
                     {"fallbacks", r.fallbacks}});
    }
    if (out_json != nullptr) *out_json = dup_string(out.dump(2));
  });
}

namespace {

std::vector<AblationAxis> read_axes(const char* const* axes, size_t n) {
  require(n == 0 || axes != nullptr, "axes is NULL");
  std::vector<AblationAxis> out;
  for (size_t i = 0; i < n; ++i) out.push_back(parse_axis(axes[i]));
  return out;
}

json grid_json(const std::vector<LabeledConfig>& grid) {
  json out = json::array();
  for (const LabeledConfig& c : grid) out.push_back({{"label", c.label}, {"config", c.config}});
  return out;
}

}  // namespace

evollm_status evollm_run_ablation(const char* config_json, const char* const* axes,
                                  size_t n_axes, char** out_json) {
  return guard([&] {
    require(config_json != nullptr, "config_json is NULL");
    const ExperimentConfig c = config_from_json(parse_json(config_json));
    const auto grid = run_ablation(c, read_axes(axes, n_axes));
    if (out_json != nullptr) *out_json = dup_string(grid_json(grid).dump(2));
  });
}

evollm_status evollm_ablation_grid(const char* config_json, const char* const* axes,
                                   size_t n_axes, char** out_json) {
  return guard([&] {
    require(config_json != nullptr && out_json != nullptr, "NULL argument");
    const ExperimentConfig c = config_from_json(parse_json(config_json));
    *out_json = dup_string(grid_json(ablation_grid(to_json(c), read_axes(axes, n_axes))).dump(2));
  });
}

evollm_status evollm_aggregate(const char* dir, char** out_json) {
  return guard([&] {
    require(dir != nullptr, "dir is NULL");
    json out = json::array();
    for (const auto& p : aggregate_directory(dir)) out.push_back(p.string());
    if (out_json != nullptr) *out_json = dup_string(out.dump(2));
  });
}

evollm_status evollm_report(const char* dir, int plots, char** out_json) {
  return guard([&] {
    require(dir != nullptr, "dir is NULL");
    const json manifest = write_report(dir, ReportOptions{plots != 0});
    if (out_json != nullptr) *out_json = dup_string(manifest.dump(2));
  });
}

evollm_status evollm_export_finetune(const char* config_json, const char* out_path,
                                     size_t* out_records) {
  return guard([&] {
    require(config_json != nullptr, "config_json is NULL");
    const ExperimentConfig c = config_from_json(parse_json(config_json));
    const size_t n =
        export_finetune_dataset(c, out_path != nullptr ? out_path : c.finetune.output);
    if (out_records != nullptr) *out_records = n;
  });
}

evollm_status evollm_dataset_stats(const char* path, char** out_json) {
  return guard([&] {
    require(path != nullptr && out_json != nullptr, "NULL argument");
    *out_json = dup_string(dataset_stats(path).dump(2));
  });
}

evollm_status evollm_validate_prompt_file(const char* path, char** out_json) {
  return guard([&] {
    require(path != nullptr && out_json != nullptr, "NULL argument");
    const PromptCheck check = validate_prompt_file(path);
    *out_json = dup_string(
        json{{"checked", check.checked}, {"ok", check.ok()}, {"problems", check.problems}}.dump(2));
  });
}

}  // extern "C"
