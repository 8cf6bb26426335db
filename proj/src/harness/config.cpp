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

#include "harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace evollm {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Reads fields of one JSON object and rejects the ones nobody asked for.
class Reader {
 public:
  Reader(const json& doc, std::string prefix) : doc_(doc), prefix_(std::move(prefix)) {
    if (!doc_.is_object()) throw ConfigError("'" + where() + "' must be an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : doc_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config field '" + prefix_ + key + "'");
    }
  }
  Reader(const Reader&) = delete;
  Reader& operator=(const Reader&) = delete;

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config field '" + prefix_ + key + "' has the wrong type");
    }
  }
  template <typename T>
  void get(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config field '" + prefix_ + key + "' has the wrong type");
    }
  }
  template <typename E>
  void get_enum(const char* key, E& out, std::optional<E> (*parse)(std::string_view)) {
    std::string s;
    get(key, s);
    if (s.empty()) return;
    auto v = parse(s);
    if (!v) throw ConfigError("invalid value '" + s + "' for '" + prefix_ + key + "'");
    out = *v;
  }
  const json* child(const char* key) {
    seen_.insert(key);
    auto it = doc_.find(key);
    return (it == doc_.end() || it->is_null()) ? nullptr : &*it;
  }
  std::string path(const char* key) const { return prefix_ + key + "."; }

 private:
  std::string where() const {
    return prefix_.empty() ? "config" : prefix_.substr(0, prefix_.size() - 1);
  }
  const json& doc_;
  std::string prefix_;
  std::set<std::string> seen_;
};

std::optional<ApiStyle> parse_api_style(std::string_view s) {
  if (s == "chat") return ApiStyle::kChat;
  if (s == "completion") return ApiStyle::kCompletion;
  return std::nullopt;
}

json prompt_json(const PromptConfig& p) {
  return {{"context_generations", p.context_generations},
          {"context_members", p.context_members},
          {"generation_selection", to_string(p.generation_selection)},
          {"candidate_selection", to_string(p.candidate_selection)},
          {"generation_sorting", to_string(p.generation_sorting)},
          {"candidate_sorting", to_string(p.candidate_sorting)},
          {"improvement_indicator", p.improvement_indicator},
          {"uniqueness_filtering", p.uniqueness_filtering},
          {"improvement_query", p.improvement_query},
          {"query_factor_low", p.query_factor_low},
          {"query_factor_high", p.query_factor_high},
          {"fitness_decimals", p.fitness_decimals},
          {"label_mode", to_string(p.label_mode)},
          {"representation", to_string(p.representation)}};
}

void read_prompt(const json& doc, const std::string& prefix, PromptConfig& p) {
  Reader r(doc, prefix);
  r.get("context_generations", p.context_generations);
  r.get("context_members", p.context_members);
  r.get_enum("generation_selection", p.generation_selection, parse_generation_selection);
  r.get_enum("candidate_selection", p.candidate_selection, parse_candidate_selection);
  r.get_enum("generation_sorting", p.generation_sorting, parse_sorting);
  r.get_enum("candidate_sorting", p.candidate_sorting, parse_sorting);
  r.get("improvement_indicator", p.improvement_indicator);
  r.get("uniqueness_filtering", p.uniqueness_filtering);
  r.get("improvement_query", p.improvement_query);
  r.get("query_factor_low", p.query_factor_low);
  r.get("query_factor_high", p.query_factor_high);
  r.get("fitness_decimals", p.fitness_decimals);
  r.get_enum("label_mode", p.label_mode, parse_label_mode);
  r.get_enum("representation", p.representation, parse_representation);
}

void read_strategy(const json& doc, const std::string& prefix, StrategyConfig& s) {
  Reader r(doc, prefix);
  r.get("name", s.name);
  r.get("sigma", s.sigma);
  r.get("warmup_generations", s.warmup_generations);
  r.get("block_size", s.block_size);
  r.get("init_mean", s.init_mean);
  r.get("snap_to_incumbent", s.snap_to_incumbent);
  if (const json* p = r.child("prompt")) read_prompt(*p, r.path("prompt"), s.prompt);
  if (const json* c = r.child("codec")) {
    Reader cr(*c, r.path("codec"));
    cr.get("lower", s.codec.lower);
    cr.get("upper", s.codec.upper);
    cr.get("resolution", s.codec.resolution);
  }
  if (const json* c = r.child("snes")) {
    Reader sr(*c, r.path("snes"));
    sr.get("lr_mean", s.snes.lr_mean);
    sr.get("lr_sigma", s.snes.lr_sigma);
    sr.get("init_sigma", s.snes.init_sigma);
    sr.get("mirrored", s.snes.mirrored);
  }
}

void read_task(const json& doc, const std::string& prefix, TaskConfig& t) {
  Reader r(doc, prefix);
  r.get("name", t.name);
  r.get("dims", t.dims);
  r.get("lower", t.lower);
  r.get("upper", t.upper);
  r.get("shift_seed", t.shift_seed);
  r.get("hidden_dim", t.hidden_dim);
  r.get("rollouts_per_eval", t.rollout.rollouts_per_eval);
  r.get("max_steps", t.rollout.max_steps);
  r.get("base_seed", t.rollout.base_seed);
  r.get("threads", t.rollout.threads);
}

void read_backend(const json& doc, const std::string& prefix, BackendConfig& b) {
  Reader r(doc, prefix);
  r.get_enum("kind", b.kind, parse_backend_kind);
  r.get("endpoint_url", b.endpoint_url);
  r.get("model_name", b.model_name);
  r.get("auth_token_env", b.auth_token_env);
  r.get_enum("api_style", b.api_style, parse_api_style);
  std::int64_t timeout = b.timeout.count();
  std::int64_t backoff = b.backoff_initial.count();
  r.get("timeout_ms", timeout);
  r.get("backoff_initial_ms", backoff);
  b.timeout = std::chrono::milliseconds(timeout);
  b.backoff_initial = std::chrono::milliseconds(backoff);
  r.get("temperature_low", b.temperature_low);
  r.get("temperature_high", b.temperature_high);
  r.get("retry_limit", b.retry_limit);
  r.get("replay_script", b.replay_script);
  r.get("probe_on_start", b.probe_on_start);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (budget.population_size == 0) throw ConfigError("budget.population_size must be positive");
  if (parallel_seeds == 0) throw ConfigError("parallel_seeds must be positive");
  std::unique_ptr<Problem> problem = make_problem(task);
  strategy.validate(problem->dims());
  if (strategy.name == "snes" && budget.population_size < 2) {
    throw ConfigError("snes needs a population of at least 2");
  }
  if (strategy.name == "evollm") backend.validate();
  for (const std::string& name : finetune.tasks) {
    if (!parse_bbob_function(name) && !parse_control_env(name)) {
      throw ConfigError("unknown finetune task '" + name + "'");
    }
  }
}

json to_json(const ExperimentConfig& c) {
  const TaskConfig& t = c.task;
  const StrategyConfig& s = c.strategy;
  const BackendConfig& b = c.backend;
  return {
      {"task",
       {{"name", t.name},
        {"dims", t.dims},
        {"lower", t.lower},
        {"upper", t.upper},
        {"shift_seed", opt(t.shift_seed)},
        {"hidden_dim", opt(t.hidden_dim)},
        {"rollouts_per_eval", t.rollout.rollouts_per_eval},
        {"max_steps", t.rollout.max_steps},
        {"base_seed", t.rollout.base_seed},
        {"threads", t.rollout.threads}}},
      {"strategy",
       {{"name", s.name},
        {"sigma", s.sigma},
        {"warmup_generations", opt(s.warmup_generations)},
        {"block_size", s.block_size},
        {"init_mean", opt(s.init_mean)},
        {"snap_to_incumbent", s.snap_to_incumbent},
        {"prompt", prompt_json(s.prompt)},
        {"codec",
         {{"lower", s.codec.lower}, {"upper", s.codec.upper}, {"resolution", s.codec.resolution}}},
        {"snes",
         {{"lr_mean", opt(s.snes.lr_mean)},
          {"lr_sigma", opt(s.snes.lr_sigma)},
          {"init_sigma", s.snes.init_sigma},
          {"mirrored", s.snes.mirrored}}}}},
      {"budget",
       {{"max_generations", c.budget.max_generations},
        {"population_size", c.budget.population_size}}},
      {"seeds", c.seeds},
      {"backend",
       {{"kind", to_string(b.kind)},
        {"endpoint_url", b.endpoint_url},
        {"model_name", b.model_name},
        {"auth_token_env", b.auth_token_env},
        {"api_style", b.api_style == ApiStyle::kChat ? "chat" : "completion"},
        {"timeout_ms", b.timeout.count()},
        {"backoff_initial_ms", b.backoff_initial.count()},
        {"temperature_low", b.temperature_low},
        {"temperature_high", b.temperature_high},
        {"retry_limit", b.retry_limit},
        {"replay_script", b.replay_script},
        {"probe_on_start", b.probe_on_start}}},
      {"output_dir", c.output_dir},
      {"parallel_seeds", c.parallel_seeds},
      {"finetune", {{"tasks", c.finetune.tasks}, {"output", c.finetune.output}}},
  };
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  Reader r(doc, "");
  if (const json* t = r.child("task")) read_task(*t, "task.", c.task);
  if (const json* s = r.child("strategy")) read_strategy(*s, "strategy.", c.strategy);
  if (const json* b = r.child("budget")) {
    Reader br(*b, "budget.");
    br.get("max_generations", c.budget.max_generations);
    br.get("population_size", c.budget.population_size);
  }
  r.get("seeds", c.seeds);
  if (const json* b = r.child("backend")) read_backend(*b, "backend.", c.backend);
  r.get("output_dir", c.output_dir);
  r.get("parallel_seeds", c.parallel_seeds);
  if (const json* f = r.child("finetune")) {
    Reader fr(*f, "finetune.");
    fr.get("tasks", c.finetune.tasks);
    fr.get("output", c.finetune.output);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

void apply_override(json& doc, std::string_view path, std::string_view value) {
  json* node = &doc;
  std::string walked;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = path.find('.', pos);
    const std::string key(path.substr(pos, dot == std::string_view::npos ? path.npos : dot - pos));
    walked += walked.empty() ? key : "." + key;
    if (key.empty() || !node->is_object() || !node->contains(key)) {
      throw ConfigError("unknown config field '" + walked + "'");
    }
    node = &(*node)[key];
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (node->is_object()) {
    throw ConfigError("'" + std::string(path) + "' is a section, not a field");
  }
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = std::string(value);
  }
  *node = std::move(parsed);
}

void apply_assignment(json& doc, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like path=value");
  }
  apply_override(doc, assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace evollm
