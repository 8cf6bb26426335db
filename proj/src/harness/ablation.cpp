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

#include <cctype>
#include <string>

#include "core/error.hpp"
#include "harness/harness.hpp"

namespace evollm {

using nlohmann::json;

AblationAxis parse_axis(std::string_view spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ConfigError("axis '" + std::string(spec) + "' must look like path=v1,v2");
  }
  AblationAxis axis;
  axis.path = std::string(spec.substr(0, eq));
  std::string_view rest = spec.substr(eq + 1);
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view v = rest.substr(0, comma);
    if (v.empty()) throw ConfigError("empty value in axis '" + std::string(spec) + "'");
    axis.values.emplace_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return axis;
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ||
                      c == '_' || c == '=';
    if (!keep) c = '_';
  }
  return s;
}

std::string leaf(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

}  // namespace

std::vector<LabeledConfig> ablation_grid(const json& base,
                                         const std::vector<AblationAxis>& axes) {
  std::vector<LabeledConfig> grid{{"base", base}};
  for (const AblationAxis& axis : axes) {
    if (axis.values.empty()) throw ConfigError("axis '" + axis.path + "' has no values");
    std::vector<LabeledConfig> next;
    for (const LabeledConfig& point : grid) {
      for (const std::string& value : axis.values) {
        LabeledConfig c = point;
        apply_override(c.config, axis.path, value);
        const std::string part = sanitize(leaf(axis.path) + "=" + value);
        c.label = c.label == "base" ? part : c.label + "__" + part;
        next.push_back(std::move(c));
      }
    }
    grid = std::move(next);
  }
  for (LabeledConfig& c : grid) config_from_json(c.config);
  return grid;
}

std::vector<LabeledConfig> run_ablation(const ExperimentConfig& base,
                                        const std::vector<AblationAxis>& axes) {
  std::vector<LabeledConfig> grid = ablation_grid(to_json(base), axes);
  std::vector<ExperimentConfig> configs;
  for (LabeledConfig& point : grid) {
    ExperimentConfig c = config_from_json(point.config);
    c.output_dir = (std::filesystem::path(base.output_dir) / point.label).string();
    point.config["output_dir"] = c.output_dir;
    c.validate();
    configs.push_back(std::move(c));
  }
  for (const ExperimentConfig& c : configs) run_experiment(c);
  return grid;
}

}  // namespace evollm
