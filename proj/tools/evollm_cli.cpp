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

// Command-line front end over the C API.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evollm/evollm.h"

namespace {

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  ~LibString() { evollm_string_free(p_); }
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

struct Failure {
  int code;
};

void check(evollm_status s, const char* action) {
  if (s == EVOLLM_OK) return;
  std::cerr << "evollm: " << action << " failed (" << evollm_status_name(s)
            << "): " << evollm_last_error() << "\n";
  throw Failure{s == EVOLLM_ERR_CONFIG ? 2 : 1};
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

std::string resolve(const std::string& path, const std::vector<std::string>& sets) {
  const auto overrides = c_strings(sets);
  LibString cfg;
  check(evollm_config_resolve(path.empty() ? nullptr : path.c_str(), overrides.data(),
                              overrides.size(), cfg.out()),
        "loading config");
  return cfg.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evollm: model-driven evolution strategies and baselines"};
  app.require_subcommand(1);
  int log_level = 3;
  app.add_option("--log-level", log_level, "0 trace .. 6 off")->check(CLI::Range(0, 6));

  std::string config_path;
  std::vector<std::string> sets;
  auto add_config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("config", config_path, "experiment config (JSON)");
    if (required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override a field, e.g. strategy.sigma=0.1");
  };

  auto* run = app.add_subcommand("run", "run every seed of an experiment");
  add_config(run, true);

  auto* ablate = app.add_subcommand("ablate", "run a Cartesian grid of config variants");
  add_config(ablate, true);
  std::vector<std::string> axes;
  bool dry_run = false;
  ablate->add_option("--axis", axes, "path=v1,v2,... (repeatable)");
  ablate->add_flag("--dry-run", dry_run, "print the grid without running it");

  std::string dir;
  auto* aggregate = app.add_subcommand("aggregate", "write summary.csv for each log directory");
  aggregate->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);

  bool plots = false;
  auto* report = app.add_subcommand("report", "write curve CSVs, plots and a manifest");
  report->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  report->add_flag("--plots", plots, "also render SVG line plots");

  std::string out_path;
  auto* finetune = app.add_subcommand("export-finetune", "export a teacher instruction dataset");
  add_config(finetune, true);
  finetune->add_option("--out", out_path, "dataset path (default: finetune.output)");

  std::string file;
  auto* validate = app.add_subcommand("validate-prompt", "check a prompt file or JSONL dataset");
  validate->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* stats = app.add_subcommand("dataset-stats", "summarize a fine-tune dataset");
  stats->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* show = app.add_subcommand("show-config", "print the resolved config");
  add_config(show, false);

  CLI11_PARSE(app, argc, argv);

  try {
    check(evollm_set_log_level(log_level), "setting log level");
    if (run->parsed()) {
      const std::string cfg = resolve(config_path, sets);
      LibString out;
      check(evollm_run_experiment(cfg.c_str(), out.out()), "run");
      std::cout << out.str() << "\n";
    } else if (ablate->parsed()) {
      const std::string cfg = resolve(config_path, sets);
      const auto ax = c_strings(axes);
      LibString out;
      if (dry_run) {
        check(evollm_ablation_grid(cfg.c_str(), ax.data(), ax.size(), out.out()), "ablation grid");
      } else {
        check(evollm_run_ablation(cfg.c_str(), ax.data(), ax.size(), out.out()), "ablation");
      }
      std::cout << out.str() << "\n";
    } else if (aggregate->parsed()) {
      LibString out;
      check(evollm_aggregate(dir.c_str(), out.out()), "aggregate");
      std::cout << out.str() << "\n";
    } else if (report->parsed()) {
      LibString out;
      check(evollm_report(dir.c_str(), plots ? 1 : 0, out.out()), "report");
      std::cout << out.str() << "\n";
    } else if (finetune->parsed()) {
      const std::string cfg = resolve(config_path, sets);
      size_t records = 0;
      check(evollm_export_finetune(cfg.c_str(), out_path.empty() ? nullptr : out_path.c_str(),
                                   &records),
            "export-finetune");
      std::cout << "records: " << records << "\n";
    } else if (validate->parsed()) {
      LibString out;
      check(evollm_validate_prompt_file(file.c_str(), out.out()), "validate-prompt");
      std::cout << out.str() << "\n";
      if (out.str().find("\"ok\": true") == std::string::npos) return 3;
    } else if (stats->parsed()) {
      LibString out;
      check(evollm_dataset_stats(file.c_str(), out.out()), "dataset-stats");
      std::cout << out.str() << "\n";
    } else if (show->parsed()) {
      std::cout << resolve(config_path, sets) << "\n";
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
