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
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "harness/harness.hpp"

namespace evollm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct LogCurve {
  std::string task;
  std::string strategy;
  std::size_t max_generations = 0;
  std::vector<double> best;
};

LogCurve read_curve(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw AggregationError("cannot open log " + path.string());
  LogCurve c;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      throw AggregationError(path.string() + ":" + std::to_string(lineno) + ": malformed JSON");
    }
    const std::string type = rec.value("type", "");
    if (type == "header") {
      c.task = rec.at("task").get<std::string>();
      c.strategy = rec.at("strategy").get<std::string>();
      c.max_generations = rec.at("config").at("budget").at("max_generations").get<std::size_t>();
      header = true;
    } else if (type == "generation") {
      if (rec.at("generation").get<std::size_t>() != c.best.size()) {
        throw AggregationError(path.string() + ": generation records out of order");
      }
      const json& b = rec.at("best_fitness");
      c.best.push_back(b.is_number() ? b.get<double>() : INFINITY);
    }
  }
  if (!header) throw AggregationError(path.string() + ": missing header line");
  return c;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t seed_of(const fs::path& p) {
  const std::string stem = p.stem().string();
  try {
    return std::stoull(stem.substr(5));
  } catch (...) {
    return 0;
  }
}

bool is_seed_log(const fs::path& p) {
  const std::string name = p.filename().string();
  return name.rfind("seed_", 0) == 0 && p.extension() == ".jsonl";
}

}  // namespace

std::vector<SummaryRow> aggregate_logs(const std::vector<fs::path>& logs) {
  if (logs.empty()) throw AggregationError("no logs to aggregate");
  std::vector<LogCurve> curves;
  for (const fs::path& p : logs) curves.push_back(read_curve(p));
  const LogCurve& first = curves.front();
  for (std::size_t i = 1; i < curves.size(); ++i) {
    const LogCurve& c = curves[i];
    if (c.max_generations != first.max_generations || c.best.size() != first.best.size()) {
      throw AggregationError("mismatched budgets: " + logs[0].string() + " has " +
                             std::to_string(first.best.size()) + " generations, " +
                             logs[i].string() + " has " + std::to_string(c.best.size()));
    }
    if (c.task != first.task || c.strategy != first.strategy) {
      throw AggregationError("logs mix different tasks or strategies: " + logs[i].string());
    }
  }
  const std::size_t n = curves.size();
  std::vector<SummaryRow> rows;
  for (std::size_t g = 0; g < first.best.size(); ++g) {
    double sum = 0.0;
    for (const LogCurve& c : curves) sum += c.best[g];
    const double mean = sum / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
      double ss = 0.0;
      for (const LogCurve& c : curves) ss += (c.best[g] - mean) * (c.best[g] - mean);
      se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    }
    rows.push_back({first.task, first.strategy, g, mean, se, n});
  }
  return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "task,strategy,generation,mean_best,stderr,n_seeds\n";
  for (const SummaryRow& r : rows) {
    out << r.task << ',' << r.strategy << ',' << r.generation << ',' << fmt(r.mean_best)
        << ',' << fmt(r.stderr_best) << ',' << r.n_seeds << '\n';
  }
  return out.str();
}

std::vector<fs::path> aggregate_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw AggregationError("not a directory: " + dir.string());
  std::map<fs::path, std::vector<fs::path>> groups;
  for (auto it = fs::recursive_directory_iterator(dir); it != fs::recursive_directory_iterator(); ++it) {
    if (it->is_directory() && it->path().filename() == "report") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && is_seed_log(it->path())) {
      groups[it->path().parent_path()].push_back(it->path());
    }
  }
  if (groups.empty()) throw AggregationError("no seed_*.jsonl logs under " + dir.string());
  std::vector<fs::path> written;
  for (auto& [parent, logs] : groups) {
    std::sort(logs.begin(), logs.end(), [](const fs::path& a, const fs::path& b) {
      return seed_of(a) < seed_of(b);
    });
    const fs::path out_path = parent / "summary.csv";
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << summary_csv(aggregate_logs(logs));
    if (!out) throw IoError("cannot write " + out_path.string());
    written.push_back(out_path);
  }
  return written;
}

}  // namespace evollm
