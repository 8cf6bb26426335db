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
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/hashing.hpp"
#include "harness/harness.hpp"

namespace evollm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Curve {
  std::string label;
  fs::path source;
  std::vector<SummaryRow> rows;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ReportError("cannot read " + p.string());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw ReportError("cannot write " + p.string());
}

std::vector<SummaryRow> parse_summary(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::string line;
  std::getline(in, line);
  if (line != "task,strategy,generation,mean_best,stderr,n_seeds") {
    throw ReportError(p.string() + ": unexpected summary header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ReportError(p.string() + ": malformed row '" + line + "'");
    try {
      rows.push_back({f[0], f[1], std::stoul(f[2]), std::stod(f[3]), std::stod(f[4]),
                      std::stoul(f[5])});
    } catch (const std::exception&) {
      throw ReportError(p.string() + ": malformed row '" + line + "'");
    }
  }
  return rows;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string label_for(const fs::path& root, const fs::path& summary,
                      const std::vector<SummaryRow>& rows) {
  const fs::path rel = fs::relative(summary.parent_path(), root);
  std::string label;
  if (rel.empty() || rel == ".") {
    label = rows.empty() ? "summary" : rows.front().task + "_" + rows.front().strategy;
  } else {
    for (const auto& part : rel) label += (label.empty() ? "" : "__") + part.string();
  }
  for (char& c : label) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == '=')) c = '_';
  }
  return label;
}

std::string svg_plot(const Curve& c) {
  constexpr double kW = 640, kH = 400, kM = 50;
  const bool log_y = std::all_of(c.rows.begin(), c.rows.end(),
                                 [](const SummaryRow& r) { return r.mean_best > 0.0; });
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double lo = INFINITY, hi = -INFINITY;
  for (const SummaryRow& r : c.rows) {
    lo = std::min(lo, ty(r.mean_best));
    hi = std::max(hi, ty(r.mean_best));
  }
  if (!(hi > lo)) {
    hi = lo + 1.0;
  }
  const double gmax = std::max<double>(1.0, static_cast<double>(c.rows.size() - 1));
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kM << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << c.label
    << (log_y ? " (log10 mean best)" : " (mean best)") << "</text>\n"
    << "<line x1=\"" << kM << "\" y1=\"" << kH - kM << "\" x2=\"" << kW - kM << "\" y2=\"" << kH - kM
    << "\" stroke=\"black\"/>\n<line x1=\"" << kM << "\" y1=\"" << kM << "\" x2=\"" << kM << "\" y2=\""
    << kH - kM << "\" stroke=\"black\"/>\n"
    << "<text x=\"5\" y=\"" << kM << "\" font-size=\"10\">" << num(hi) << "</text>\n"
    << "<text x=\"5\" y=\"" << kH - kM << "\" font-size=\"10\">" << num(lo) << "</text>\n"
    << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const double x = kM + (kW - 2 * kM) * static_cast<double>(i) / gmax;
    const double y = kH - kM - (kH - 2 * kM) * (ty(c.rows[i].mean_best) - lo) / (hi - lo);
    s << (i ? " " : "") << num(x) << ',' << num(y);
  }
  s << "\"/>\n</svg>\n";
  return s.str();
}

}  // namespace

json write_report(const fs::path& dir, const ReportOptions& options) {
  if (!fs::is_directory(dir)) throw ReportError("not a directory: " + dir.string());
  std::vector<fs::path> summaries;
  for (auto it = fs::recursive_directory_iterator(dir); it != fs::recursive_directory_iterator(); ++it) {
    if (it->is_directory() && it->path().filename() == "report") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().filename() == "summary.csv") summaries.push_back(it->path());
  }
  if (summaries.empty()) {
    throw ReportError("no summary.csv under " + dir.string() + "; run aggregate first");
  }
  std::sort(summaries.begin(), summaries.end());

  std::vector<Curve> curves;
  for (const fs::path& p : summaries) {
    Curve c;
    c.source = p;
    c.rows = parse_summary(p);
    c.label = label_for(dir, p, c.rows);
    curves.push_back(std::move(c));
  }

  const fs::path report = dir / "report";
  fs::create_directories(report / "curves");
  if (options.plots) fs::create_directories(report / "plots");

  json files = json::array();
  auto record = [&](const fs::path& p, const std::string& content, const std::string& kind) {
    write_file(p, content);
    files.push_back({{"path", fs::relative(p, dir).generic_string()},
                     {"kind", kind},
                     {"sha256", sha256_hex(content)}});
  };
  json inputs = json::array();
  for (const Curve& c : curves) {
    inputs.push_back({{"path", fs::relative(c.source, dir).generic_string()},
                      {"sha256", sha256_hex(read_file(c.source))}});
    std::ostringstream csv;
    csv << "generation,mean_best,stderr,lower,upper,n_seeds\n";
    for (const SummaryRow& r : c.rows) {
      csv << r.generation << ',' << num(r.mean_best) << ',' << num(r.stderr_best) << ','
          << num(r.mean_best - r.stderr_best) << ',' << num(r.mean_best + r.stderr_best) << ','
          << r.n_seeds << '\n';
    }
    record(report / "curves" / (c.label + ".csv"), csv.str(), "curve");
    if (options.plots) record(report / "plots" / (c.label + ".svg"), svg_plot(c), "plot");
  }
  json manifest{{"code_version", code_version()}, {"inputs", inputs}, {"files", files}};
  write_file(report / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace evollm
