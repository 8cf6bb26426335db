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

#include "prompt/grammar.hpp"

#include <charconv>
#include <string>

#include "core/error.hpp"

namespace evollm {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& why,
                       std::string_view text) {
  throw ParseFailure("prompt line " + std::to_string(line + 1) + ": " + why,
                     std::string(text));
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// -?D+(.D+)?
bool is_label(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const std::size_t int_start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i == int_start) return false;
  if (i == s.size()) return true;
  if (s[i] != '.') return false;
  const std::size_t frac_start = ++i;
  while (i < s.size() && is_digit(s[i])) ++i;
  return i == s.size() && i > frac_start;
}

// INT( INT)* with single spaces and no leading zeros.
std::optional<std::vector<std::int64_t>> read_ints(std::string_view s) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (true) {
    const std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == start) return std::nullopt;
    if (s[start] == '0' && i - start > 1) return std::nullopt;
    std::int64_t v = 0;
    if (std::from_chars(s.data() + start, s.data() + i, v).ec != std::errc()) {
      return std::nullopt;
    }
    out.push_back(v);
    if (i == s.size()) return out;
    if (s[i] != ' ') return std::nullopt;
    ++i;
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool is_flag(std::string_view s) { return s == "0" || s == "1"; }

// With width 1 a flagged row has an even field count and 0/1 in every second
// field; wider rows are unambiguous from the second field alone.
IndicatorMode guess_indicator(std::string_view text) {
  const std::string_view line = text.substr(0, text.find('\n'));
  const std::size_t semi = line.find(';');
  if (semi == std::string_view::npos) return IndicatorMode::kOn;
  const std::string_view anchor = line.substr(0, semi);
  const std::vector<std::string_view> fields = split(line.substr(semi + 1), ',');
  if (anchor.find(' ', anchor.find(": ") + 2) != std::string_view::npos) {
    const bool on = fields.size() >= 2 && fields[1].find(' ') == std::string_view::npos;
    return on ? IndicatorMode::kOn : IndicatorMode::kOff;
  }
  bool alternating = fields.size() % 2 == 0;
  for (std::size_t i = 1; alternating && i < fields.size(); i += 2) alternating = is_flag(fields[i]);
  return alternating ? IndicatorMode::kOn : IndicatorMode::kOff;
}

}  // namespace

ParsedPrompt parse_prompt(std::string_view text, IndicatorMode mode) {
  if (mode == IndicatorMode::kAuto) {
    // Flags are all-or-nothing, so the guess from the first row must hold for
    // every row; otherwise the other reading is tried.
    const IndicatorMode guess = guess_indicator(text);
    const IndicatorMode other = guess == IndicatorMode::kOn ? IndicatorMode::kOff : IndicatorMode::kOn;
    try {
      return parse_prompt(text, guess);
    } catch (const ParseFailure&) {
      try {
        return parse_prompt(text, other);
      } catch (const ParseFailure&) {
      }
      throw;
    }
  }
  ParsedPrompt out;
  std::vector<std::string_view> lines = split(text, '\n');
  // Every row ends with '\n', so the last piece is the query prefix or empty.
  const std::string_view tail = lines.back();
  lines.pop_back();
  if (lines.empty()) fail(0, "prompt has no context rows", text);

  const std::optional<bool> indicator = mode == IndicatorMode::kOn;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = lines[ln];
    const std::size_t colon = line.find(": ");
    if (colon == std::string_view::npos) fail(ln, "missing '<label>: '", text);
    PromptRow row;
    row.label = std::string(line.substr(0, colon));
    if (!is_label(row.label)) fail(ln, "label is not a fixed-point number", text);
    const std::string_view rest = line.substr(colon + 2);
    const std::size_t semi = rest.find(';');
    if (semi == std::string_view::npos) fail(ln, "missing ';' after anchor", text);
    auto anchor = read_ints(rest.substr(0, semi));
    if (!anchor) fail(ln, "anchor is not a list of integers", text);
    row.anchor = std::move(*anchor);
    if (out.width == 0) out.width = row.anchor.size();
    if (row.anchor.size() != out.width) fail(ln, "anchor width differs from earlier rows", text);

    const std::vector<std::string_view> fields = split(rest.substr(semi + 1), ',');
    const std::size_t stride = *indicator ? 2 : 1;
    if (fields.size() % stride != 0) fail(ln, "member without improvement flag", text);
    for (std::size_t i = 0; i < fields.size(); i += stride) {
      auto member = read_ints(fields[i]);
      if (!member) fail(ln, "member is not a list of integers", text);
      if (member->size() != out.width) fail(ln, "member width differs from anchor", text);
      row.members.push_back(std::move(*member));
      if (*indicator) {
        if (!is_flag(fields[i + 1])) fail(ln, "improvement flag must be 0 or 1", text);
        row.flags.push_back(fields[i + 1] == "1" ? 1 : 0);
      }
    }
    out.rows.push_back(std::move(row));
  }
  out.indicator = indicator.value_or(false);

  if (!tail.empty()) {
    if (tail.size() < 3 || tail.substr(tail.size() - 2) != ": ") {
      fail(lines.size(), "query line must be '<label>: '", text);
    }
    const std::string_view label = tail.substr(0, tail.size() - 2);
    if (!is_label(label)) fail(lines.size(), "query label is not a fixed-point number", text);
    out.query_label = std::string(label);
  }
  return out;
}

std::string render_parsed(const ParsedPrompt& prompt) {
  auto join = [](std::string& out, const std::vector<std::int64_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != 0) out += ' ';
      out += std::to_string(v[i]);
    }
  };
  std::string out;
  for (const PromptRow& row : prompt.rows) {
    out += row.label;
    out += ": ";
    join(out, row.anchor);
    out += ';';
    for (std::size_t i = 0; i < row.members.size(); ++i) {
      if (i != 0) out += ',';
      join(out, row.members[i]);
      if (prompt.indicator) out += row.flags[i] ? ",1" : ",0";
    }
    out += '\n';
  }
  if (prompt.query_label) {
    out += *prompt.query_label;
    out += ": ";
  }
  return out;
}

bool matches_grammar(std::string_view text, IndicatorMode mode) {
  try {
    parse_prompt(text, mode);
    return true;
  } catch (const ParseFailure&) {
    return false;
  }
}

}  // namespace evollm
