/*
 * Copyright 2026 The Equity Metrics Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "equity/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "equity/error.h"

namespace equity {

namespace {

constexpr std::string_view kHeader = "score,label,group";

bool in_unit_interval(double v) {
  return std::isfinite(v) && v >= 0.0 && v <= 1.0;
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

ScoreRecord parse_row(std::string_view line, std::size_t line_no) {
  const auto fields = split_fields(line);
  if (fields.size() != 3) {
    throw ParseError(line_no, "expected 3 columns (score,label,group), got " +
                                  std::to_string(fields.size()));
  }

  ScoreRecord rec;
  const std::string_view score_text = trim(fields[0]);
  const char* first = score_text.data();
  const char* last = first + score_text.size();
  const auto [ptr, ec] = std::from_chars(first, last, rec.score);
  if (score_text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line_no,
                     "cannot parse score '" + std::string(score_text) + "'");
  }
  if (!in_unit_interval(rec.score)) {
    throw ParseError(line_no, "score " + std::string(score_text) +
                                  " outside [0,1]");
  }

  const std::string label = lowercase(trim(fields[1]));
  if (label == "genuine") {
    rec.kind = ScoreKind::kGenuine;
  } else if (label == "impostor") {
    rec.kind = ScoreKind::kImpostor;
  } else {
    throw ParseError(line_no, "unknown label '" + std::string(fields[1]) +
                                  "' (expected genuine or impostor)");
  }

  rec.group = std::string(trim(fields[2]));
  if (rec.group.empty()) throw ParseError(line_no, "empty group");
  return rec;
}

std::string format_score(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(ScoreKind kind) {
  return kind == ScoreKind::kGenuine ? "genuine" : "impostor";
}

std::vector<double> GroupScores::combined() const {
  std::vector<double> out;
  out.reserve(genuine.size() + impostor.size());
  out.insert(out.end(), genuine.begin(), genuine.end());
  out.insert(out.end(), impostor.begin(), impostor.end());
  return out;
}

ScoreDataset::ScoreDataset(std::vector<GroupScores> groups)
    : groups_(std::move(groups)) {
  if (groups_.size() < 2) {
    throw Error("K must be \xE2\x89\xA5 2 (found " +
                std::to_string(groups_.size()) + " group" +
                (groups_.size() == 1 ? "" : "s") + ")");
  }
  std::unordered_set<std::string> seen;
  for (const auto& g : groups_) {
    if (g.group.empty()) throw Error("group identifier must be non-empty");
    if (!seen.insert(g.group).second) {
      throw Error("duplicate group '" + g.group + "'");
    }
    for (ScoreKind kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
      for (double s : g.scores(kind)) {
        if (!in_unit_interval(s)) {
          throw Error("group '" + g.group + "' has " +
                      std::string(to_string(kind)) + " score outside [0,1]");
        }
      }
    }
  }
}

ScoreDataset ScoreDataset::FromRecords(std::span<const ScoreRecord> records) {
  std::vector<GroupScores> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& rec : records) {
    auto [it, inserted] = index.try_emplace(rec.group, groups.size());
    if (inserted) groups.push_back(GroupScores{rec.group, {}, {}});
    groups[it->second].scores(rec.kind).push_back(rec.score);
  }
  return ScoreDataset(std::move(groups));
}

std::vector<double> ScoreDataset::pooled(ScoreKind kind) const {
  std::vector<double> out;
  for (const auto& g : groups_) {
    const auto& s = g.scores(kind);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::size_t ScoreDataset::record_count() const {
  return std::accumulate(groups_.begin(), groups_.end(), std::size_t{0},
                         [](std::size_t acc, const GroupScores& g) {
                           return acc + g.genuine.size() + g.impostor.size();
                         });
}

std::vector<ScoreRecord> ScoreDataset::records() const {
  std::vector<ScoreRecord> out;
  out.reserve(record_count());
  for (const auto& g : groups_) {
    for (ScoreKind kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
      for (double s : g.scores(kind)) out.push_back({s, kind, g.group});
    }
  }
  return out;
}

ScoreDataset parse_score_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<ScoreRecord> records;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (!have_header) {
      if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
      if (trim(view) != kHeader) {
        throw ParseError(line_no, "expected header '" +
                                      std::string(kHeader) + "'");
      }
      have_header = true;
      continue;
    }
    if (trim(view).empty()) continue;
    records.push_back(parse_row(view, line_no));
  }
  if (!have_header) throw ParseError(1, "missing header");
  if (records.empty()) throw Error("no records");
  return ScoreDataset::FromRecords(records);
}

ScoreDataset parse_score_csv_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_score_csv(in);
}

ScoreDataset read_score_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_score_csv(in);
}

void write_score_csv(const ScoreDataset& ds, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& g : ds.groups()) {
    for (ScoreKind kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
      const std::string_view label = to_string(kind);
      for (double s : g.scores(kind)) {
        out << format_score(s) << ',' << label << ',' << g.group << '\n';
      }
    }
  }
}

SummaryStats summary_stats(std::span<const double> scores) {
  if (scores.empty()) throw Error("summary_stats: empty sequence");
  SummaryStats st;
  st.count = scores.size();
  const auto n = static_cast<double>(scores.size());
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  st.min = *lo;
  st.max = *hi;
  // Rounding can leave the mean a few ulps outside [min, max], which would
  // give a constant sequence a non-zero deviation.
  st.mean = std::clamp(
      std::accumulate(scores.begin(), scores.end(), 0.0) / n, st.min, st.max);
  double sq = 0.0;
  for (double s : scores) sq += (s - st.mean) * (s - st.mean);
  st.std_dev = std::sqrt(sq / n);
  return st;
}

ValidationSummary validate_dataset(const ScoreDataset& ds,
                                   std::size_t min_per_cell) {
  ValidationSummary summary;
  summary.min_per_cell = min_per_cell;
  for (const auto& g : ds.groups()) {
    summary.counts.push_back({g.group, g.genuine.size(), g.impostor.size()});
    for (ScoreKind kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
      const std::size_t n = g.scores(kind).size();
      if (n < min_per_cell) summary.flagged.push_back({g.group, kind, n});
    }
  }
  return summary;
}

}  // namespace equity
