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

// Score records, per-group partitioning and the score CSV format.
//
// The CSV format is `score,label,group` with one comparison per row. `label`
// is `genuine` or `impostor` (any letter case on input, lowercase on output).
// Scores must lie in [0,1]; out-of-range values are rejected, never clamped.

#ifndef EQUITY_INGEST_H_
#define EQUITY_INGEST_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace equity {

enum class ScoreKind { kGenuine, kImpostor };

std::string_view to_string(ScoreKind kind);

struct ScoreRecord {
  double score = 0.0;
  ScoreKind kind = ScoreKind::kGenuine;
  std::string group;
};

struct GroupScores {
  std::string group;
  std::vector<double> genuine;
  std::vector<double> impostor;

  const std::vector<double>& scores(ScoreKind kind) const {
    return kind == ScoreKind::kGenuine ? genuine : impostor;
  }
  std::vector<double>& scores(ScoreKind kind) {
    return kind == ScoreKind::kGenuine ? genuine : impostor;
  }

  // Genuine followed by impostor scores.
  std::vector<double> combined() const;
};

// K >= 2 disjoint demographic groups, in first-appearance order.
class ScoreDataset {
 public:
  // Throws equity::Error if K < 2, a group name is empty or repeated, or a
  // score is not a finite value in [0,1].
  explicit ScoreDataset(std::vector<GroupScores> groups);

  static ScoreDataset FromRecords(std::span<const ScoreRecord> records);

  std::span<const GroupScores> groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  const GroupScores& operator[](std::size_t i) const { return groups_[i]; }

  // All scores of one kind across groups, in group order.
  std::vector<double> pooled(ScoreKind kind) const;

  std::size_t record_count() const;

  std::vector<ScoreRecord> records() const;

 private:
  std::vector<GroupScores> groups_;
};

ScoreDataset parse_score_csv(std::istream& in);
ScoreDataset parse_score_csv_string(std::string_view text);
ScoreDataset read_score_csv(const std::string& path);

// Scores are written in shortest round-trip form, so parsing the output
// reproduces every double exactly.
void write_score_csv(const ScoreDataset& ds, std::ostream& out);

struct SummaryStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population convention (divide by n)
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
};

SummaryStats summary_stats(std::span<const double> scores);

inline constexpr std::size_t kDefaultMinPerCell = 50;

struct ValidationSummary {
  struct Cell {
    std::string group;
    ScoreKind kind;
    std::size_t count;
  };
  struct GroupCounts {
    std::string group;
    std::size_t genuine;
    std::size_t impostor;
  };

  std::vector<GroupCounts> counts;
  std::vector<Cell> flagged;  // cells with fewer than min_per_cell scores
  std::size_t min_per_cell = 0;

  bool ok() const { return flagged.empty(); }
};

ValidationSummary validate_dataset(const ScoreDataset& ds,
                                   std::size_t min_per_cell);

}  // namespace equity

#endif  // EQUITY_INGEST_H_
