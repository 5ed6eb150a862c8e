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

// Full metric evaluation of one dataset and its JSON / text renderings.

#ifndef EQUITY_REPORT_H_
#define EQUITY_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equity/cei.h"
#include "equity/distributions.h"
#include "equity/ingest.h"
#include "equity/outcome.h"

namespace equity {

struct MetricSet {
  bool inequity = true;
  bool garbe = true;
  bool dfi = true;
  bool cei = true;
  bool cei_auto = true;

  bool outcome() const { return inequity || garbe; }
  std::vector<std::string> names() const;
};

// Comma-separated subset of inequity, garbe, dfi, cei, cei_auto (or "all").
// Throws equity::Error on an unknown or empty list.
MetricSet parse_metrics(std::string_view list);

// Provenance of a generated dataset, echoed into the report.
struct SyntheticEcho {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t groups = 0;
  std::size_t samples_per_cell = 0;
};

struct EvaluationConfig {
  std::size_t bins = kDefaultBins;
  double epsilon = kDefaultEpsilon;
  double target_fmr = kDefaultTargetFmr;
  double floor = kDefaultRateFloor;
  double n_sigma = kDefaultSigmas;
  double split_percentile = kDefaultSplitPercentile;
  double tail_weight = kDefaultTailWeight;
  std::size_t min_per_cell = kDefaultMinPerCell;
  bool allow_small_cells = false;
  MetricSet metrics;
  std::optional<SyntheticEcho> synthetic;

  // Throws equity::Error on out-of-range parameters.
  void validate() const;
};

struct GroupSummary {
  std::string group;
  SummaryStats genuine;
  SummaryStats impostor;
};

struct MetricReport {
  EvaluationConfig config;
  std::vector<GroupSummary> groups;
  std::size_t record_count = 0;
  std::optional<OutcomeReport> outcome;
  std::optional<DfiResult> dfi_normal;
  std::optional<DfiResult> dfi_extreme;
  // Ordered manual before automated, genuine before impostor, normal before
  // extreme.
  std::vector<CeiResult> cei;
  std::vector<std::string> warnings;
};

// Throws equity::Error when a cell is below min_per_cell (unless
// allow_small_cells) or any requested metric cannot be computed.
MetricReport evaluate(const ScoreDataset& ds, const EvaluationConfig& config);

// Deterministic JSON: fixed key order, numbers rounded to 10 significant
// digits, two-space indent, trailing newline.
std::string to_json(const MetricReport& report);

std::string to_table(const MetricReport& report);

// Per-group and mean histograms of every kind on one grid. When
// split_percentile or n_sigma is given, the pooled split scores for both
// kinds are included.
std::string export_distributions_json(
    const ScoreDataset& ds, std::size_t bins,
    std::optional<double> split_percentile = std::nullopt,
    std::optional<double> n_sigma = std::nullopt);

// %.10g rounding applied to every reported number.
double round_significant(double x);

}  // namespace equity

#endif  // EQUITY_REPORT_H_
