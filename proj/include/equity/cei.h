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

// Distribution-based fairness indices.
//
// DFI compares each group's combined (genuine + impostor) score histogram to
// the binwise mean over groups. CEI does the same separately for the genuine
// or the impostor histograms, after splitting each one at a common score into
// a tail part and a center part:
//
//   S'_i = w_tail * KL(tail_i || mean tail) + w_center * KL(center_i || mean center)
//
// where the mean parts are binwise means of the groups' renormalized parts.
// Both indices aggregate per-group divergences the same way:
//
//   Normal:  1 - sum_i S_i / (K log2 K)
//   Extreme: 1 - max_i S_i / log2 K
//
// CEI^A derives the split from an N-sigma threshold on the pooled scores and
// the tail weight from how much heavier each group's tail is than the tail of
// a normal fitted to that group.

#ifndef EQUITY_CEI_H_
#define EQUITY_CEI_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "equity/distributions.h"
#include "equity/ingest.h"

namespace equity {

inline constexpr double kDefaultSplitPercentile = 95.0;
inline constexpr double kDefaultTailWeight = 0.8;
inline constexpr double kDefaultSigmas = 3.0;

enum class Variant { kNormal, kExtreme };
enum class CeiMode { kManual, kAutomated };

std::string_view to_string(Variant v);
std::string_view to_string(CeiMode m);

// (w_tail, w_center) with w_center = 1 - w_tail by construction.
class TailWeighting {
 public:
  static TailWeighting Manual(double w_tail);
  static TailWeighting Automated(double w_tail);

  double tail() const { return tail_; }
  double center() const { return 1.0 - tail_; }
  CeiMode source() const { return source_; }

 private:
  TailWeighting(double w_tail, CeiMode source);

  double tail_;
  CeiMode source_;
};

struct GroupDivergence {
  std::string group;
  double divergence = 0.0;  // bits
};

struct IndexValue {
  double value = 1.0;
  bool clamped = false;  // raw value fell below 0 and was clamped
};

// Applies the Normal or Extreme aggregation to K >= 2 divergences.
IndexValue aggregate_index(std::span<const double> divergences,
                           Variant variant);

struct DfiResult {
  Variant variant = Variant::kNormal;
  double value = 1.0;
  bool clamped = false;
  std::vector<GroupDivergence> per_group;
};

DfiResult dfi(const ScoreDataset& ds, Variant variant,
              std::size_t bins = kDefaultBins,
              double epsilon = kDefaultEpsilon);

// Same computation on per-group combined histograms that share one grid.
DfiResult dfi_from_histograms(std::span<const EmpiricalDistribution> dists,
                              std::span<const std::string> groups,
                              Variant variant,
                              double epsilon = kDefaultEpsilon);

double split_divergence(const SplitDistribution& group_dist,
                        const EmpiricalDistribution& mean_center,
                        const EmpiricalDistribution& mean_tail,
                        const TailWeighting& weighting,
                        double epsilon = kDefaultEpsilon);

struct CeiConfig {
  CeiMode mode = CeiMode::kManual;
  double split_percentile = kDefaultSplitPercentile;  // manual mode
  double tail_weight = kDefaultTailWeight;            // manual mode
  double n_sigma = kDefaultSigmas;                    // automated mode
  ScoreKind kind = ScoreKind::kGenuine;
  Variant variant = Variant::kExtreme;
  std::size_t bins = kDefaultBins;
  double epsilon = kDefaultEpsilon;
};

struct TailDeviation {
  std::string group;
  double delta = 0.0;  // (m_emp - m_gauss) / m_gauss
  double empirical_tail_mass = 0.0;
  double gaussian_tail_mass = 0.0;
};

struct CeiResult {
  CeiMode mode = CeiMode::kManual;
  ScoreKind kind = ScoreKind::kGenuine;
  Variant variant = Variant::kExtreme;
  double value = 1.0;
  std::vector<GroupDivergence> per_group;
  double split_percentile_used = 0.0;
  double split_score_used = 0.0;
  TailWeighting weighting_used = TailWeighting::Manual(kDefaultTailWeight);
  std::vector<std::string> flags;
  std::vector<TailDeviation> deviations;  // automated mode only
};

// CEI with an explicit common split score. Throws equity::Error naming the
// group and kind when a group's split is degenerate.
CeiResult cei_at_split(const ScoreDataset& ds, ScoreKind kind,
                       Variant variant, double split_score,
                       double split_percentile, const TailWeighting& weighting,
                       std::size_t bins = kDefaultBins,
                       double epsilon = kDefaultEpsilon);

// Manual mode splits at the pooled percentile_score of config.kind; automated
// mode delegates to cei_auto.
CeiResult cei(const ScoreDataset& ds, const CeiConfig& config);

double sigmoid(double x);

// Tail of `scores` strictly beyond t compared with the tail of N(mean, sd)
// beyond t, using `stats` as the fitted normal.
TailDeviation tail_deviation(std::span<const double> scores, double t,
                             const SummaryStats& stats, TailDirection dir);

struct AutoParameters {
  Threshold threshold;       // split score from the pooled N-sigma rule
  double split_percentile;   // P(t) on the pooled scores
  TailWeighting weighting;   // w_tail = mean_i sigmoid(delta_i) * P(t) / 100
  std::vector<TailDeviation> deviations;
};

AutoParameters auto_parameters(const ScoreDataset& ds, ScoreKind kind,
                               double n_sigma = kDefaultSigmas);

CeiResult cei_auto(const ScoreDataset& ds, ScoreKind kind, Variant variant,
                   double n_sigma = kDefaultSigmas,
                   std::size_t bins = kDefaultBins,
                   double epsilon = kDefaultEpsilon);

}  // namespace equity

#endif  // EQUITY_CEI_H_
