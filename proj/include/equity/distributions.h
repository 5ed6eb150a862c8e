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

// Histogram distributions over score bins and the tail/center machinery
// shared by the distribution-based fairness indices.
//
// All divergences are in bits. Percentiles follow a "center side" convention:
// for a right tail P(t) is the share of scores <= t, for a left tail the share
// of scores >= t, so "95" means the same thing for impostor (right) and
// genuine (left) analyses.

#ifndef EQUITY_DISTRIBUTIONS_H_
#define EQUITY_DISTRIBUTIONS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "equity/ingest.h"

namespace equity {

inline constexpr std::size_t kDefaultBins = 100;
inline constexpr double kDefaultEpsilon = 1e-10;

enum class TailDirection { kLeft, kRight };

std::string_view to_string(TailDirection dir);

// Errors live in the low genuine tail (FNMR) and the high impostor tail (FMR).
constexpr TailDirection tail_direction_for(ScoreKind kind) {
  return kind == ScoreKind::kGenuine ? TailDirection::kLeft
                                     : TailDirection::kRight;
}

// A probability mass function over contiguous bins. Histograms built from
// scores cover [0,1]; the parts of a split cover a contiguous sub-range.
class EmpiricalDistribution {
 public:
  // Throws equity::Error unless edges are strictly increasing with
  // edges.size() == masses.size() + 1, masses are non-negative, and masses
  // sum to 1 within 1e-12.
  EmpiricalDistribution(std::vector<double> bin_edges,
                        std::vector<double> masses);

  // Masses on the uniform B-bin grid over [0,1].
  static EmpiricalDistribution OnUniformGrid(std::vector<double> masses);

  std::span<const double> bin_edges() const { return edges_; }
  std::span<const double> masses() const { return masses_; }
  std::size_t bins() const { return masses_.size(); }

  bool same_grid(const EmpiricalDistribution& other) const {
    return edges_ == other.edges_;
  }

 private:
  std::vector<double> edges_;
  std::vector<double> masses_;
};

std::vector<double> uniform_bin_edges(std::size_t bins);

// Uniform bins over [0,1]; a score of exactly 1.0 lands in the last bin.
EmpiricalDistribution build_histogram(std::span<const double> scores,
                                      std::size_t bins);

// Binwise arithmetic mean. Requires at least two inputs on one grid.
EmpiricalDistribution mean_distribution(
    std::span<const EmpiricalDistribution> dists);

// D_KL(p || q) in bits after adding `epsilon` to every bin of both inputs and
// renormalizing. Always finite and non-negative.
double kl_divergence(const EmpiricalDistribution& p,
                     const EmpiricalDistribution& q,
                     double epsilon = kDefaultEpsilon);

struct Threshold {
  double value = 0.0;  // clamped to [0,1]
  double raw = 0.0;    // mean +/- n_sigma * std_dev before clamping
  bool clamped = false;
};

// mean + N*sigma for a right tail, mean - N*sigma for a left tail.
Threshold sigma_threshold(const SummaryStats& stats, double n_sigma,
                          TailDirection dir);

// Percentage of scores on the center side of t (see file comment).
double empirical_percentile(std::span<const double> scores, double t,
                            TailDirection dir);

// Inverse of empirical_percentile: the observed score at the boundary of
// {t : empirical_percentile(scores, t, dir) >= p}. That is the smallest such
// score for a right tail and the largest such score for a left tail.
double percentile_score(std::span<const double> scores, double p,
                        TailDirection dir);

struct SplitDistribution {
  EmpiricalDistribution center;
  EmpiricalDistribution tail;
  double split_score = 0.0;
  double split_percentile = 0.0;
  TailDirection direction = TailDirection::kRight;
  double tail_mass_raw = 0.0;  // tail mass before renormalization
  bool tail_empty = false;     // no raw mass; the part is uniform
  bool center_empty = false;
};

// Right tail: bins whose lower edge is >= split_score. Left tail: bins whose
// upper edge is <= split_score. Both parts are renormalized to unit mass; a
// part with no raw mass becomes uniform over its bins, which is what the
// per-bin KL smoothing would make of it. Throws equity::Error ("degenerate
// split") if either part has no bins.
SplitDistribution split_distribution(const EmpiricalDistribution& dist,
                                     double split_score, TailDirection dir,
                                     double split_percentile);

// Concatenates the parts weighted by their raw masses.
EmpiricalDistribution reassemble(const SplitDistribution& split);

}  // namespace equity

#endif  // EQUITY_DISTRIBUTIONS_H_
