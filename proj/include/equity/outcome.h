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

// Differential outcome metrics: per-group error rates at one operating point,
// summarized by Inequity (max over geometric mean) and GARBE (a Gini-style
// dispersion).

#ifndef EQUITY_OUTCOME_H_
#define EQUITY_OUTCOME_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "equity/ingest.h"

namespace equity {

inline constexpr double kDefaultTargetFmr = 3e-4;
inline constexpr double kDefaultRateFloor = 1e-6;

enum class ErrorKind { kFmr, kFnmr };

std::string_view to_string(ErrorKind kind);

struct GroupRate {
  std::string group;
  double rate = 0.0;
};

struct ErrorRates {
  ErrorKind kind = ErrorKind::kFmr;
  double threshold = 0.0;
  std::vector<GroupRate> per_group;

  std::vector<double> values() const;
};

// Fraction of impostor scores >= tau.
double fmr(std::span<const double> impostor_scores, double tau);
// Fraction of genuine scores < tau.
double fnmr(std::span<const double> genuine_scores, double tau);

struct OperatingPoint {
  double threshold = 0.0;
  double achieved_fmr = 0.0;
  // Fewer pooled impostor scores than 1/target: the target cannot be resolved.
  bool under_resolved = false;
};

// Smallest tau among the observed scores (or just above the maximum) whose
// pooled FMR does not exceed the target.
OperatingPoint threshold_at_fmr(std::span<const double> impostor_scores,
                                double target_fmr);

struct InequityResult {
  double value = 1.0;
  bool floor_applied = false;
};

// max_i r_i / geomean_i(r_i), with every rate raised to at least `floor`.
InequityResult inequity(std::span<const double> rates,
                        double floor = kDefaultRateFloor);
InequityResult inequity(const ErrorRates& rates,
                        double floor = kDefaultRateFloor);

// sum_i sum_j |r_i - r_j| / (2 K^2 mean(r)); 0 when every rate is 0.
double garbe(std::span<const double> rates);
double garbe(const ErrorRates& rates);

ErrorRates group_fmr(const ScoreDataset& ds, double tau);
ErrorRates group_fnmr(const ScoreDataset& ds, double tau);

struct OutcomeReport {
  OperatingPoint operating_point;
  double target_fmr = kDefaultTargetFmr;
  double floor = kDefaultRateFloor;
  ErrorRates fmr_rates;
  ErrorRates fnmr_rates;
  InequityResult inequity_fmr;
  InequityResult inequity_fnmr;
  double garbe_fmr = 0.0;
  double garbe_fnmr = 0.0;

  double threshold() const { return operating_point.threshold; }
  bool floor_applied() const {
    return inequity_fmr.floor_applied || inequity_fnmr.floor_applied;
  }
};

OutcomeReport outcome_suite(const ScoreDataset& ds,
                            double target_fmr = kDefaultTargetFmr,
                            double floor = kDefaultRateFloor);

}  // namespace equity

#endif  // EQUITY_OUTCOME_H_
