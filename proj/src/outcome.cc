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

#include "equity/outcome.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "equity/error.h"

namespace equity {

namespace {

double fraction(std::size_t count, std::size_t n) {
  return static_cast<double>(count) / static_cast<double>(n);
}

void require_two_rates(std::span<const double> rates, const char* op) {
  if (rates.size() < 2) {
    throw Error(std::string(op) + ": need rates for at least 2 groups");
  }
  for (double r : rates) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(std::string(op) + ": error rates must lie in [0,1]");
    }
  }
}

ErrorRates group_rates(const ScoreDataset& ds, double tau, ErrorKind kind) {
  ErrorRates out;
  out.kind = kind;
  out.threshold = tau;
  const ScoreKind scores_kind =
      kind == ErrorKind::kFmr ? ScoreKind::kImpostor : ScoreKind::kGenuine;
  for (const auto& g : ds.groups()) {
    const auto& s = g.scores(scores_kind);
    if (s.empty()) {
      throw Error("group '" + g.group + "' has no " +
                  std::string(to_string(scores_kind)) + " scores");
    }
    out.per_group.push_back(
        {g.group, kind == ErrorKind::kFmr ? fmr(s, tau) : fnmr(s, tau)});
  }
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  return kind == ErrorKind::kFmr ? "FMR" : "FNMR";
}

std::vector<double> ErrorRates::values() const {
  std::vector<double> v;
  v.reserve(per_group.size());
  for (const auto& g : per_group) v.push_back(g.rate);
  return v;
}

double fmr(std::span<const double> impostor_scores, double tau) {
  if (impostor_scores.empty()) throw Error("fmr: no impostor scores");
  const auto n = std::count_if(impostor_scores.begin(), impostor_scores.end(),
                               [tau](double s) { return s >= tau; });
  return fraction(static_cast<std::size_t>(n), impostor_scores.size());
}

double fnmr(std::span<const double> genuine_scores, double tau) {
  if (genuine_scores.empty()) throw Error("fnmr: no genuine scores");
  const auto n = std::count_if(genuine_scores.begin(), genuine_scores.end(),
                               [tau](double s) { return s < tau; });
  return fraction(static_cast<std::size_t>(n), genuine_scores.size());
}

OperatingPoint threshold_at_fmr(std::span<const double> impostor_scores,
                                double target_fmr) {
  if (impostor_scores.empty()) {
    throw Error("threshold_at_fmr: no impostor scores");
  }
  if (!(target_fmr > 0.0 && target_fmr < 1.0)) {
    throw Error("threshold_at_fmr: target FMR must be in (0, 1)");
  }
  std::vector<double> sorted(impostor_scores.begin(), impostor_scores.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = sorted.size();

  OperatingPoint op;
  op.threshold =
      std::nextafter(sorted.front(), std::numeric_limits<double>::infinity());
  op.achieved_fmr = 0.0;
  op.under_resolved = static_cast<double>(n) < 1.0 / target_fmr;

  // Walk candidate thresholds downward; FMR only grows as tau decreases.
  std::size_t i = 0;
  while (i < n) {
    const double v = sorted[i];
    std::size_t j = i;
    while (j < n && sorted[j] == v) ++j;
    const double rate = fraction(j, n);  // scores >= v
    if (rate > target_fmr) break;
    op.threshold = v;
    op.achieved_fmr = rate;
    i = j;
  }
  return op;
}

InequityResult inequity(std::span<const double> rates, double floor) {
  require_two_rates(rates, "inequity");
  if (!(floor > 0.0)) throw Error("inequity: floor must be > 0");
  InequityResult res;
  double log_sum = 0.0;
  double max_rate = 0.0;
  for (double r : rates) {
    if (r < floor) res.floor_applied = true;
    const double floored = std::max(r, floor);
    log_sum += std::log(floored);
    max_rate = std::max(max_rate, floored);
  }
  const double geomean = std::exp(log_sum / static_cast<double>(rates.size()));
  // max >= geomean mathematically; exp/log rounding must not break that.
  res.value = std::max(1.0, max_rate / geomean);
  return res;
}

InequityResult inequity(const ErrorRates& rates, double floor) {
  return inequity(rates.values(), floor);
}

double garbe(std::span<const double> rates) {
  require_two_rates(rates, "garbe");
  const auto k = static_cast<double>(rates.size());
  const double mean = std::accumulate(rates.begin(), rates.end(), 0.0) / k;
  if (mean == 0.0) return 0.0;
  double abs_diff = 0.0;
  for (double ri : rates) {
    for (double rj : rates) abs_diff += std::abs(ri - rj);
  }
  return abs_diff / (2.0 * k * k * mean);
}

double garbe(const ErrorRates& rates) { return garbe(rates.values()); }

ErrorRates group_fmr(const ScoreDataset& ds, double tau) {
  return group_rates(ds, tau, ErrorKind::kFmr);
}

ErrorRates group_fnmr(const ScoreDataset& ds, double tau) {
  return group_rates(ds, tau, ErrorKind::kFnmr);
}

OutcomeReport outcome_suite(const ScoreDataset& ds, double target_fmr,
                            double floor) {
  OutcomeReport rep;
  rep.target_fmr = target_fmr;
  rep.floor = floor;
  rep.operating_point =
      threshold_at_fmr(ds.pooled(ScoreKind::kImpostor), target_fmr);
  rep.fmr_rates = group_fmr(ds, rep.threshold());
  rep.fnmr_rates = group_fnmr(ds, rep.threshold());
  rep.inequity_fmr = inequity(rep.fmr_rates, floor);
  rep.inequity_fnmr = inequity(rep.fnmr_rates, floor);
  rep.garbe_fmr = garbe(rep.fmr_rates);
  rep.garbe_fnmr = garbe(rep.fnmr_rates);
  return rep;
}

}  // namespace equity
