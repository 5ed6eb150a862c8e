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

#include "equity/cei.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equity/error.h"

namespace equity {

namespace {

constexpr double kMinGaussianTail = 1e-300;

const std::vector<double>& cell_scores(const GroupScores& g, ScoreKind kind) {
  const auto& s = g.scores(kind);
  if (s.empty()) {
    throw Error("group '" + g.group + "' has no " +
                std::string(to_string(kind)) + " scores");
  }
  return s;
}

std::vector<double> divergence_values(
    const std::vector<GroupDivergence>& per_group) {
  std::vector<double> v;
  v.reserve(per_group.size());
  for (const auto& g : per_group) v.push_back(g.divergence);
  return v;
}

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::kNormal ? "normal" : "extreme";
}

std::string_view to_string(CeiMode m) {
  return m == CeiMode::kManual ? "manual" : "automated";
}

TailWeighting::TailWeighting(double w_tail, CeiMode source)
    : tail_(w_tail), source_(source) {
  if (!(w_tail >= 0.0 && w_tail <= 1.0)) {
    throw Error("tail weight must lie in [0,1]");
  }
}

TailWeighting TailWeighting::Manual(double w_tail) {
  return TailWeighting(w_tail, CeiMode::kManual);
}

TailWeighting TailWeighting::Automated(double w_tail) {
  return TailWeighting(w_tail, CeiMode::kAutomated);
}

IndexValue aggregate_index(std::span<const double> divergences,
                           Variant variant) {
  if (divergences.size() < 2) {
    throw Error("K must be \xE2\x89\xA5 2 to aggregate divergences");
  }
  const auto k = static_cast<double>(divergences.size());
  const double log2k = std::log2(k);
  double raw;
  if (variant == Variant::kNormal) {
    raw = 1.0 - std::accumulate(divergences.begin(), divergences.end(), 0.0) /
                    (k * log2k);
  } else {
    raw = 1.0 - *std::max_element(divergences.begin(), divergences.end()) /
                    log2k;
  }
  IndexValue out;
  out.clamped = raw < 0.0;
  out.value = std::max(0.0, raw);
  return out;
}

DfiResult dfi_from_histograms(std::span<const EmpiricalDistribution> dists,
                              std::span<const std::string> groups,
                              Variant variant, double epsilon) {
  if (dists.size() != groups.size()) {
    throw Error("dfi: one group name per distribution required");
  }
  const auto mean = mean_distribution(dists);
  DfiResult res;
  res.variant = variant;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    res.per_group.push_back(
        {groups[i], kl_divergence(dists[i], mean, epsilon)});
  }
  const auto idx = aggregate_index(divergence_values(res.per_group), variant);
  res.value = idx.value;
  res.clamped = idx.clamped;
  return res;
}

DfiResult dfi(const ScoreDataset& ds, Variant variant, std::size_t bins,
              double epsilon) {
  std::vector<EmpiricalDistribution> dists;
  std::vector<std::string> names;
  for (const auto& g : ds.groups()) {
    if (g.genuine.empty() && g.impostor.empty()) {
      throw Error("group '" + g.group + "' has no scores");
    }
    dists.push_back(build_histogram(g.combined(), bins));
    names.push_back(g.group);
  }
  return dfi_from_histograms(dists, names, variant, epsilon);
}

double split_divergence(const SplitDistribution& group_dist,
                        const EmpiricalDistribution& mean_center,
                        const EmpiricalDistribution& mean_tail,
                        const TailWeighting& weighting, double epsilon) {
  return weighting.tail() *
             kl_divergence(group_dist.tail, mean_tail, epsilon) +
         weighting.center() *
             kl_divergence(group_dist.center, mean_center, epsilon);
}

CeiResult cei_at_split(const ScoreDataset& ds, ScoreKind kind,
                       Variant variant, double split_score,
                       double split_percentile, const TailWeighting& weighting,
                       std::size_t bins, double epsilon) {
  const TailDirection dir = tail_direction_for(kind);

  std::vector<SplitDistribution> splits;
  splits.reserve(ds.size());
  for (const auto& g : ds.groups()) {
    const auto hist = build_histogram(cell_scores(g, kind), bins);
    try {
      splits.push_back(
          split_distribution(hist, split_score, dir, split_percentile));
    } catch (const Error& e) {
      throw Error("group '" + g.group + "' (" + std::string(to_string(kind)) +
                  "): " + e.what());
    }
  }

  std::vector<EmpiricalDistribution> centers;
  std::vector<EmpiricalDistribution> tails;
  for (const auto& s : splits) {
    centers.push_back(s.center);
    tails.push_back(s.tail);
  }
  const auto mean_center = mean_distribution(centers);
  const auto mean_tail = mean_distribution(tails);

  CeiResult res;
  res.mode = weighting.source();
  res.kind = kind;
  res.variant = variant;
  res.split_score_used = split_score;
  res.split_percentile_used = split_percentile;
  res.weighting_used = weighting;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    res.per_group.push_back(
        {ds[i].group,
         split_divergence(splits[i], mean_center, mean_tail, weighting,
                          epsilon)});
  }
  const auto idx = aggregate_index(divergence_values(res.per_group), variant);
  res.value = idx.value;
  if (idx.clamped) res.flags.push_back("value_clamped_to_zero");
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i].tail_empty) res.flags.push_back("empty_tail:" + ds[i].group);
    if (splits[i].center_empty) {
      res.flags.push_back("empty_center:" + ds[i].group);
    }
  }
  return res;
}

CeiResult cei(const ScoreDataset& ds, const CeiConfig& config) {
  if (config.mode == CeiMode::kAutomated) {
    return cei_auto(ds, config.kind, config.variant, config.n_sigma,
                    config.bins, config.epsilon);
  }
  if (!(config.split_percentile > 0.0 && config.split_percentile < 100.0)) {
    throw Error("split percentile must lie in (0, 100)");
  }
  const auto pooled = ds.pooled(config.kind);
  if (pooled.empty()) {
    throw Error("no " + std::string(to_string(config.kind)) + " scores");
  }
  const double split_score = percentile_score(
      pooled, config.split_percentile, tail_direction_for(config.kind));
  return cei_at_split(ds, config.kind, config.variant, split_score,
                      config.split_percentile,
                      TailWeighting::Manual(config.tail_weight), config.bins,
                      config.epsilon);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TailDeviation tail_deviation(std::span<const double> scores, double t,
                             const SummaryStats& stats, TailDirection dir) {
  if (scores.empty()) throw Error("tail_deviation: no scores");
  if (!(stats.std_dev > 0.0)) {
    throw Error("degenerate distribution: standard deviation is 0");
  }
  const auto beyond =
      dir == TailDirection::kRight
          ? std::count_if(scores.begin(), scores.end(),
                          [t](double x) { return x > t; })
          : std::count_if(scores.begin(), scores.end(),
                          [t](double x) { return x < t; });

  TailDeviation dev;
  dev.empirical_tail_mass =
      static_cast<double>(beyond) / static_cast<double>(scores.size());
  const double z = dir == TailDirection::kRight
                       ? (t - stats.mean) / stats.std_dev
                       : (stats.mean - t) / stats.std_dev;
  dev.gaussian_tail_mass = 0.5 * std::erfc(z / std::sqrt(2.0));
  if (dev.gaussian_tail_mass < kMinGaussianTail) {
    throw Error("threshold beyond numeric range: normal tail mass underflows");
  }
  dev.delta = (dev.empirical_tail_mass - dev.gaussian_tail_mass) /
              dev.gaussian_tail_mass;
  return dev;
}

AutoParameters auto_parameters(const ScoreDataset& ds, ScoreKind kind,
                               double n_sigma) {
  const TailDirection dir = tail_direction_for(kind);
  const auto pooled = ds.pooled(kind);
  if (pooled.empty()) {
    throw Error("no " + std::string(to_string(kind)) + " scores");
  }
  const auto pooled_stats = summary_stats(pooled);
  const Threshold thr = sigma_threshold(pooled_stats, n_sigma, dir);
  const double p = empirical_percentile(pooled, thr.value, dir);
  if (p >= 100.0) {
    std::string msg = "no tail mass at N sigma (" +
                      std::string(to_string(kind)) +
                      ", N=" + std::to_string(n_sigma);
    if (thr.clamped) {
      msg += ", threshold clamped to " + std::to_string(thr.value);
    }
    throw Error(msg + ")");
  }

  std::vector<TailDeviation> deviations;
  double s_sum = 0.0;
  for (const auto& g : ds.groups()) {
    const auto& scores = cell_scores(g, kind);
    const auto stats = summary_stats(scores);
    if (!(stats.std_dev > 0.0)) {
      throw Error("degenerate distribution: group '" + g.group + "' (" +
                  std::string(to_string(kind)) +
                  ") has zero standard deviation");
    }
    auto dev = tail_deviation(scores, thr.value, stats, dir);
    dev.group = g.group;
    s_sum += sigmoid(dev.delta) * p / 100.0;
    deviations.push_back(std::move(dev));
  }
  const double w_tail = s_sum / static_cast<double>(ds.size());
  return AutoParameters{thr, p, TailWeighting::Automated(w_tail),
                        std::move(deviations)};
}

CeiResult cei_auto(const ScoreDataset& ds, ScoreKind kind, Variant variant,
                   double n_sigma, std::size_t bins, double epsilon) {
  auto params = auto_parameters(ds, kind, n_sigma);
  auto res = cei_at_split(ds, kind, variant, params.threshold.value,
                          params.split_percentile, params.weighting, bins,
                          epsilon);
  if (params.threshold.clamped) res.flags.push_back("split_score_clamped");
  res.deviations = std::move(params.deviations);
  return res;
}

}  // namespace equity
