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

#include "equity/distributions.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "equity/error.h"

namespace equity {

namespace {

constexpr double kMassTolerance = 1e-12;

double percent(std::size_t count, std::size_t n) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(n);
}

double total(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

void require_same_grid(const EmpiricalDistribution& a,
                       const EmpiricalDistribution& b, const char* op) {
  if (!a.same_grid(b)) {
    throw Error(std::string(op) + ": distributions are on different bin grids");
  }
}

EmpiricalDistribution renormalized_part(std::span<const double> edges,
                                        std::span<const double> masses,
                                        double part_mass) {
  std::vector<double> out(masses.begin(), masses.end());
  // A part without mass keeps the shape epsilon smoothing would give it.
  if (!(part_mass > 0.0)) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return EmpiricalDistribution({edges.begin(), edges.end()}, std::move(out));
  }
  for (double& m : out) m /= part_mass;
  return EmpiricalDistribution({edges.begin(), edges.end()}, std::move(out));
}

}  // namespace

std::string_view to_string(TailDirection dir) {
  return dir == TailDirection::kLeft ? "left" : "right";
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> bin_edges,
                                             std::vector<double> masses)
    : edges_(std::move(bin_edges)), masses_(std::move(masses)) {
  if (masses_.empty() || edges_.size() != masses_.size() + 1) {
    throw Error("distribution needs B >= 1 masses and B+1 bin edges");
  }
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw Error("bin edges must be strictly increasing");
    }
  }
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw Error("bin masses must be finite and non-negative");
    }
  }
  if (std::abs(total(masses_) - 1.0) > kMassTolerance) {
    throw Error("bin masses must sum to 1");
  }
}

EmpiricalDistribution EmpiricalDistribution::OnUniformGrid(
    std::vector<double> masses) {
  auto edges = uniform_bin_edges(masses.size());
  return EmpiricalDistribution(std::move(edges), std::move(masses));
}

std::vector<double> uniform_bin_edges(std::size_t bins) {
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) {
    edges[k] = static_cast<double>(k) / static_cast<double>(bins);
  }
  return edges;
}

EmpiricalDistribution build_histogram(std::span<const double> scores,
                                      std::size_t bins) {
  if (scores.empty()) throw Error("build_histogram: no scores");
  if (bins < 2) throw Error("build_histogram: need at least 2 bins");

  auto edges = uniform_bin_edges(bins);
  std::vector<std::size_t> counts(bins, 0);
  const auto last = static_cast<std::ptrdiff_t>(bins) - 1;
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw Error("build_histogram: score outside [0,1]");
    }
    auto idx = std::min<std::ptrdiff_t>(
        last, static_cast<std::ptrdiff_t>(s * static_cast<double>(bins)));
    // Bin membership must agree with the stored edges exactly.
    while (idx > 0 && s < edges[idx]) --idx;
    while (idx < last && s >= edges[idx + 1]) ++idx;
    ++counts[idx];
  }

  std::vector<double> masses(bins);
  const auto n = static_cast<double>(scores.size());
  for (std::size_t k = 0; k < bins; ++k) {
    masses[k] = static_cast<double>(counts[k]) / n;
  }
  return EmpiricalDistribution(std::move(edges), std::move(masses));
}

EmpiricalDistribution mean_distribution(
    std::span<const EmpiricalDistribution> dists) {
  if (dists.size() < 2) {
    throw Error("mean_distribution: need at least 2 distributions");
  }
  std::vector<double> sum(dists.front().bins(), 0.0);
  for (const auto& d : dists) {
    require_same_grid(dists.front(), d, "mean_distribution");
    const auto m = d.masses();
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += m[k];
  }
  const auto k_groups = static_cast<double>(dists.size());
  for (double& v : sum) v /= k_groups;
  const auto edges = dists.front().bin_edges();
  return EmpiricalDistribution({edges.begin(), edges.end()}, std::move(sum));
}

double kl_divergence(const EmpiricalDistribution& p,
                     const EmpiricalDistribution& q, double epsilon) {
  require_same_grid(p, q, "kl_divergence");
  if (!(epsilon > 0.0)) throw Error("kl_divergence: epsilon must be > 0");

  const auto pm = p.masses();
  const auto qm = q.masses();
  const double bins = static_cast<double>(pm.size());
  const double p_norm = total(pm) + bins * epsilon;
  const double q_norm = total(qm) + bins * epsilon;

  double d = 0.0;
  for (std::size_t k = 0; k < pm.size(); ++k) {
    const double pk = (pm[k] + epsilon) / p_norm;
    const double qk = (qm[k] + epsilon) / q_norm;
    d += pk * std::log2(pk / qk);
  }
  return std::max(0.0, d);
}

Threshold sigma_threshold(const SummaryStats& stats, double n_sigma,
                          TailDirection dir) {
  if (!(n_sigma > 0.0)) throw Error("sigma_threshold: N must be > 0");
  if (!(stats.std_dev > 0.0)) {
    throw Error("degenerate distribution: standard deviation is 0");
  }
  Threshold t;
  t.raw = dir == TailDirection::kRight ? stats.mean + n_sigma * stats.std_dev
                                       : stats.mean - n_sigma * stats.std_dev;
  t.value = std::clamp(t.raw, 0.0, 1.0);
  t.clamped = t.value != t.raw;
  return t;
}

double empirical_percentile(std::span<const double> scores, double t,
                            TailDirection dir) {
  if (scores.empty()) throw Error("empirical_percentile: no scores");
  const auto count =
      dir == TailDirection::kRight
          ? std::count_if(scores.begin(), scores.end(),
                          [t](double x) { return x <= t; })
          : std::count_if(scores.begin(), scores.end(),
                          [t](double x) { return x >= t; });
  return percent(static_cast<std::size_t>(count), scores.size());
}

double percentile_score(std::span<const double> scores, double p,
                        TailDirection dir) {
  if (scores.empty()) throw Error("percentile_score: no scores");
  if (!(p > 0.0 && p <= 100.0)) {
    throw Error("percentile_score: percentile must be in (0, 100]");
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  if (dir == TailDirection::kRight) {
    std::sort(sorted.begin(), sorted.end());
  } else {
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
  }
  // Smallest count k with percent(k, n) >= p; the k-th score in center-first
  // order then has at least k scores on its center side.
  const std::size_t n = sorted.size();
  std::size_t lo = 1, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (percent(mid, n) >= p) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return sorted[lo - 1];
}

SplitDistribution split_distribution(const EmpiricalDistribution& dist,
                                     double split_score, TailDirection dir,
                                     double split_percentile) {
  const auto edges = dist.bin_edges();
  const auto masses = dist.masses();
  const std::size_t bins = masses.size();
  if (!(split_score > edges.front() && split_score < edges.back())) {
    throw Error("degenerate split: split score " + std::to_string(split_score) +
                " is not inside the histogram range");
  }

  // Bins [0, boundary) lie below the split, [boundary, bins) above it.
  std::size_t boundary = 0;
  if (dir == TailDirection::kRight) {
    while (boundary < bins && edges[boundary] < split_score) ++boundary;
  } else {
    while (boundary < bins && edges[boundary + 1] <= split_score) ++boundary;
  }
  if (boundary == 0 || boundary == bins) {
    throw Error("degenerate split: " + std::string(to_string(dir)) +
                " split at " + std::to_string(split_score) +
                " leaves an empty part");
  }

  const auto low_masses = masses.subspan(0, boundary);
  const auto high_masses = masses.subspan(boundary);
  const auto low_edges = edges.subspan(0, boundary + 1);
  const auto high_edges = edges.subspan(boundary);
  const double low_mass = total(low_masses);
  const double high_mass = total(high_masses);

  auto low = renormalized_part(low_edges, low_masses, low_mass);
  auto high = renormalized_part(high_edges, high_masses, high_mass);
  if (dir == TailDirection::kRight) {
    return SplitDistribution{std::move(low), std::move(high), split_score,
                             split_percentile, dir, high_mass,
                             !(high_mass > 0.0), !(low_mass > 0.0)};
  }
  return SplitDistribution{std::move(high), std::move(low), split_score,
                           split_percentile, dir, low_mass,
                           !(low_mass > 0.0), !(high_mass > 0.0)};
}

EmpiricalDistribution reassemble(const SplitDistribution& split) {
  const bool tail_first = split.direction == TailDirection::kLeft;
  const auto& first = tail_first ? split.tail : split.center;
  const auto& second = tail_first ? split.center : split.tail;
  const double first_mass =
      tail_first ? split.tail_mass_raw : 1.0 - split.tail_mass_raw;
  const double second_mass = 1.0 - first_mass;

  std::vector<double> edges(first.bin_edges().begin(),
                            first.bin_edges().end());
  edges.insert(edges.end(), second.bin_edges().begin() + 1,
               second.bin_edges().end());
  std::vector<double> masses;
  masses.reserve(first.bins() + second.bins());
  for (double m : first.masses()) masses.push_back(m * first_mass);
  for (double m : second.masses()) masses.push_back(m * second_mass);
  return EmpiricalDistribution(std::move(edges), std::move(masses));
}

}  // namespace equity
