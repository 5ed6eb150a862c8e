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

#include "support/properties.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "equity/cei.h"
#include "equity/distributions.h"
#include "equity/error.h"
#include "equity/outcome.h"

namespace equity::proptest {
namespace {

constexpr double kTol = 1e-12;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> betas(std::mt19937_64& rng, double a, double b,
                          std::size_t n) {
  std::gamma_distribution<double> ga(a), gb(b);
  std::vector<double> out(n);
  for (double& x : out) {
    const double u = ga(rng);
    x = u / (u + gb(rng));
  }
  return out;
}

// Runs `body` once per trial. The body returns an empty string on success, a
// message on failure, and may throw equity::Error to mark the trial skipped.
PropertyResult check(const std::string& name, std::size_t trials,
                     const std::function<std::string(std::size_t)>& body) {
  PropertyResult r;
  r.name = name;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::string msg;
    try {
      msg = body(t);
    } catch (const Error&) {
      ++r.skipped;
      continue;
    }
    if (!msg.empty()) {
      if (r.failures++ == 0) r.first_failure = "trial " + std::to_string(t) + ": " + msg;
    }
  }
  return r;
}

std::string fmt(double a, double b) {
  std::ostringstream s;
  s.precision(17);
  s << a << " vs " << b;
  return s.str();
}

struct Indices {
  double dfi_n, dfi_e;
  double cei_n[2], cei_e[2];
};

Indices indices(const ScoreDataset& ds) {
  Indices x{};
  x.dfi_n = dfi(ds, Variant::kNormal).value;
  x.dfi_e = dfi(ds, Variant::kExtreme).value;
  for (int k = 0; k < 2; ++k) {
    CeiConfig c;
    c.kind = k == 0 ? ScoreKind::kGenuine : ScoreKind::kImpostor;
    c.variant = Variant::kNormal;
    x.cei_n[k] = cei(ds, c).value;
    c.variant = Variant::kExtreme;
    x.cei_e[k] = cei(ds, c).value;
  }
  return x;
}

}  // namespace

ScoreDataset random_dataset(std::mt19937_64& rng) {
  const std::size_t k = pick(rng, 2, 6);
  std::vector<GroupScores> groups;
  for (std::size_t i = 0; i < k; ++i) {
    GroupScores g;
    g.group = "g" + std::to_string(i);
    g.genuine = betas(rng, uniform(rng, 5, 12), uniform(rng, 1.5, 3), pick(rng, 80, 250));
    g.impostor = betas(rng, uniform(rng, 1.5, 3), uniform(rng, 5, 12), pick(rng, 80, 250));
    groups.push_back(std::move(g));
  }
  return ScoreDataset(std::move(groups));
}

ScoreDataset small_random_dataset(std::mt19937_64& rng, std::size_t max_per_cell) {
  const std::size_t k = pick(rng, 2, 4);
  auto draw = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) {
      x = pick(rng, 0, 4) == 0 ? 0.25 * static_cast<double>(pick(rng, 0, 4))
                               : uniform(rng, 0, 1);
    }
    return v;
  };
  std::vector<GroupScores> groups;
  for (std::size_t i = 0; i < k; ++i) {
    groups.push_back({"g" + std::to_string(i), draw(pick(rng, 1, max_per_cell)),
                      draw(pick(rng, 1, max_per_cell))});
  }
  return ScoreDataset(std::move(groups));
}

std::vector<PropertyResult> run_properties(std::uint64_t seed,
                                           std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::vector<PropertyResult> out;

  out.push_back(check("kl_to_mean_within_0_and_log2K", trials, [&](std::size_t) {
    // Raw random histograms, about a third of the bins empty.
    const std::size_t k = pick(rng, 2, 6), bins = pick(rng, 2, 100);
    std::vector<EmpiricalDistribution> h;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> m(bins);
      for (double& x : m) x = pick(rng, 0, 2) == 0 ? 0.0 : uniform(rng, 0, 1);
      m[pick(rng, 0, bins - 1)] += 1.0;
      double z = 0;
      for (double x : m) z += x;
      for (double& x : m) x /= z;
      h.push_back(EmpiricalDistribution::OnUniformGrid(std::move(m)));
    }
    const auto mean = mean_distribution(h);
    const double bound = std::log2(static_cast<double>(k));
    for (const auto& d : h) {
      const double kl = kl_divergence(d, mean);
      if (!(kl >= 0.0 && kl <= bound + kTol)) return "KL " + fmt(kl, bound);
    }
    return std::string();
  }));

  out.push_back(check("indices_in_unit_range_extreme_le_normal", trials, [&](std::size_t) {
    const auto ds = random_dataset(rng);
    const auto x = indices(ds);
    std::vector<std::pair<double, double>> pairs = {
        {x.dfi_e, x.dfi_n}, {x.cei_e[0], x.cei_n[0]}, {x.cei_e[1], x.cei_n[1]}};
    for (auto kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
      pairs.emplace_back(cei_auto(ds, kind, Variant::kExtreme, 2.0).value,
                         cei_auto(ds, kind, Variant::kNormal, 2.0).value);
    }
    for (auto [e, n] : pairs) {
      if (!(e >= 0.0 && n <= 1.0)) return "out of range " + fmt(e, n);
      if (e > n + kTol) return "extreme above normal " + fmt(e, n);
    }
    return std::string();
  }));

  out.push_back(check("garbe_scale_invariant_and_bounded", trials, [&](std::size_t) {
    const std::size_t k = pick(rng, 2, 8);
    std::vector<double> r(k), scaled(k);
    for (double& v : r) v = pick(rng, 0, 3) == 0 ? 0.0 : uniform(rng, 1e-5, 0.2);
    // Rates stay in [0,1] after scaling.
    const double mx = *std::max_element(r.begin(), r.end());
    const double c = std::pow(10.0, uniform(rng, -3, mx > 0 ? -std::log10(mx) : 0));
    for (std::size_t i = 0; i < k; ++i) scaled[i] = c * r[i];
    const double g = garbe(r), gs = garbe(scaled);
    if (std::abs(g - gs) > kTol) return "scale " + fmt(g, gs);
    const double top = (static_cast<double>(k) - 1) / static_cast<double>(k);
    if (!(g >= 0.0 && g <= top + kTol)) return "bound " + fmt(g, top);
    return std::string();
  }));

  out.push_back(check("inequity_at_least_one", trials, [&](std::size_t) {
    const std::size_t k = pick(rng, 2, 8);
    std::vector<double> r(k);
    for (double& v : r) v = pick(rng, 0, 3) == 0 ? 0.0 : uniform(rng, 0, 0.2);
    const double in = inequity(r).value;
    if (!(in >= 1.0 - kTol)) return "inequity " + fmt(in, 1.0);
    const std::vector<double> flat(k, r[0]);
    if (std::abs(inequity(flat).value - 1.0) > kTol) return std::string("flat rates");
    return std::string();
  }));

  out.push_back(check("group_and_score_order_invariance", trials, [&](std::size_t) {
    const auto ds = random_dataset(rng);
    std::vector<GroupScores> groups(ds.groups().begin(), ds.groups().end());
    std::shuffle(groups.begin(), groups.end(), rng);
    for (auto& g : groups) {
      std::shuffle(g.genuine.begin(), g.genuine.end(), rng);
      std::shuffle(g.impostor.begin(), g.impostor.end(), rng);
    }
    const ScoreDataset perm(std::move(groups));
    const auto a = indices(ds), b = indices(perm);
    const double av[] = {a.dfi_n, a.dfi_e, a.cei_n[0], a.cei_e[0], a.cei_n[1], a.cei_e[1]};
    const double bv[] = {b.dfi_n, b.dfi_e, b.cei_n[0], b.cei_e[0], b.cei_n[1], b.cei_e[1]};
    for (int i = 0; i < 6; ++i) {
      if (std::abs(av[i] - bv[i]) > kTol) return "index " + fmt(av[i], bv[i]);
    }
    const auto oa = outcome_suite(ds, 0.05), ob = outcome_suite(perm, 0.05);
    if (oa.threshold() != ob.threshold()) return "threshold " + fmt(oa.threshold(), ob.threshold());
    const std::pair<double, double> metrics[] = {
        {oa.garbe_fmr, ob.garbe_fmr},
        {oa.garbe_fnmr, ob.garbe_fnmr},
        {oa.inequity_fmr.value, ob.inequity_fmr.value},
        {oa.inequity_fnmr.value, ob.inequity_fnmr.value}};
    for (auto [x, y] : metrics) {
      // Inequity with a floored zero rate can reach 1e5, so compare relatively.
      if (std::abs(x - y) > kTol * std::max(1.0, std::abs(x))) {
        return "outcome metric " + fmt(x, y);
      }
    }
    return std::string();
  }));

  out.push_back(check("error_rates_monotone_in_threshold", trials, [&](std::size_t) {
    const auto ds = random_dataset(rng);
    const auto& g = ds[0];
    std::vector<double> taus(20);
    for (double& t : taus) t = uniform(rng, 0, 1);
    std::sort(taus.begin(), taus.end());
    for (std::size_t i = 1; i < taus.size(); ++i) {
      if (fmr(g.impostor, taus[i]) > fmr(g.impostor, taus[i - 1])) return std::string("fmr rose");
      if (fnmr(g.genuine, taus[i]) < fnmr(g.genuine, taus[i - 1])) return std::string("fnmr fell");
    }
    return std::string();
  }));

  out.push_back(check("split_then_reassemble_is_identity", trials, [&](std::size_t) {
    const auto ds = random_dataset(rng);
    const auto hist = build_histogram(ds[0].combined(), kDefaultBins);
    const auto dir = pick(rng, 0, 1) == 0 ? TailDirection::kLeft : TailDirection::kRight;
    const auto split = split_distribution(hist, uniform(rng, 0.02, 0.98), dir, 50.0);
    const auto back = reassemble(split);
    if (!back.same_grid(hist)) return std::string("grid changed");
    for (std::size_t b = 0; b < hist.bins(); ++b) {
      if (std::abs(back.masses()[b] - hist.masses()[b]) > kTol) {
        return "bin " + std::to_string(b) + " " + fmt(back.masses()[b], hist.masses()[b]);
      }
    }
    return std::string();
  }));

  out.push_back(check("identical_groups_score_one", trials, [&](std::size_t) {
    const auto base = random_dataset(rng);
    std::vector<GroupScores> groups;
    for (std::size_t i = 0; i < pick(rng, 2, 5); ++i) {
      groups.push_back({"g" + std::to_string(i), base[0].genuine, base[0].impostor});
    }
    const auto x = indices(ScoreDataset(std::move(groups)));
    for (double v : {x.dfi_n, x.dfi_e, x.cei_n[0], x.cei_e[0], x.cei_n[1], x.cei_e[1]}) {
      if (std::abs(v - 1.0) > kTol) return "index " + fmt(v, 1.0);
    }
    return std::string();
  }));

  return out;
}

}  // namespace equity::proptest
