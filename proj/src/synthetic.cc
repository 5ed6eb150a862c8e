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

#include "equity/synthetic.h"

#include <random>
#include <string>

#include "equity/error.h"

namespace equity {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require_shape(BetaShape s) {
  if (!(s.alpha > 0.0 && s.beta > 0.0)) {
    throw Error("Beta shape parameters must be > 0");
  }
}

void validate_model(const ScoreModel& m, const char* name) {
  if (m.components.empty()) {
    throw Error(std::string(name) + ": score model has no components");
  }
  for (const auto& c : m.components) {
    if (!(c.weight > 0.0)) {
      throw Error(std::string(name) + ": mixture weights must be > 0");
    }
    require_shape(c.shape);
  }
}

// X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
class BetaDraw {
 public:
  explicit BetaDraw(BetaShape s) : x_(s.alpha, 1.0), y_(s.beta, 1.0) {}

  double operator()(std::mt19937_64& rng) {
    const double x = x_(rng);
    const double y = y_(rng);
    return x / (x + y);
  }

 private:
  std::gamma_distribution<double> x_;
  std::gamma_distribution<double> y_;
};

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kFair:
      return "FAIR";
    case Scenario::kBiasedGenuine:
      return "BG";
    case Scenario::kBiasedImpostor:
      return "BI";
    case Scenario::kBiasedCenter:
      return "BC";
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::kFair, Scenario::kBiasedGenuine,
                     Scenario::kBiasedImpostor, Scenario::kBiasedCenter}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

double ScoreModel::mean() const {
  double w = 0.0, m = 0.0;
  for (const auto& c : components) {
    w += c.weight;
    m += c.weight * c.shape.alpha / (c.shape.alpha + c.shape.beta);
  }
  return m / w;
}

ScenarioSpec ScenarioSpec::Defaults(Scenario scenario, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.scenario = scenario;
  spec.seed = seed;
  spec.baseline_genuine = ScoreModel::Single({60.0, 6.0});
  spec.baseline_impostor = ScoreModel::Single({6.0, 60.0});
  spec.biased_genuine = spec.baseline_genuine;
  spec.biased_impostor = spec.baseline_impostor;
  switch (scenario) {
    case Scenario::kFair:
      break;
    case Scenario::kBiasedGenuine:
      // A small far-reaching component stretches the lower tail.
      spec.biased_genuine = {{{0.92, {60.0, 6.0}}, {0.08, {4.0, 3.0}}}};
      break;
    case Scenario::kBiasedImpostor:
      spec.biased_impostor = {{{0.92, {6.0, 60.0}}, {0.08, {3.0, 4.0}}}};
      break;
    case Scenario::kBiasedCenter:
      // Impostor center moves up and narrows so the mass above the usual
      // operating thresholds stays close to the baseline.
      spec.biased_genuine = ScoreModel::Single({55.0, 10.0});
      spec.biased_impostor = ScoreModel::Single({27.0, 179.0});
      break;
  }
  return spec;
}

void ScenarioSpec::validate() const {
  if (n_groups < 2) throw Error("K must be \xE2\x89\xA5 2");
  if (biased_group_index >= n_groups) {
    throw Error("biased group index must be < number of groups");
  }
  if (samples_per_cell == 0) throw Error("samples per cell must be >= 1");
  validate_model(baseline_genuine, "baseline genuine");
  validate_model(baseline_impostor, "baseline impostor");
  validate_model(biased_genuine, "biased genuine");
  validate_model(biased_impostor, "biased impostor");
}

std::vector<double> beta_sample(double alpha, double beta, std::size_t n,
                                std::uint64_t seed) {
  return sample_model(ScoreModel::Single({alpha, beta}), n, seed);
}

std::vector<double> sample_model(const ScoreModel& model, std::size_t n,
                                 std::uint64_t seed) {
  validate_model(model, "sample_model");
  if (n == 0) throw Error("sample size must be >= 1");

  std::mt19937_64 rng(seed);
  std::vector<BetaDraw> draws;
  std::vector<double> weights;
  for (const auto& c : model.components) {
    draws.emplace_back(c.shape);
    weights.push_back(c.weight);
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<double> out(n);
  for (auto& v : out) {
    const std::size_t k = draws.size() == 1 ? 0 : pick(rng);
    v = draws[k](rng);
  }
  return out;
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t group_index,
                        ScoreKind kind) {
  const std::uint64_t cell =
      2 * static_cast<std::uint64_t>(group_index) +
      (kind == ScoreKind::kImpostor ? 1 : 0);
  return splitmix64(splitmix64(seed) ^ splitmix64(cell + 1));
}

ScoreDataset generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const bool bias_genuine = spec.scenario == Scenario::kBiasedGenuine ||
                            spec.scenario == Scenario::kBiasedCenter;
  const bool bias_impostor = spec.scenario == Scenario::kBiasedImpostor ||
                             spec.scenario == Scenario::kBiasedCenter;

  std::vector<GroupScores> groups;
  for (std::size_t i = 0; i < spec.n_groups; ++i) {
    const bool biased = i == spec.biased_group_index;
    const auto& gen_model = biased && bias_genuine ? spec.biased_genuine
                                                   : spec.baseline_genuine;
    const auto& imp_model = biased && bias_impostor ? spec.biased_impostor
                                                    : spec.baseline_impostor;
    GroupScores g;
    g.group = "G" + std::to_string(i);
    g.genuine = sample_model(gen_model, spec.samples_per_cell,
                             cell_seed(spec.seed, i, ScoreKind::kGenuine));
    g.impostor = sample_model(imp_model, spec.samples_per_cell,
                              cell_seed(spec.seed, i, ScoreKind::kImpostor));
    groups.push_back(std::move(g));
  }
  return ScoreDataset(std::move(groups));
}

}  // namespace equity
