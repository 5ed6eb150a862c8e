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

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "equity/error.h"

namespace equity {
namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

// Beta(a, b) standard deviation.
double beta_sd(double a, double b) {
  return std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1)));
}

TEST(BetaSample, MeansWithinSamplingTolerance) {
  const std::size_t n = 100000;
  const auto u = beta_sample(1, 1, n, 11);
  EXPECT_NEAR(mean_of(u), 0.5, 4 * beta_sd(1, 1) / std::sqrt(n));
  const auto b = beta_sample(8, 2, n, 12);
  EXPECT_NEAR(mean_of(b), 0.8, 4 * beta_sd(8, 2) / std::sqrt(n));
  for (double x : b) {
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
  }
}

TEST(BetaSample, DeterministicPerSeed) {
  EXPECT_EQ(beta_sample(2, 5, 1000, 99), beta_sample(2, 5, 1000, 99));
  EXPECT_NE(beta_sample(2, 5, 1000, 99), beta_sample(2, 5, 1000, 100));
}

TEST(BetaSample, Errors) {
  EXPECT_THROW(beta_sample(0, 1, 10, 1), Error);
  EXPECT_THROW(beta_sample(1, -2, 10, 1), Error);
  EXPECT_THROW(beta_sample(1, 1, 0, 1), Error);
}

TEST(ScoreModel, MixtureMean) {
  ScoreModel m{{{0.92, {60, 6}}, {0.08, {4, 3}}}};
  EXPECT_NEAR(m.mean(), 0.92 * 60.0 / 66 + 0.08 * 4.0 / 7, 1e-15);
  const auto s = sample_model(m, 200000, 5);
  const double sd = 0.2;  // generous bound on the mixture sd
  EXPECT_NEAR(mean_of(s), m.mean(), 4 * sd / std::sqrt(200000.0));
}

TEST(Scenario, NamesRoundTrip) {
  for (auto s : {Scenario::kFair, Scenario::kBiasedGenuine,
                 Scenario::kBiasedImpostor, Scenario::kBiasedCenter}) {
    EXPECT_EQ(parse_scenario(to_string(s)), s);
  }
  EXPECT_FALSE(parse_scenario("bg").has_value());
  EXPECT_FALSE(parse_scenario("XX").has_value());
}

TEST(CellSeed, DistinctAcrossCells) {
  std::set<std::uint64_t> seeds;
  for (std::size_t g = 0; g < 64; ++g) {
    seeds.insert(cell_seed(42, g, ScoreKind::kGenuine));
    seeds.insert(cell_seed(42, g, ScoreKind::kImpostor));
  }
  EXPECT_EQ(seeds.size(), 128u);
  EXPECT_NE(cell_seed(42, 0, ScoreKind::kGenuine),
            cell_seed(43, 0, ScoreKind::kGenuine));
}

TEST(GenerateScenario, OnlyTheBiasedCellsDeviate) {
  for (auto sc : {Scenario::kFair, Scenario::kBiasedGenuine,
                  Scenario::kBiasedImpostor, Scenario::kBiasedCenter}) {
    auto spec = ScenarioSpec::Defaults(sc, 7);
    spec.samples_per_cell = 500;
    spec.biased_group_index = 2;
    const auto ds = generate_scenario(spec);
    ASSERT_EQ(ds.size(), 4u);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      EXPECT_EQ(ds[i].group, "G" + std::to_string(i));
      const bool biased = i == 2;
      const bool gen_biased = biased && (sc == Scenario::kBiasedGenuine ||
                                         sc == Scenario::kBiasedCenter);
      const bool imp_biased = biased && (sc == Scenario::kBiasedImpostor ||
                                         sc == Scenario::kBiasedCenter);
      const auto& gm = gen_biased ? spec.biased_genuine : spec.baseline_genuine;
      const auto& im = imp_biased ? spec.biased_impostor : spec.baseline_impostor;
      EXPECT_EQ(ds[i].genuine,
                sample_model(gm, 500, cell_seed(7, i, ScoreKind::kGenuine)));
      EXPECT_EQ(ds[i].impostor,
                sample_model(im, 500, cell_seed(7, i, ScoreKind::kImpostor)));
    }
  }
}

TEST(GenerateScenario, DefaultsShapeTheBias) {
  const auto fair = ScenarioSpec::Defaults(Scenario::kFair);
  const auto bg = ScenarioSpec::Defaults(Scenario::kBiasedGenuine);
  const auto bi = ScenarioSpec::Defaults(Scenario::kBiasedImpostor);
  const auto bc = ScenarioSpec::Defaults(Scenario::kBiasedCenter);
  EXPECT_EQ(fair.n_groups, 4u);
  EXPECT_EQ(fair.samples_per_cell, 100000u);
  EXPECT_EQ(fair.biased_group_index, 0u);
  // Tail scenarios keep the center: mean shift below 0.06.
  EXPECT_LT(std::abs(bg.biased_genuine.mean() - bg.baseline_genuine.mean()), 0.06);
  EXPECT_LT(std::abs(bi.biased_impostor.mean() - bi.baseline_impostor.mean()), 0.06);
  // Center scenario moves both means toward each other.
  EXPECT_LT(bc.biased_genuine.mean(), bc.baseline_genuine.mean());
  EXPECT_GT(bc.biased_impostor.mean(), bc.baseline_impostor.mean());
}

TEST(GenerateScenario, ValidationErrors) {
  auto spec = ScenarioSpec::Defaults(Scenario::kFair);
  spec.n_groups = 1;
  EXPECT_THROW(generate_scenario(spec), Error);
  spec = ScenarioSpec::Defaults(Scenario::kFair);
  spec.biased_group_index = 4;
  EXPECT_THROW(generate_scenario(spec), Error);
  spec = ScenarioSpec::Defaults(Scenario::kFair);
  spec.samples_per_cell = 0;
  EXPECT_THROW(generate_scenario(spec), Error);
  spec = ScenarioSpec::Defaults(Scenario::kFair);
  spec.biased_genuine = ScoreModel::Single({0, 1});
  EXPECT_THROW(generate_scenario(spec), Error);
}

}  // namespace
}  // namespace equity
