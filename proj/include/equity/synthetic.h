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

// Beta-distributed genuine/impostor scores for controlled bias scenarios.
//
//   FAIR  every group drawn from the baseline
//   BG    one group's genuine scores get a heavier lower tail
//   BI    one group's impostor scores get a heavier upper tail
//   BC    one group's genuine and impostor centers shift toward each other

#ifndef EQUITY_SYNTHETIC_H_
#define EQUITY_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "equity/ingest.h"

namespace equity {

enum class Scenario { kFair, kBiasedGenuine, kBiasedImpostor, kBiasedCenter };

std::string_view to_string(Scenario s);  // "FAIR", "BG", "BI", "BC"
std::optional<Scenario> parse_scenario(std::string_view name);

struct BetaShape {
  double alpha = 1.0;
  double beta = 1.0;
};

// A finite mixture of Beta components. Weights need not be normalized.
struct ScoreModel {
  struct Component {
    double weight;
    BetaShape shape;
  };
  std::vector<Component> components;

  static ScoreModel Single(BetaShape shape) { return {{{1.0, shape}}}; }
  double mean() const;
};

struct ScenarioSpec {
  Scenario scenario = Scenario::kFair;
  std::size_t n_groups = 4;
  std::size_t biased_group_index = 0;
  std::size_t samples_per_cell = 100000;
  std::uint64_t seed = 42;
  ScoreModel baseline_genuine;
  ScoreModel baseline_impostor;
  ScoreModel biased_genuine;
  ScoreModel biased_impostor;

  // The library's default parameters for a scenario.
  static ScenarioSpec Defaults(Scenario scenario, std::uint64_t seed = 42);

  // Throws equity::Error on non-positive shapes, K < 2, an out-of-range
  // biased group or zero samples.
  void validate() const;
};

// n independent Beta(alpha, beta) draws; deterministic for a fixed seed.
std::vector<double> beta_sample(double alpha, double beta, std::size_t n,
                                std::uint64_t seed);

std::vector<double> sample_model(const ScoreModel& model, std::size_t n,
                                 std::uint64_t seed);

// Seed for one (group, kind) cell, independent of generation order.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t group_index,
                        ScoreKind kind);

// Groups are named G0..G{K-1}.
ScoreDataset generate_scenario(const ScenarioSpec& spec);

}  // namespace equity

#endif  // EQUITY_SYNTHETIC_H_
