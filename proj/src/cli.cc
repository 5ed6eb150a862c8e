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

#include "equity/cli.h"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "equity/error.h"
#include "equity/ingest.h"
#include "equity/report.h"
#include "equity/synthetic.h"

namespace equity {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string input;
  std::string out;
  std::string format = "json";
  std::size_t bins = kDefaultBins;
  double epsilon = kDefaultEpsilon;
  double target_fmr = kDefaultTargetFmr;
  double floor = kDefaultRateFloor;
  double n_sigma = kDefaultSigmas;
  double percentile = kDefaultSplitPercentile;
  double tail_weight = kDefaultTailWeight;
  std::string metrics = "all";
  std::string scenario;
  std::size_t samples = 100000;
  std::size_t groups = 4;
  std::optional<std::uint64_t> seed;
  std::size_t min_per_cell = kDefaultMinPerCell;
  bool allow_small_cells = false;
  bool report = false;
};

void add_metric_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--bins", o.bins, "Histogram bins on [0,1]")
      ->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Per-bin KL smoothing")
      ->capture_default_str();
  cmd->add_option("--target-fmr", o.target_fmr,
                  "Pooled FMR defining the operating threshold")
      ->capture_default_str();
  cmd->add_option("--floor", o.floor, "Rate floor for Inequity")
      ->capture_default_str();
  cmd->add_option("--n-sigma", o.n_sigma, "Sigmas for the automated split")
      ->capture_default_str();
  cmd->add_option("--percentile", o.percentile, "Manual CEI split percentile")
      ->capture_default_str();
  cmd->add_option("--tail-weight", o.tail_weight, "Manual CEI tail weight")
      ->capture_default_str();
  cmd->add_option("--metrics", o.metrics,
                  "Comma list of inequity,garbe,dfi,cei,cei_auto or all")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  cmd->add_option("--min-per-cell", o.min_per_cell,
                  "Minimum scores per group and kind")
      ->capture_default_str();
  cmd->add_flag("--allow-small-cells", o.allow_small_cells,
                "Warn instead of failing on small cells");
}

EvaluationConfig make_config(const Options& o) {
  EvaluationConfig c;
  c.bins = o.bins;
  c.epsilon = o.epsilon;
  c.target_fmr = o.target_fmr;
  c.floor = o.floor;
  c.n_sigma = o.n_sigma;
  c.split_percentile = o.percentile;
  c.tail_weight = o.tail_weight;
  c.min_per_cell = o.min_per_cell;
  c.allow_small_cells = o.allow_small_cells;
  try {
    c.metrics = parse_metrics(o.metrics);
    c.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" +
                     env + "'");
  }
  return v;
}

void write_text(const std::string& path, const std::string& text,
                std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::string render(const MetricReport& rep, const std::string& format) {
  return format == "table" ? to_table(rep) : to_json(rep);
}

int run_evaluate(const Options& o, std::ostream& out) {
  const auto config = make_config(o);
  const auto ds = read_score_csv(o.input);
  write_text(o.out, render(evaluate(ds, config), o.format), out);
  return kExitOk;
}

int run_synthetic(const Options& o, std::ostream& out) {
  const auto scenario = parse_scenario(o.scenario);
  if (!scenario) {
    throw UsageError("unknown scenario '" + o.scenario +
                     "' (expected FAIR, BG, BI or BC)");
  }
  auto config = make_config(o);
  auto spec = ScenarioSpec::Defaults(*scenario, resolve_seed(o));
  spec.n_groups = o.groups;
  spec.samples_per_cell = o.samples;
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto ds = generate_scenario(spec);

  if (!o.out.empty() || !o.report) {
    std::ostringstream csv;
    write_score_csv(ds, csv);
    write_text(o.out, csv.str(), out);
  }
  if (o.report) {
    config.synthetic = SyntheticEcho{std::string(to_string(spec.scenario)),
                                     spec.seed, spec.n_groups,
                                     spec.samples_per_cell};
    out << render(evaluate(ds, config), o.format);
  }
  return kExitOk;
}

int run_export(const Options& o, std::optional<double> percentile,
               std::optional<double> n_sigma, std::ostream& out) {
  if (o.bins < 1) throw UsageError("bins must be >= 1");
  const auto ds = read_score_csv(o.input);
  write_text(o.out, export_distributions_json(ds, o.bins, percentile, n_sigma),
             out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Demographic fairness metrics for verification scores",
               "equity-metrics"};
  app.require_subcommand(1);
  Options o;

  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Compute the metric report for a CSV");
  evaluate_cmd->add_option("--input", o.input, "Score CSV (score,label,group)")
      ->required();
  evaluate_cmd->add_option("--out", o.out, "Report path (default stdout)");
  add_metric_options(evaluate_cmd, o);

  auto* synthetic_cmd =
      app.add_subcommand("synthetic", "Generate a Beta-score scenario");
  synthetic_cmd
      ->add_option("--scenario", o.scenario, "FAIR, BG, BI or BC")
      ->required();
  synthetic_cmd->add_option("--samples", o.samples, "Scores per group and kind")
      ->capture_default_str();
  synthetic_cmd->add_option("--groups", o.groups, "Number of groups")
      ->capture_default_str();
  synthetic_cmd->add_option(
      "--seed", o.seed,
      std::string("Seed (falls back to ") + kSeedEnvVar + ", then 42)");
  synthetic_cmd->add_option("--out", o.out, "CSV path (default stdout)");
  synthetic_cmd->add_flag("--report", o.report,
                          "Evaluate the generated data and print the report");
  add_metric_options(synthetic_cmd, o);

  std::optional<double> export_percentile;
  std::optional<double> export_sigma;
  auto* export_cmd = app.add_subcommand(
      "export", "Write per-group histograms and mean distributions as JSON");
  export_cmd->add_option("--input", o.input, "Score CSV (score,label,group)")
      ->required();
  export_cmd->add_option("--out", o.out, "JSON path (default stdout)");
  export_cmd->add_option("--bins", o.bins, "Histogram bins on [0,1]")
      ->capture_default_str();
  export_cmd->add_option("--percentile", export_percentile,
                         "Include manual split scores at this percentile");
  export_cmd->add_option("--n-sigma", export_sigma,
                         "Include automated split scores for N sigmas");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty()
                          ? &app
                          : app.get_subcommands().front();
    err << "error: " << e.what() << "\n" << sub->help();
    return kExitUsage;
  }

  try {
    if (evaluate_cmd->parsed()) return run_evaluate(o, out);
    if (synthetic_cmd->parsed()) return run_synthetic(o, out);
    return run_export(o, export_percentile, export_sigma, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace equity
