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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "equity/cei.h"
#include "equity/distributions.h"
#include "equity/error.h"
#include "equity/ingest.h"
#include "equity/outcome.h"
#include "equity/report.h"
#include "equity/synthetic.h"

namespace py = pybind11;
using namespace equity;

namespace {

ScoreDataset dataset_from_dict(
    const std::vector<std::tuple<std::string, std::vector<double>,
                                 std::vector<double>>>& groups) {
  std::vector<GroupScores> gs;
  for (const auto& [name, genuine, impostor] : groups) {
    gs.push_back({name, genuine, impostor});
  }
  return ScoreDataset(std::move(gs));
}

std::vector<double> masses(const EmpiricalDistribution& d) {
  return {d.masses().begin(), d.masses().end()};
}

py::dict cei_dict(const CeiResult& r) {
  py::dict d;
  d["mode"] = std::string(to_string(r.mode));
  d["kind"] = std::string(to_string(r.kind));
  d["variant"] = std::string(to_string(r.variant));
  d["value"] = r.value;
  d["split_percentile"] = r.split_percentile_used;
  d["split_score"] = r.split_score_used;
  d["w_tail"] = r.weighting_used.tail();
  py::dict divs;
  for (const auto& g : r.per_group) divs[py::str(g.group)] = g.divergence;
  d["divergences"] = divs;
  py::dict deltas;
  for (const auto& t : r.deviations) deltas[py::str(t.group)] = t.delta;
  d["tail_deltas"] = deltas;
  d["flags"] = r.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Demographic fairness metrics for verification scores";

  py::register_exception<Error>(m, "EquityError", PyExc_ValueError);

  py::enum_<ScoreKind>(m, "ScoreKind")
      .value("GENUINE", ScoreKind::kGenuine)
      .value("IMPOSTOR", ScoreKind::kImpostor);
  py::enum_<Variant>(m, "Variant")
      .value("NORMAL", Variant::kNormal)
      .value("EXTREME", Variant::kExtreme);
  py::enum_<Scenario>(m, "Scenario")
      .value("FAIR", Scenario::kFair)
      .value("BG", Scenario::kBiasedGenuine)
      .value("BI", Scenario::kBiasedImpostor)
      .value("BC", Scenario::kBiasedCenter);

  py::class_<ScoreDataset>(m, "ScoreDataset")
      .def(py::init(&dataset_from_dict), py::arg("groups"),
           "From a list of (group, genuine_scores, impostor_scores).")
      .def_static("from_csv", &parse_score_csv_string, py::arg("text"))
      .def_static("read_csv", &read_score_csv, py::arg("path"))
      .def("to_csv",
           [](const ScoreDataset& ds) {
             std::ostringstream out;
             write_score_csv(ds, out);
             return out.str();
           })
      .def("group_names",
           [](const ScoreDataset& ds) {
             std::vector<std::string> names;
             for (const auto& g : ds.groups()) names.push_back(g.group);
             return names;
           })
      .def("scores",
           [](const ScoreDataset& ds, std::size_t i, ScoreKind kind) {
             if (i >= ds.size()) throw py::index_error("group index");
             return ds[i].scores(kind);
           },
           py::arg("group_index"), py::arg("kind"))
      .def("pooled", &ScoreDataset::pooled, py::arg("kind"))
      .def("record_count", &ScoreDataset::record_count)
      .def("__len__", &ScoreDataset::size);

  m.def(
      "fmr",
      [](const std::vector<double>& scores, double tau) {
        return fmr(scores, tau);
      },
      py::arg("impostor_scores"), py::arg("tau"));
  m.def(
      "fnmr",
      [](const std::vector<double>& scores, double tau) {
        return fnmr(scores, tau);
      },
      py::arg("genuine_scores"), py::arg("tau"));
  m.def(
      "threshold_at_fmr",
      [](const std::vector<double>& scores, double target) {
        const auto op = threshold_at_fmr(scores, target);
        return py::make_tuple(op.threshold, op.achieved_fmr,
                              op.under_resolved);
      },
      py::arg("impostor_scores"), py::arg("target_fmr"),
      "Returns (threshold, achieved_fmr, under_resolved).");
  m.def(
      "inequity",
      [](const std::vector<double>& rates, double floor) {
        return inequity(rates, floor).value;
      },
      py::arg("rates"), py::arg("floor") = kDefaultRateFloor);
  m.def(
      "garbe", [](const std::vector<double>& rates) { return garbe(rates); },
      py::arg("rates"));

  m.def(
      "histogram",
      [](const std::vector<double>& scores, std::size_t bins) {
        return masses(build_histogram(scores, bins));
      },
      py::arg("scores"), py::arg("bins") = kDefaultBins);
  m.def(
      "kl_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q,
         double eps) {
        return kl_divergence(EmpiricalDistribution::OnUniformGrid(p),
                             EmpiricalDistribution::OnUniformGrid(q), eps);
      },
      py::arg("p"), py::arg("q"), py::arg("epsilon") = kDefaultEpsilon,
      "KL(p || q) in bits for masses on a uniform grid.");
  m.def(
      "percentile_score",
      [](const std::vector<double>& scores, double p, ScoreKind kind) {
        return percentile_score(scores, p, tail_direction_for(kind));
      },
      py::arg("scores"), py::arg("percentile"), py::arg("kind"));
  m.def(
      "empirical_percentile",
      [](const std::vector<double>& scores, double t, ScoreKind kind) {
        return empirical_percentile(scores, t, tail_direction_for(kind));
      },
      py::arg("scores"), py::arg("t"), py::arg("kind"));

  m.def(
      "dfi",
      [](const ScoreDataset& ds, Variant variant, std::size_t bins,
         double eps) { return dfi(ds, variant, bins, eps).value; },
      py::arg("dataset"), py::arg("variant") = Variant::kNormal,
      py::arg("bins") = kDefaultBins, py::arg("epsilon") = kDefaultEpsilon);
  m.def(
      "cei",
      [](const ScoreDataset& ds, ScoreKind kind, Variant variant,
         double percentile, double tail_weight, std::size_t bins,
         double eps) {
        CeiConfig c;
        c.kind = kind;
        c.variant = variant;
        c.split_percentile = percentile;
        c.tail_weight = tail_weight;
        c.bins = bins;
        c.epsilon = eps;
        return cei_dict(cei(ds, c));
      },
      py::arg("dataset"), py::arg("kind"),
      py::arg("variant") = Variant::kExtreme,
      py::arg("percentile") = kDefaultSplitPercentile,
      py::arg("tail_weight") = kDefaultTailWeight,
      py::arg("bins") = kDefaultBins, py::arg("epsilon") = kDefaultEpsilon);
  m.def(
      "cei_auto",
      [](const ScoreDataset& ds, ScoreKind kind, Variant variant,
         double n_sigma, std::size_t bins, double eps) {
        return cei_dict(cei_auto(ds, kind, variant, n_sigma, bins, eps));
      },
      py::arg("dataset"), py::arg("kind"),
      py::arg("variant") = Variant::kExtreme,
      py::arg("n_sigma") = kDefaultSigmas, py::arg("bins") = kDefaultBins,
      py::arg("epsilon") = kDefaultEpsilon);

  m.def(
      "generate_scenario",
      [](Scenario scenario, std::uint64_t seed, std::size_t groups,
         std::size_t samples) {
        auto spec = ScenarioSpec::Defaults(scenario, seed);
        spec.n_groups = groups;
        spec.samples_per_cell = samples;
        return generate_scenario(spec);
      },
      py::arg("scenario"), py::arg("seed") = 42, py::arg("groups") = 4,
      py::arg("samples") = 100000);
  m.def("beta_sample", &beta_sample, py::arg("alpha"), py::arg("beta"),
        py::arg("n"), py::arg("seed"));

  m.def(
      "evaluate_json",
      [](const ScoreDataset& ds, std::size_t bins, double eps,
         double target_fmr, double floor, double n_sigma, double percentile,
         double tail_weight, const std::string& metrics,
         std::size_t min_per_cell, bool allow_small_cells) {
        EvaluationConfig c;
        c.bins = bins;
        c.epsilon = eps;
        c.target_fmr = target_fmr;
        c.floor = floor;
        c.n_sigma = n_sigma;
        c.split_percentile = percentile;
        c.tail_weight = tail_weight;
        c.metrics = parse_metrics(metrics);
        c.min_per_cell = min_per_cell;
        c.allow_small_cells = allow_small_cells;
        return to_json(evaluate(ds, c));
      },
      py::arg("dataset"), py::arg("bins") = kDefaultBins,
      py::arg("epsilon") = kDefaultEpsilon,
      py::arg("target_fmr") = kDefaultTargetFmr,
      py::arg("floor") = kDefaultRateFloor,
      py::arg("n_sigma") = kDefaultSigmas,
      py::arg("percentile") = kDefaultSplitPercentile,
      py::arg("tail_weight") = kDefaultTailWeight,
      py::arg("metrics") = "all",
      py::arg("min_per_cell") = kDefaultMinPerCell,
      py::arg("allow_small_cells") = false);
  m.def(
      "export_json",
      [](const ScoreDataset& ds, std::size_t bins) {
        return export_distributions_json(ds, bins);
      },
      py::arg("dataset"), py::arg("bins") = kDefaultBins);
}
