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

#include "equity/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "equity/error.h"

namespace equity {

namespace {

using Json = nlohmann::ordered_json;

constexpr ScoreKind kKinds[] = {ScoreKind::kGenuine, ScoreKind::kImpostor};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Json num(double x) { return round_significant(x); }

Json num_array(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

Json stats_json(const SummaryStats& s) {
  Json j;
  j["count"] = s.count;
  j["mean"] = num(s.mean);
  j["std_dev"] = num(s.std_dev);
  j["min"] = num(s.min);
  j["max"] = num(s.max);
  return j;
}

SummaryStats stats_or_empty(const std::vector<double>& scores) {
  return scores.empty() ? SummaryStats{} : summary_stats(scores);
}

// The per-group divergences do not depend on the variant, so each split is
// computed once and aggregated both ways.
CeiResult reaggregate(CeiResult res, Variant variant) {
  std::vector<double> divs;
  for (const auto& g : res.per_group) divs.push_back(g.divergence);
  const auto idx = aggregate_index(divs, variant);
  res.variant = variant;
  res.value = idx.value;
  std::erase(res.flags, std::string("value_clamped_to_zero"));
  if (idx.clamped) res.flags.push_back("value_clamped_to_zero");
  return res;
}

std::string cei_tag(const CeiResult& r) {
  return "cei_" + std::string(to_string(r.mode)) + "_" +
         std::string(to_string(r.kind)) + "_" +
         std::string(to_string(r.variant));
}

Json divergences_json(const std::vector<GroupDivergence>& per_group) {
  Json j = Json::object();
  for (const auto& g : per_group) j[g.group] = num(g.divergence);
  return j;
}

Json rates_json(const ErrorRates& rates) {
  Json j = Json::object();
  for (const auto& g : rates.per_group) j[g.group] = num(g.rate);
  return j;
}

Json dfi_json(const DfiResult& d) {
  Json j;
  j["value"] = num(d.value);
  j["clamped"] = d.clamped;
  j["divergences"] = divergences_json(d.per_group);
  return j;
}

Json cei_json(const CeiResult& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["kind"] = to_string(r.kind);
  j["variant"] = to_string(r.variant);
  j["value"] = num(r.value);
  j["split_percentile"] = num(r.split_percentile_used);
  j["split_score"] = num(r.split_score_used);
  j["w_tail"] = num(r.weighting_used.tail());
  j["w_center"] = num(r.weighting_used.center());
  j["divergences"] = divergences_json(r.per_group);
  if (r.mode == CeiMode::kAutomated) {
    Json devs = Json::array();
    for (const auto& d : r.deviations) {
      Json dj;
      dj["group"] = d.group;
      dj["delta"] = num(d.delta);
      dj["empirical_tail_mass"] = num(d.empirical_tail_mass);
      dj["gaussian_tail_mass"] = num(d.gaussian_tail_mass);
      devs.push_back(std::move(dj));
    }
    j["tail_deviations"] = std::move(devs);
  }
  j["flags"] = r.flags;
  return j;
}

Json config_json(const EvaluationConfig& c) {
  Json j;
  j["bins"] = c.bins;
  j["epsilon"] = num(c.epsilon);
  j["target_fmr"] = num(c.target_fmr);
  j["floor"] = num(c.floor);
  j["n_sigma"] = num(c.n_sigma);
  j["split_percentile"] = num(c.split_percentile);
  j["tail_weight"] = num(c.tail_weight);
  j["center_weight"] = num(1.0 - c.tail_weight);
  j["min_per_cell"] = c.min_per_cell;
  j["allow_small_cells"] = c.allow_small_cells;
  j["metrics"] = c.metrics.names();
  if (c.synthetic) {
    Json s;
    s["scenario"] = c.synthetic->scenario;
    s["seed"] = c.synthetic->seed;
    s["groups"] = c.synthetic->groups;
    s["samples_per_cell"] = c.synthetic->samples_per_cell;
    j["synthetic"] = std::move(s);
  }
  return j;
}

// Left-aligned first column, right-aligned others.
std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line = "  ";
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string pad(width[i] - row[i].size(), ' ');
      line += i == 0 ? row[i] + pad : "  " + pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

double round_significant(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

std::vector<std::string> MetricSet::names() const {
  std::vector<std::string> out;
  if (inequity) out.push_back("inequity");
  if (garbe) out.push_back("garbe");
  if (dfi) out.push_back("dfi");
  if (cei) out.push_back("cei");
  if (cei_auto) out.push_back("cei_auto");
  return out;
}

MetricSet parse_metrics(std::string_view list) {
  MetricSet m{false, false, false, false, false};
  bool any = false;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view name = list.substr(start, end - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name == "all") {
      m = MetricSet{};
    } else if (name == "inequity") {
      m.inequity = true;
    } else if (name == "garbe") {
      m.garbe = true;
    } else if (name == "dfi") {
      m.dfi = true;
    } else if (name == "cei") {
      m.cei = true;
    } else if (name == "cei_auto") {
      m.cei_auto = true;
    } else {
      throw Error("unknown metric '" + std::string(name) +
                  "' (expected inequity, garbe, dfi, cei, cei_auto or all)");
    }
    any = true;
    start = end + 1;
  }
  if (!any) throw Error("empty metric list");
  return m;
}

void EvaluationConfig::validate() const {
  if (bins < 1) throw Error("bins must be >= 1");
  if (!(epsilon > 0.0)) throw Error("epsilon must be > 0");
  if (!(target_fmr > 0.0 && target_fmr < 1.0)) {
    throw Error("target FMR must lie in (0, 1)");
  }
  if (!(floor > 0.0)) throw Error("rate floor must be > 0");
  if (!(n_sigma > 0.0 && std::isfinite(n_sigma))) {
    throw Error("n_sigma must be > 0");
  }
  if (!(split_percentile > 0.0 && split_percentile < 100.0)) {
    throw Error("split percentile must lie in (0, 100)");
  }
  if (!(tail_weight >= 0.0 && tail_weight <= 1.0)) {
    throw Error("tail weight must lie in [0,1]");
  }
}

MetricReport evaluate(const ScoreDataset& ds, const EvaluationConfig& config) {
  config.validate();
  MetricReport rep;
  rep.config = config;
  rep.record_count = ds.record_count();
  for (const auto& g : ds.groups()) {
    rep.groups.push_back(
        {g.group, stats_or_empty(g.genuine), stats_or_empty(g.impostor)});
  }

  const auto validation = validate_dataset(ds, config.min_per_cell);
  if (!validation.ok()) {
    std::string cells;
    for (const auto& c : validation.flagged) {
      if (!cells.empty()) cells += ", ";
      cells += "'" + c.group + "' " + std::string(to_string(c.kind)) + " (" +
               std::to_string(c.count) + ")";
    }
    if (!config.allow_small_cells) {
      throw Error("cells below the minimum of " +
                  std::to_string(config.min_per_cell) + " scores: " + cells);
    }
    rep.warnings.push_back("small_cells: " + cells);
  }

  if (config.metrics.outcome()) {
    rep.outcome = outcome_suite(ds, config.target_fmr, config.floor);
    if (rep.outcome->operating_point.under_resolved) {
      rep.warnings.push_back("operating_point_under_resolved");
    }
    if (config.metrics.inequity) {
      if (rep.outcome->inequity_fmr.floor_applied) {
        rep.warnings.push_back("inequity_fmr_floor_applied");
      }
      if (rep.outcome->inequity_fnmr.floor_applied) {
        rep.warnings.push_back("inequity_fnmr_floor_applied");
      }
    }
  }

  if (config.metrics.dfi) {
    rep.dfi_normal = dfi(ds, Variant::kNormal, config.bins, config.epsilon);
    rep.dfi_extreme = dfi(ds, Variant::kExtreme, config.bins, config.epsilon);
    if (rep.dfi_normal->clamped) rep.warnings.push_back("dfi_normal_clamped");
    if (rep.dfi_extreme->clamped) rep.warnings.push_back("dfi_extreme_clamped");
  }

  auto add_both_variants = [&rep](const CeiResult& extreme) {
    for (Variant v : {Variant::kNormal, Variant::kExtreme}) {
      rep.cei.push_back(reaggregate(extreme, v));
      const auto& r = rep.cei.back();
      for (const auto& flag : r.flags) {
        rep.warnings.push_back(cei_tag(r) + ": " + flag);
      }
    }
  };

  if (config.metrics.cei) {
    for (ScoreKind kind : kKinds) {
      CeiConfig cc;
      cc.mode = CeiMode::kManual;
      cc.split_percentile = config.split_percentile;
      cc.tail_weight = config.tail_weight;
      cc.kind = kind;
      cc.variant = Variant::kExtreme;
      cc.bins = config.bins;
      cc.epsilon = config.epsilon;
      add_both_variants(cei(ds, cc));
    }
  }
  if (config.metrics.cei_auto) {
    for (ScoreKind kind : kKinds) {
      add_both_variants(cei_auto(ds, kind, Variant::kExtreme, config.n_sigma,
                                 config.bins, config.epsilon));
    }
  }
  return rep;
}

std::string to_json(const MetricReport& report) {
  Json j;
  j["config"] = config_json(report.config);

  Json dataset;
  dataset["records"] = report.record_count;
  Json groups = Json::array();
  for (const auto& g : report.groups) {
    Json gj;
    gj["group"] = g.group;
    gj["genuine"] = stats_json(g.genuine);
    gj["impostor"] = stats_json(g.impostor);
    groups.push_back(std::move(gj));
  }
  dataset["groups"] = std::move(groups);
  j["dataset"] = std::move(dataset);

  if (report.outcome) {
    const auto& o = *report.outcome;
    const auto& metrics = report.config.metrics;
    Json oj;
    oj["threshold"] = num(o.threshold());
    oj["target_fmr"] = num(o.target_fmr);
    oj["achieved_fmr"] = num(o.operating_point.achieved_fmr);
    oj["under_resolved"] = o.operating_point.under_resolved;
    oj["fmr"] = rates_json(o.fmr_rates);
    oj["fnmr"] = rates_json(o.fnmr_rates);
    if (metrics.inequity) {
      oj["inequity_fmr"] = num(o.inequity_fmr.value);
      oj["inequity_fnmr"] = num(o.inequity_fnmr.value);
    }
    if (metrics.garbe) {
      oj["garbe_fmr"] = num(o.garbe_fmr);
      oj["garbe_fnmr"] = num(o.garbe_fnmr);
    }
    j["outcome"] = std::move(oj);
  }

  if (report.dfi_normal && report.dfi_extreme) {
    Json dj;
    dj["normal"] = dfi_json(*report.dfi_normal);
    dj["extreme"] = dfi_json(*report.dfi_extreme);
    j["dfi"] = std::move(dj);
  }

  if (!report.cei.empty()) {
    Json cj = Json::array();
    for (const auto& r : report.cei) cj.push_back(cei_json(r));
    j["cei"] = std::move(cj);
  }

  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string to_table(const MetricReport& report) {
  std::ostringstream out;
  out << "Dataset: " << report.groups.size() << " groups, "
      << report.record_count << " records\n";
  std::vector<std::vector<std::string>> rows = {
      {"group", "genuine_n", "genuine_mean", "genuine_sd", "impostor_n",
       "impostor_mean", "impostor_sd"}};
  for (const auto& g : report.groups) {
    rows.push_back({g.group, std::to_string(g.genuine.count),
                    fmt(g.genuine.mean), fmt(g.genuine.std_dev),
                    std::to_string(g.impostor.count), fmt(g.impostor.mean),
                    fmt(g.impostor.std_dev)});
  }
  out << render_rows(rows);

  if (report.outcome) {
    const auto& o = *report.outcome;
    out << "\nOutcome at threshold " << fmt(o.threshold()) << " (target FMR "
        << fmt(o.target_fmr) << ", achieved "
        << fmt(o.operating_point.achieved_fmr) << ")\n";
    rows = {{"group", "FMR", "FNMR"}};
    for (std::size_t i = 0; i < o.fmr_rates.per_group.size(); ++i) {
      rows.push_back({o.fmr_rates.per_group[i].group,
                      fmt(o.fmr_rates.per_group[i].rate),
                      fmt(o.fnmr_rates.per_group[i].rate)});
    }
    if (report.config.metrics.inequity) {
      rows.push_back({"Inequity", fmt(o.inequity_fmr.value),
                      fmt(o.inequity_fnmr.value)});
    }
    if (report.config.metrics.garbe) {
      rows.push_back({"GARBE", fmt(o.garbe_fmr), fmt(o.garbe_fnmr)});
    }
    out << render_rows(rows);
  }

  if (report.dfi_normal && report.dfi_extreme) {
    out << "\nDFI\n";
    out << render_rows({{"normal", fmt(report.dfi_normal->value)},
                        {"extreme", fmt(report.dfi_extreme->value)}});
  }

  if (!report.cei.empty()) {
    out << "\nCEI\n";
    rows = {{"mode", "kind", "variant", "value", "split_pct", "split_score",
             "w_tail"}};
    for (const auto& r : report.cei) {
      rows.push_back({std::string(to_string(r.mode)),
                      std::string(to_string(r.kind)),
                      std::string(to_string(r.variant)), fmt(r.value),
                      fmt(r.split_percentile_used), fmt(r.split_score_used),
                      fmt(r.weighting_used.tail())});
    }
    out << render_rows(rows);
  }

  if (!report.warnings.empty()) {
    out << "\nWarnings\n";
    for (const auto& w : report.warnings) out << "  " << w << '\n';
  }
  return out.str();
}

std::string export_distributions_json(const ScoreDataset& ds, std::size_t bins,
                                      std::optional<double> split_percentile,
                                      std::optional<double> n_sigma) {
  if (bins < 1) throw Error("bins must be >= 1");
  std::vector<EmpiricalDistribution> gen, imp, comb;
  for (const auto& g : ds.groups()) {
    for (ScoreKind kind : kKinds) {
      if (g.scores(kind).empty()) {
        throw Error("group '" + g.group + "' has no " +
                    std::string(to_string(kind)) + " scores");
      }
    }
    gen.push_back(build_histogram(g.genuine, bins));
    imp.push_back(build_histogram(g.impostor, bins));
    comb.push_back(build_histogram(g.combined(), bins));
  }

  Json j;
  j["bins"] = bins;
  j["bin_edges"] = num_array(uniform_bin_edges(bins));
  Json groups = Json::array();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Json gj;
    gj["group"] = ds[i].group;
    gj["genuine_masses"] = num_array(gen[i].masses());
    gj["impostor_masses"] = num_array(imp[i].masses());
    gj["combined_masses"] = num_array(comb[i].masses());
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);

  Json mean;
  mean["genuine_masses"] = num_array(mean_distribution(gen).masses());
  mean["impostor_masses"] = num_array(mean_distribution(imp).masses());
  mean["combined_masses"] = num_array(mean_distribution(comb).masses());
  j["mean"] = std::move(mean);

  if (split_percentile || n_sigma) {
    Json splits = Json::object();
    for (ScoreKind kind : kKinds) {
      const auto pooled = ds.pooled(kind);
      const TailDirection dir = tail_direction_for(kind);
      Json kj;
      kj["tail"] = to_string(dir);
      if (split_percentile) {
        if (!(*split_percentile > 0.0 && *split_percentile < 100.0)) {
          throw Error("split percentile must lie in (0, 100)");
        }
        Json m;
        m["split_percentile"] = num(*split_percentile);
        m["split_score"] =
            num(percentile_score(pooled, *split_percentile, dir));
        kj["manual"] = std::move(m);
      }
      if (n_sigma) {
        const auto params = auto_parameters(ds, kind, *n_sigma);
        Json a;
        a["n_sigma"] = num(*n_sigma);
        a["split_score"] = num(params.threshold.value);
        a["split_percentile"] = num(params.split_percentile);
        a["w_tail"] = num(params.weighting.tail());
        a["clamped"] = params.threshold.clamped;
        kj["automated"] = std::move(a);
      }
      splits[std::string(to_string(kind))] = std::move(kj);
    }
    j["splits"] = std::move(splits);
  }
  return j.dump(2) + "\n";
}

}  // namespace equity
