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

#include "support/cross_check.h"

#include <cmath>
#include <sstream>

#include "equity/cei.h"
#include "equity/error.h"
#include "equity/outcome.h"
#include "support/oracle.h"

namespace equity::proptest {
namespace {

class Comparer {
 public:
  explicit Comparer(double tol) : tol_(tol) {}

  void operator()(const std::string& what, double lib, double ref) {
    ++result.compared;
    if (!result.mismatch.empty()) return;
    if (!(std::abs(lib - ref) <= tol_)) {
      std::ostringstream s;
      s.precision(17);
      s << what << ": library " << lib << " oracle " << ref;
      result.mismatch = s.str();
    }
  }

  void fail(const std::string& what) {
    if (result.mismatch.empty()) result.mismatch = what;
  }

  CrossCheck result;

 private:
  double tol_;
};

}  // namespace

CrossCheck cross_check(const ScoreDataset& ds, std::size_t bins,
                       double target_fmr, double n_sigma, double tol) {
  Comparer cmp(tol);

  const auto lib_out = outcome_suite(ds, target_fmr);
  const auto ref_out = oracle::outcome(ds, target_fmr, kDefaultRateFloor);
  cmp("threshold", lib_out.threshold(), ref_out.threshold);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    cmp("fmr " + ds[i].group, lib_out.fmr_rates.per_group[i].rate, ref_out.fmr[i]);
    cmp("fnmr " + ds[i].group, lib_out.fnmr_rates.per_group[i].rate, ref_out.fnmr[i]);
  }
  cmp("inequity_fmr", lib_out.inequity_fmr.value, ref_out.inequity_fmr);
  cmp("inequity_fnmr", lib_out.inequity_fnmr.value, ref_out.inequity_fnmr);
  cmp("garbe_fmr", lib_out.garbe_fmr, ref_out.garbe_fmr);
  cmp("garbe_fnmr", lib_out.garbe_fnmr, ref_out.garbe_fnmr);

  const auto ref_dfi = oracle::dfi(ds, bins, kDefaultEpsilon);
  cmp("dfi normal", dfi(ds, Variant::kNormal, bins).value, ref_dfi.normal);
  cmp("dfi extreme", dfi(ds, Variant::kExtreme, bins).value, ref_dfi.extreme);

  for (auto kind : {ScoreKind::kGenuine, ScoreKind::kImpostor}) {
    const std::string k(to_string(kind));
    const double split = oracle::manual_split(ds, kind, kDefaultSplitPercentile);
    const auto ref_manual =
        oracle::cei(ds, kind, split, kDefaultTailWeight, bins, kDefaultEpsilon);
    const auto ref_auto =
        oracle::cei_auto(ds, kind, n_sigma, bins, kDefaultEpsilon);
    for (auto variant : {Variant::kNormal, Variant::kExtreme}) {
      const bool normal = variant == Variant::kNormal;
      const std::string v(to_string(variant));

      CeiConfig c;
      c.kind = kind;
      c.variant = variant;
      c.bins = bins;
      const double ref_m = normal ? ref_manual.normal : ref_manual.extreme;
      try {
        const auto r = cei(ds, c);
        cmp("cei manual split " + k, r.split_score_used, split);
        cmp("cei manual " + k + " " + v, r.value, ref_m);
      } catch (const Error& e) {
        if (!std::isnan(ref_m)) cmp.fail("library rejected manual " + k + ": " + e.what());
        ++cmp.result.degenerate;
      }

      const double ref_a = normal ? ref_auto.index.normal : ref_auto.index.extreme;
      try {
        const auto r = cei_auto(ds, kind, variant, n_sigma, bins);
        cmp("cei auto split " + k, r.split_score_used, ref_auto.split_score);
        cmp("cei auto percentile " + k, r.split_percentile_used, ref_auto.percentile);
        cmp("cei auto w_tail " + k, r.weighting_used.tail(), ref_auto.w_tail);
        cmp("cei auto " + k + " " + v, r.value, ref_a);
      } catch (const Error& e) {
        if (!std::isnan(ref_a)) cmp.fail("library rejected auto " + k + ": " + e.what());
        ++cmp.result.degenerate;
      }
    }
  }
  return cmp.result;
}

}  // namespace equity::proptest
