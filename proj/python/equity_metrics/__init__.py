# Copyright 2026 The Equity Metrics Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Demographic fairness metrics for biometric verification scores."""

import json

from ._core import (
    EquityError,
    Scenario,
    ScoreDataset,
    ScoreKind,
    Variant,
    beta_sample,
    cei,
    cei_auto,
    dfi,
    empirical_percentile,
    evaluate_json,
    export_json,
    fmr,
    fnmr,
    garbe,
    generate_scenario,
    histogram,
    inequity,
    kl_divergence,
    percentile_score,
    threshold_at_fmr,
)

__version__ = "0.1.0"


def evaluate(dataset, **kwargs):
    """Full metric report as a dict; keyword arguments mirror the CLI flags."""
    return json.loads(evaluate_json(dataset, **kwargs))


def export_distributions(dataset, bins=100):
    return json.loads(export_json(dataset, bins))


__all__ = [
    "EquityError",
    "Scenario",
    "ScoreDataset",
    "ScoreKind",
    "Variant",
    "beta_sample",
    "cei",
    "cei_auto",
    "dfi",
    "empirical_percentile",
    "evaluate",
    "evaluate_json",
    "export_distributions",
    "export_json",
    "fmr",
    "fnmr",
    "garbe",
    "generate_scenario",
    "histogram",
    "inequity",
    "kl_divergence",
    "percentile_score",
    "threshold_at_fmr",
]
