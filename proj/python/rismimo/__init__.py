# SPDX-License-Identifier: Apache-2.0
#
# rismimo: channel statistics of RIS-assisted massive MIMO links
# Copyright (C) 2026 The rismimo contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Closed-form and Monte Carlo channel statistics of RIS-assisted massive MIMO links."""

from ._core import (
    McSettings,
    EstimatorResult,
    MetricReport,
    Scenario,
    ScenarioConfig,
    SweepRow,
    ch_metric,
    ch_metric_uncorrelated,
    chebyshev_hardening_bound,
    config_from_json,
    config_to_json,
    eigenvalue_profile,
    estimate_ch,
    estimate_fourth_moment,
    estimate_fp,
    estimate_second_moment,
    fourth_moment_uncorrelated,
    fp_metric,
    fp_metric_exact,
    fp_metric_uncorrelated,
    hermitian_sqrt,
    local_scattering_covariance,
    pathloss_to_beta,
    ris_sinc_correlation,
    second_moment_uncorrelated,
    sorted_eigenvalues,
    sweep_fp_ch,
    validate_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
