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

import math

import numpy as np
import pytest

import rismimo


def test_uncorrelated_closed_forms():
    assert rismimo.fp_metric_uncorrelated(16, 64, 1.0, 2.0, 0.5, 0.1) == pytest.approx(1 / 16, rel=1e-12)
    assert rismimo.ch_metric_uncorrelated(2, 2, 1.0, 1.0, 1.0, 1.0) == pytest.approx(15 / 18, rel=1e-12)
    assert rismimo.chebyshev_hardening_bound(0.01, 0.5) == pytest.approx(0.96)


def test_covariance_builders():
    r = rismimo.local_scattering_covariance(1.0, [0.0], 0.0, 2)
    assert np.allclose(r, np.ones((2, 2)))
    q = 0.025
    c = rismimo.ris_sinc_correlation(2, 1, q, q, 0.1)
    assert c[0, 1].real == pytest.approx(q * q * 2 / math.pi)
    a = np.diag([4.0, 9.0]).astype(complex)
    assert np.allclose(rismimo.hermitian_sqrt(a), np.diag([2.0, 3.0]))
    assert rismimo.sorted_eigenvalues(a) == pytest.approx([9.0, 4.0])
    assert rismimo.pathloss_to_beta(2.0, 2.0) == pytest.approx(0.25)


def test_scenario_and_metrics():
    cfg = rismimo.ScenarioConfig()
    assert (cfg.antennas, cfg.elements, cfg.num_users) == (8, 16, 2)
    s = rismimo.Scenario(cfg)
    m2 = s.second_moment(0)
    assert m2 > 0
    assert s.aggregated_covariance(0).shape == (8, 8)
    assert np.trace(s.aggregated_covariance(0)).real == pytest.approx(m2)
    ch = rismimo.ch_metric(s, 0)
    assert s.fourth_moment(0) - m2 * m2 == pytest.approx(ch * m2 * m2, rel=1e-10)
    assert rismimo.fp_metric_exact(s, 0, 1) > rismimo.fp_metric(s, 0, 1) > 0


def test_config_round_trip():
    cfg = rismimo.config_from_json('{"antennas": 12, "correlated": false}')
    assert cfg.antennas == 12 and not cfg.correlated
    back = rismimo.config_from_json(rismimo.config_to_json(cfg))
    assert rismimo.config_to_json(back) == rismimo.config_to_json(cfg)
    with pytest.raises(ValueError):
        rismimo.config_from_json('{"antenas": 4}')


def test_estimators():
    s = rismimo.Scenario(rismimo.ScenarioConfig())
    r = rismimo.estimate_second_moment(s, 0, rismimo.McSettings(20000, 1))
    assert r.n_samples == 20000
    assert abs(r.z_score) < 5
    ch = rismimo.estimate_ch(s, 0, rismimo.McSettings(20000, 1))
    assert ch.closed_form == pytest.approx(rismimo.ch_metric(s, 0))


def test_sweep_and_eigen():
    cfg = rismimo.ScenarioConfig()
    cfg.correlated = False
    rows = rismimo.sweep_fp_ch(cfg, [(16, 16), (32, 32)])
    assert [r.M for r in rows] == [16, 32]
    assert rows[1].fp_both == pytest.approx(1 / 32)
    prof = rismimo.eigenvalue_profile(rismimo.ScenarioConfig(), 16, 16)
    assert len(prof["direct"]) == 16
    assert prof["rank_both"] >= 1


def test_validate_report_shape():
    reports = rismimo.validate_report(rismimo.ScenarioConfig(), 10000, 0)
    assert [r.quantity.split("_")[0] for r in reports][:2] == ["second", "fourth"]
    with pytest.raises(ValueError):
        rismimo.validate_report(rismimo.ScenarioConfig(), 100, 0)
