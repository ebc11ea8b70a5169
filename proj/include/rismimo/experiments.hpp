// SPDX-License-Identifier: Apache-2.0
//
// rismimo: channel statistics of RIS-assisted massive MIMO links
// Copyright (C) 2026 The rismimo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rismimo/metrics.hpp"
#include "rismimo/montecarlo.hpp"
#include "rismimo/scenario.hpp"

namespace rismimo
{
    using Grid = std::vector<std::pair<Index, Index>>;

    // M = N in {16, 32, 64, 128, 256}.
    Grid default_grid();

    enum class LinkVariant
    {
        direct,   // RIS links removed (T_k = 0)
        indirect, // direct links removed (R_k = 0, beta_k = 0)
        both,
    };

    CovarianceBundle restrict_links(const CovarianceBundle &bundle, LinkVariant variant);

    struct SweepRow
    {
        Index antennas = 0;
        Index elements = 0;
        double fp_direct = 0.0;
        double fp_both = 0.0;
        double fp_indirect = 0.0;
        double ch_direct = 0.0;
        double ch_both = 0.0;
        double ch_indirect = 0.0;
    };

    /// FP of users (1, 2) and CH of user 1 for the three link variants at every grid point.
    /// Grid points are evaluated on up to `workers` threads; row order follows the grid.
    std::vector<SweepRow> sweep_fp_ch(const ScenarioConfig &config, const Grid &grid, unsigned workers = 1);

    struct EigenProfile
    {
        RankProfile direct; // R_k
        RankProfile both;   // Rhat_k = R_k + tr(T_k) R_s
    };

    EigenProfile eigenvalue_profile(const ScenarioConfig &config, Index antennas, Index elements,
                                    double rel_threshold = default_rank_threshold, Index user = 0);

    struct MrcRow
    {
        Index antennas = 0;
        Index elements = 0;
        double median_ratio = 0.0; // median |z_1^H z_2| / sqrt(E2_1 E2_2)
    };

    /// Median single-draw interference ratio of users 1 and 2 for each M (with N = M), over
    /// `draws` channels drawn from the config's master seed.
    std::vector<MrcRow> mrc_demo(const ScenarioConfig &config, const std::vector<Index> &antennas, std::size_t draws);

    struct MetricReport
    {
        std::string quantity;
        double closed_form = 0.0;
        double estimate = 0.0;
        double std_error = 0.0;
        std::optional<double> z_score;
        bool pass = false;
    };

    // Acceptance gates applied by validate_report.
    inline constexpr double gate_z = 3.0;
    inline constexpr double gate_second_moment_rel = 0.01;
    inline constexpr double gate_covariance_rel = 0.02;
    inline constexpr double gate_indirect_rel = 0.02;

    // Closed-form side of a validation run for users k and l.
    struct ClosedForms
    {
        Index k = 0;
        Index l = 1;
        double second_moment = 0.0;
        double fourth_moment = 0.0;
        std::optional<double> fp;       // independent-user form
        std::optional<double> fp_exact; // with the shared BS-RIS channel term
        double ch = 0.0;
        double indirect_power = 0.0;
        HermitianMatrix covariance = HermitianMatrix::zero(0);
    };

    ClosedForms closed_forms(const Scenario &scenario, Index k = 0, Index l = 1);

    /// Compares closed forms against one Monte Carlo pass (run with covariance accumulation).
    /// Rows: second_moment, fourth_moment, fp, fp_exact, ch, covariance, indirect_power.
    /// The covariance row reports the max-entry relative error as its estimate (closed form 0).
    std::vector<MetricReport> assemble_report(const ClosedForms &closed, const PassSums &sums);

    // Builds the scenario, runs one pass of n >= 10^4 draws and assembles the report.
    std::vector<MetricReport> validate_report(const ScenarioConfig &config, std::size_t samples, std::uint64_t seed,
                                              unsigned workers = 1);

} // namespace rismimo
