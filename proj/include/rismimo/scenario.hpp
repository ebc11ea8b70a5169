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

#include <cstdint>
#include <optional>
#include <vector>

#include "rismimo/channel.hpp"

namespace rismimo
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;

        bool operator==(const Point2 &) const = default;
    };

    double distance(const Point2 &a, const Point2 &b);

    // beta = reference_gain * (d / reference_distance)^(-exponent).
    struct PathlossModel
    {
        double exponent = 2.0;
        double reference_gain = 1.0;
        double reference_distance = 1.0; // [m]

        void validate() const;
    };

    double pathloss_to_beta(double distance, const PathlossModel &model);

    struct PhaseSpec
    {
        enum class Mode
        {
            zero,
            uniform_random,
            explicit_list,
        };

        Mode mode = Mode::zero;
        std::uint64_t seed = 0;     // uniform_random only
        std::vector<double> thetas; // explicit_list only [rad]

        // Throws ScenarioError if an explicit list does not have `elements` entries.
        PhaseShift build(Index elements) const;
    };

    // Shared shape of every local scattering covariance in a scenario.
    struct ClusterTemplate
    {
        Index count = 3;
        double angular_std = deg_to_rad(3.0);
        std::uint64_t aoa_seed = 0;
    };

    /// Geometry, large-scale fading, array sizes and seeds of one experiment.
    ///
    /// Link indices used for nominal AoAs: 0 is the BS-RIS link (R_s), k + 1 is the direct
    /// link of user k (R_k). Each link draws `clusters.count` AoAs uniformly in [-pi, pi] from
    /// its own stream, so the AoAs do not change with M or N.
    struct ScenarioConfig
    {
        Point2 bs_position{0.0, 0.0};
        Point2 ris_position{125.0, 125.0};
        std::vector<Point2> user_positions{{250.0, 12.5}, {125.0, -250.0}};

        Index antennas = 8;
        RisGeometry ris{4, 4, 0.025, 0.025, 0.1};
        ClusterTemplate clusters;

        PathlossModel direct_pathloss{3.76, 1.0, 1.0};
        PathlossModel ris_pathloss{2.2, 1000.0, 1.0}; // each of the BS-RIS and RIS-user segments

        bool correlated = true;
        PhaseSpec phase;
        std::uint64_t master_seed = 0;

        // Optional explicit AoAs per link (overrides the seeded draw); K + 1 lists.
        std::optional<std::vector<std::vector<double>>> nominal_aoas;

        Index num_users() const { return static_cast<Index>(user_positions.size()); }

        /// Same scenario with M antennas and an N-element RIS laid out as n_h x n_v, where
        /// n_v is the largest divisor of N not above sqrt(N). Element size and wavelength
        /// are kept.
        ScenarioConfig with_dimensions(Index antennas, Index elements) const;

        // Throws ScenarioError on invalid or degenerate settings.
        void validate() const;
    };

    struct Scenario
    {
        CovarianceBundle bundle;
        PhaseShift phase = PhaseShift::zero(0);
        std::vector<std::vector<double>> nominal_aoas; // per link, as used
        double bs_ris_distance = 0.0;
        std::vector<double> direct_distances;   // BS-user
        std::vector<double> ris_user_distances; // RIS-user
    };

    // Nominal AoAs of link `link` (see ScenarioConfig).
    std::vector<double> draw_nominal_aoas(std::uint64_t aoa_seed, Index link, Index clusters);

    /// Covariances of every link: local scattering R_s and R_k, the sinc correlation R of the
    /// surface with R_si = R and R_ik = beta_ik R. With `correlated = false` all of them are
    /// scaled identities instead.
    Scenario build_scenario(const ScenarioConfig &config);

} // namespace rismimo
