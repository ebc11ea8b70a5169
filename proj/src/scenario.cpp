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

#include "rismimo/scenario.hpp"

#include <cmath>
#include <string>

namespace rismimo
{
    double distance(const Point2 &a, const Point2 &b) { return std::hypot(a.x - b.x, a.y - b.y); }

    void PathlossModel::validate() const
    {
        if (!std::isfinite(exponent) || exponent < 0.0)
            throw ScenarioError("pathloss: exponent must be finite and non-negative");
        if (!std::isfinite(reference_gain) || reference_gain <= 0.0)
            throw ScenarioError("pathloss: reference gain must be positive");
        if (!std::isfinite(reference_distance) || reference_distance <= 0.0)
            throw ScenarioError("pathloss: reference distance must be positive");
    }

    double pathloss_to_beta(double distance, const PathlossModel &model)
    {
        model.validate();
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw ScenarioError("pathloss_to_beta: distance must be positive");
        return model.reference_gain * std::pow(distance / model.reference_distance, -model.exponent);
    }

    PhaseShift PhaseSpec::build(Index elements) const
    {
        switch (mode)
        {
        case Mode::zero:
            return PhaseShift::zero(elements);
        case Mode::uniform_random:
            return PhaseShift::uniform_random(elements, seed);
        case Mode::explicit_list:
            if (static_cast<Index>(thetas.size()) != elements)
                throw ScenarioError("phase: explicit list has " + std::to_string(thetas.size()) + " entries, RIS has " +
                                    std::to_string(elements));
            return PhaseShift(thetas);
        }
        throw ScenarioError("phase: unknown mode");
    }

    ScenarioConfig ScenarioConfig::with_dimensions(Index antennas_, Index elements) const
    {
        if (antennas_ < 1 || elements < 1)
            throw ScenarioError("with_dimensions: M and N must be positive");
        ScenarioConfig out = *this;
        out.antennas = antennas_;
        Index n_v = 1;
        for (Index d = 1; d * d <= elements; ++d)
            if (elements % d == 0)
                n_v = d;
        out.ris.n_v = n_v;
        out.ris.n_h = elements / n_v;
        return out;
    }

    void ScenarioConfig::validate() const
    {
        if (antennas < 1)
            throw ScenarioError("scenario: antennas must be positive");
        try
        {
            ris.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ScenarioError(std::string("scenario: ") + e.what());
        }
        if (user_positions.empty())
            throw ScenarioError("scenario: at least one user is required");
        if (clusters.count < 1)
            throw ScenarioError("scenario: cluster count must be positive");
        if (!std::isfinite(clusters.angular_std) || clusters.angular_std < 0.0)
            throw ScenarioError("scenario: angular spread must be non-negative");
        direct_pathloss.validate();
        ris_pathloss.validate();

        std::vector<Point2> all{bs_position, ris_position};
        all.insert(all.end(), user_positions.begin(), user_positions.end());
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = a + 1; b < all.size(); ++b)
                if (distance(all[a], all[b]) <= 0.0)
                    throw ScenarioError("scenario: positions must be distinct");

        if (nominal_aoas)
        {
            if (static_cast<Index>(nominal_aoas->size()) != num_users() + 1)
                throw ScenarioError("scenario: nominal_aoas needs one list per link (users + 1)");
            for (const auto &link : *nominal_aoas)
            {
                if (link.empty())
                    throw ScenarioError("scenario: every link needs at least one nominal AoA");
                for (double psi : link)
                    if (!std::isfinite(psi) || std::abs(psi) > pi)
                        throw ScenarioError("scenario: nominal AoA outside [-pi, pi]");
            }
        }
        if (phase.mode == PhaseSpec::Mode::explicit_list &&
            static_cast<Index>(phase.thetas.size()) != ris.elements())
            throw ScenarioError("scenario: explicit phase list length differs from the RIS element count");
    }

    std::vector<double> draw_nominal_aoas(std::uint64_t aoa_seed, Index link, Index clusters)
    {
        RngStream rng(aoa_seed, StreamPurpose::nominal_aoa, static_cast<std::uint64_t>(link));
        std::vector<double> out(static_cast<std::size_t>(clusters));
        for (double &psi : out)
            psi = rng.uniform(-pi, pi);
        return out;
    }

    Scenario build_scenario(const ScenarioConfig &config)
    {
        config.validate();
        const Index m = config.antennas;
        const Index k_users = config.num_users();

        Scenario out;
        out.bs_ris_distance = distance(config.bs_position, config.ris_position);
        const double beta_s = pathloss_to_beta(out.bs_ris_distance, config.ris_pathloss);

        for (Index link = 0; link <= k_users; ++link)
            out.nominal_aoas.push_back(config.nominal_aoas
                                           ? (*config.nominal_aoas)[static_cast<std::size_t>(link)]
                                           : draw_nominal_aoas(config.clusters.aoa_seed, link, config.clusters.count));

        auto bs_side = [&](double beta, Index link) {
            if (!config.correlated)
                return uncorrelated_bs_covariance(beta, m);
            LocalScatteringParams p;
            p.beta = beta;
            p.nominal_aoas = out.nominal_aoas[static_cast<std::size_t>(link)];
            p.angular_std = config.clusters.angular_std;
            p.antennas = m;
            return local_scattering_covariance(p);
        };

        const HermitianMatrix surface =
            config.correlated ? ris_sinc_correlation(config.ris) : uncorrelated_ris_correlation(config.ris);

        out.bundle.beta_s = beta_s;
        out.bundle.bs_cov = bs_side(beta_s, 0);
        out.bundle.ris_side_cov = surface;
        for (Index k = 0; k < k_users; ++k)
        {
            const Point2 &pos = config.user_positions[static_cast<std::size_t>(k)];
            const double d_direct = distance(config.bs_position, pos);
            const double d_ris = distance(config.ris_position, pos);
            out.direct_distances.push_back(d_direct);
            out.ris_user_distances.push_back(d_ris);

            UserLink u;
            u.beta_direct = pathloss_to_beta(d_direct, config.direct_pathloss);
            u.beta_ris = pathloss_to_beta(d_ris, config.ris_pathloss);
            u.direct_cov = bs_side(u.beta_direct, k + 1);
            u.ris_cov = surface.scaled(u.beta_ris);
            out.bundle.users.push_back(std::move(u));
        }
        out.bundle.validate();
        out.phase = config.phase.build(config.ris.elements());
        return out;
    }

} // namespace rismimo
