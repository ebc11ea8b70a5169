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

#include "rismimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace rismimo
{
    Grid default_grid() { return {{16, 16}, {32, 32}, {64, 64}, {128, 128}, {256, 256}}; }

    CovarianceBundle restrict_links(const CovarianceBundle &bundle, LinkVariant variant)
    {
        CovarianceBundle out = bundle;
        for (UserLink &u : out.users)
        {
            if (variant == LinkVariant::direct)
            {
                u.beta_ris = 0.0;
                u.ris_cov = HermitianMatrix::zero(u.ris_cov.dim());
            }
            else if (variant == LinkVariant::indirect)
            {
                u.beta_direct = 0.0;
                u.direct_cov = HermitianMatrix::zero(u.direct_cov.dim());
            }
        }
        return out;
    }

    namespace
    {
        // Runs fn(i) for i in [0, count) on up to `workers` threads; fn writes its own slot.
        template <class Fn> void parallel_for(std::size_t count, unsigned workers, Fn fn)
        {
            workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
            if (workers <= 1)
            {
                for (std::size_t i = 0; i < count; ++i)
                    fn(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex m;
            {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&] {
                        try
                        {
                            for (std::size_t i = next++; i < count; i = next++)
                                fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(m);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    });
            }
            if (failure)
                std::rethrow_exception(failure);
        }

        SweepRow sweep_point(const ScenarioConfig &config, Index m, Index n)
        {
            const Scenario s = build_scenario(config.with_dimensions(m, n));
            if (s.bundle.num_users() < 2)
                throw ScenarioError("sweep: at least two users are required");
            SweepRow row;
            row.antennas = m;
            row.elements = n;
            const CovarianceBundle direct = restrict_links(s.bundle, LinkVariant::direct);
            const CovarianceBundle indirect = restrict_links(s.bundle, LinkVariant::indirect);
            row.fp_direct = fp_metric(direct, s.phase, 0, 1);
            row.fp_both = fp_metric(s.bundle, s.phase, 0, 1);
            row.fp_indirect = fp_metric(indirect, s.phase, 0, 1);
            row.ch_direct = ch_metric(direct, s.phase, 0);
            row.ch_both = ch_metric(s.bundle, s.phase, 0);
            row.ch_indirect = ch_metric(indirect, s.phase, 0);
            return row;
        }
    } // namespace

    std::vector<SweepRow> sweep_fp_ch(const ScenarioConfig &config, const Grid &grid, unsigned workers)
    {
        if (grid.empty())
            throw std::invalid_argument("sweep_fp_ch: grid is empty");
        std::vector<SweepRow> rows(grid.size());
        parallel_for(grid.size(), workers, [&](std::size_t i) { rows[i] = sweep_point(config, grid[i].first, grid[i].second); });
        return rows;
    }

    EigenProfile eigenvalue_profile(const ScenarioConfig &config, Index antennas, Index elements, double rel_threshold,
                                    Index user)
    {
        const Scenario s = build_scenario(config.with_dimensions(antennas, elements));
        if (user < 0 || user >= s.bundle.num_users())
            throw std::out_of_range("eigenvalue_profile: user index out of range");
        const UserLink &u = s.bundle.users[static_cast<std::size_t>(user)];
        const CMatrix theta = theta_matrix(s.phase, s.bundle.ris_side_cov, u.ris_cov);
        EigenProfile out;
        out.direct = rank_profile(u.direct_cov, rel_threshold);
        out.both = rank_profile(aggregated_covariance(u.direct_cov, s.bundle.bs_cov, theta), rel_threshold);
        return out;
    }

    std::vector<MrcRow> mrc_demo(const ScenarioConfig &config, const std::vector<Index> &antennas, std::size_t draws)
    {
        if (draws == 0)
            throw std::invalid_argument("mrc_demo: draws must be positive");
        std::vector<MrcRow> out;
        for (std::size_t i = 0; i < antennas.size(); ++i)
        {
            const Index m = antennas[i];
            const Scenario s = build_scenario(config.with_dimensions(m, m));
            if (s.bundle.num_users() < 2)
                throw ScenarioError("mrc_demo: at least two users are required");
            const double m2_1 = closed_second_moment(s.bundle, s.phase, 0);
            const double m2_2 = closed_second_moment(s.bundle, s.phase, 1);

            const ChannelSampler sampler(s.bundle, s.phase);
            std::vector<double> ratios;
            ratios.reserve(draws);
            std::vector<CVector> z;
            std::vector<CVector> cascaded;
            for (std::size_t b = 0; b * mc_block_size < draws; ++b)
            {
                RngStream rng(config.master_seed, StreamPurpose::channel, b);
                const std::size_t count = std::min(mc_block_size, draws - b * mc_block_size);
                for (std::size_t j = 0; j < count; ++j)
                {
                    sampler.draw_aggregated(rng, z, cascaded);
                    ratios.push_back(interference_ratio(z[0], z[1], m2_1, m2_2));
                }
            }
            const auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
            std::nth_element(ratios.begin(), mid, ratios.end());
            double median = *mid;
            if (ratios.size() % 2 == 0)
                median = 0.5 * (median + *std::max_element(ratios.begin(), mid));
            out.push_back({m, m, median});
        }
        return out;
    }

    ClosedForms closed_forms(const Scenario &scenario, Index k, Index l)
    {
        const CovarianceBundle &b = scenario.bundle;
        const AggregatedStatistics st = aggregated_statistics(b, scenario.phase, k);
        const UserLink &u = b.users.at(static_cast<std::size_t>(k));

        ClosedForms c;
        c.k = k;
        c.l = l;
        c.second_moment = st.second_moment;
        c.fourth_moment = st.fourth_moment;
        c.ch = ch_metric(b, scenario.phase, k);
        c.indirect_power = power_decomposition(b.antennas(), u.beta_direct, b.beta_s, st.theta).indirect;
        c.covariance = st.agg_covariance;
        if (l != k && l >= 0 && l < b.num_users())
        {
            c.fp = fp_metric(b, scenario.phase, k, l);
            c.fp_exact = fp_metric_exact(b, scenario.phase, k, l);
        }
        return c;
    }

    namespace
    {
        std::string user_label(Index k) { return std::to_string(k + 1); }

        MetricReport z_row(std::string name, const EstimatorResult &r, double closed)
        {
            const EstimatorResult z = with_closed_form(r, closed);
            MetricReport row;
            row.quantity = std::move(name);
            row.closed_form = closed;
            row.estimate = z.estimate;
            row.std_error = z.std_error;
            row.z_score = z.z_score;
            row.pass = z.z_score && std::abs(*z.z_score) <= gate_z;
            return row;
        }

        double relative_error(double estimate, double reference)
        {
            return reference != 0.0 ? std::abs(estimate - reference) / std::abs(reference) : std::abs(estimate);
        }
    } // namespace

    std::vector<MetricReport> assemble_report(const ClosedForms &c, const PassSums &sums)
    {
        const std::string uk = user_label(c.k);
        std::vector<MetricReport> out;

        MetricReport m2 = z_row("second_moment_user" + uk, second_moment_from(sums, c.k), c.second_moment);
        m2.pass = m2.pass && relative_error(m2.estimate, c.second_moment) <= gate_second_moment_rel;
        out.push_back(m2);

        out.push_back(z_row("fourth_moment_user" + uk, fourth_moment_from(sums, c.k), c.fourth_moment));

        if (c.fp)
        {
            const std::string pair = "_user" + uk + "_user" + user_label(c.l);
            const EstimatorResult fp = fp_from(sums, c.k, c.l);
            out.push_back(z_row("fp" + pair, fp, *c.fp));
            out.push_back(z_row("fp_exact" + pair, fp, *c.fp_exact));
        }

        out.push_back(z_row("ch_user" + uk, ch_from(sums, c.k), c.ch));

        MetricReport cov;
        cov.quantity = "covariance_max_rel_error_user" + uk;
        cov.closed_form = 0.0;
        cov.estimate = max_entry_relative_error(covariance_from(sums, c.k).matrix(), c.covariance.matrix());
        cov.pass = cov.estimate <= gate_covariance_rel;
        out.push_back(cov);

        MetricReport ind = z_row("indirect_power_user" + uk, indirect_power_from(sums, c.k), c.indirect_power);
        ind.pass = relative_error(ind.estimate, c.indirect_power) <= gate_indirect_rel;
        out.push_back(ind);
        return out;
    }

    std::vector<MetricReport> validate_report(const ScenarioConfig &config, std::size_t samples, std::uint64_t seed,
                                              unsigned workers)
    {
        if (samples < 10000)
            throw std::invalid_argument("validate_report: needs at least 10000 samples");
        const Scenario s = build_scenario(config);
        const ClosedForms closed = closed_forms(s, 0, 1);
        const PassSums sums = run_pass(s.bundle, s.phase, {samples, seed, workers}, true);
        return assemble_report(closed, sums);
    }

} // namespace rismimo
