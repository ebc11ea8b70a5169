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

#include "rismimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "rismimo/metrics.hpp"

namespace rismimo
{
    EstimatorResult with_closed_form(EstimatorResult result, double closed_form)
    {
        result.closed_form = closed_form;
        const double diff = result.estimate - closed_form;
        if (result.std_error > 0.0)
            result.z_score = diff / result.std_error;
        else if (diff == 0.0)
            result.z_score = 0.0;
        else
            result.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
        return result;
    }

    // ---------------------------------------------------------------- MomentAccumulator

    void MomentAccumulator::push(double x)
    {
        const double x2 = x * x;
        ++n_;
        s1_ += x;
        s2_ += x2;
        s3_ += x2 * x;
        s4_ += x2 * x2;
    }

    void MomentAccumulator::merge(const MomentAccumulator &other)
    {
        n_ += other.n_;
        s1_ += other.s1_;
        s2_ += other.s2_;
        s3_ += other.s3_;
        s4_ += other.s4_;
    }

    double MomentAccumulator::mean() const { return n_ == 0 ? 0.0 : s1_ / static_cast<double>(n_); }

    double MomentAccumulator::variance() const
    {
        if (n_ < 2)
            return 0.0;
        const double n = static_cast<double>(n_);
        const double mu = s1_ / n;
        return std::max(0.0, (s2_ - n * mu * mu) / (n - 1.0));
    }

    double MomentAccumulator::mean_std_error() const
    {
        return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
    }

    double MomentAccumulator::variance_std_error() const
    {
        if (n_ < 2)
            return 0.0;
        const double n = static_cast<double>(n_);
        const double mu = s1_ / n;
        const double m2 = s2_ / n - mu * mu;
        // Fourth central moment from raw sums.
        const double m4 = s4_ / n - 4.0 * mu * s3_ / n + 6.0 * mu * mu * s2_ / n - 3.0 * mu * mu * mu * mu;
        return std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
    }

    double MomentAccumulator::mean_of_squares() const { return n_ == 0 ? 0.0 : s2_ / static_cast<double>(n_); }

    double MomentAccumulator::mean_of_squares_std_error() const
    {
        if (n_ < 2)
            return 0.0;
        const double n = static_cast<double>(n_);
        const double mu = s2_ / n;
        const double var = std::max(0.0, (s4_ - n * mu * mu) / (n - 1.0));
        return std::sqrt(var / n);
    }

    // ---------------------------------------------------------------- PassSums

    const PassSums::Pair &PassSums::pair(Index k, Index l) const
    {
        const Index a = std::min(k, l);
        const Index b = std::max(k, l);
        for (const Pair &p : pairs)
            if (p.k == a && p.l == b)
                return p;
        throw std::out_of_range("PassSums: no such user pair");
    }

    void PassSums::merge(const PassSums &other)
    {
        n += other.n;
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            users[k].norm_sq.merge(other.users[k].norm_sq);
            users[k].cascaded.merge(other.users[k].cascaded);
            if (users[k].cov.size() > 0)
                users[k].cov += other.users[k].cov;
        }
        for (std::size_t p = 0; p < pairs.size(); ++p)
        {
            pairs[p].sum_ip += other.pairs[p].sum_ip;
            pairs[p].ip_sq.merge(other.pairs[p].ip_sq);
        }
    }

    double closed_second_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k)
    {
        const UserLink &u = bundle.users.at(static_cast<std::size_t>(k));
        return second_moment(bundle.antennas(), u.beta_direct, bundle.beta_s,
                             theta_matrix(phase, bundle.ris_side_cov, u.ris_cov));
    }

    namespace
    {
        PassSums empty_sums(const std::vector<double> &scale, Index antennas, bool with_covariance)
        {
            PassSums s;
            s.scale = scale;
            const auto users = static_cast<Index>(scale.size());
            s.users.resize(scale.size());
            if (with_covariance)
                for (auto &u : s.users)
                    u.cov = CMatrix::Zero(antennas, antennas);
            for (Index k = 0; k < users; ++k)
                for (Index l = k + 1; l < users; ++l)
                {
                    PassSums::Pair p;
                    p.k = k;
                    p.l = l;
                    s.pairs.push_back(p);
                }
            return s;
        }

        void accumulate_block(const ChannelSampler &sampler, std::uint64_t seed, std::size_t block,
                              std::size_t count, PassSums &out)
        {
            RngStream rng(seed, StreamPurpose::channel, block);
            std::vector<CVector> z;
            std::vector<CVector> cascaded;
            const std::size_t users = out.users.size();
            for (std::size_t i = 0; i < count; ++i)
            {
                sampler.draw_aggregated(rng, z, cascaded);
                for (std::size_t k = 0; k < users; ++k)
                {
                    PassSums::User &u = out.users[k];
                    const double inv = 1.0 / out.scale[k];
                    u.norm_sq.push(z[k].squaredNorm() * inv);
                    u.cascaded.push(cascaded[k].squaredNorm() * inv);
                    if (u.cov.size() > 0)
                        u.cov.noalias() += (z[k] * inv) * z[k].adjoint();
                }
                for (PassSums::Pair &p : out.pairs)
                {
                    const auto k = static_cast<std::size_t>(p.k);
                    const auto l = static_cast<std::size_t>(p.l);
                    const cdouble ip = z[k].dot(z[l]) / std::sqrt(out.scale[k] * out.scale[l]);
                    p.sum_ip += ip;
                    p.ip_sq.push(std::norm(ip));
                }
            }
            out.n += count;
        }
    } // namespace

    PassSums run_pass(const CovarianceBundle &bundle, const PhaseShift &phase, const McSettings &settings,
                      bool with_covariance)
    {
        if (settings.samples == 0)
            throw std::invalid_argument("run_pass: at least one sample is required");

        const ChannelSampler sampler(bundle, phase);
        std::vector<double> scale;
        for (Index k = 0; k < bundle.num_users(); ++k)
        {
            const double m2 = closed_second_moment(bundle, phase, k);
            scale.push_back(m2 > 0.0 ? m2 : 1.0);
        }

        const std::size_t blocks = (settings.samples + mc_block_size - 1) / mc_block_size;
        const std::size_t chunks = std::min(blocks, mc_max_chunks);
        const std::size_t per_chunk = (blocks + chunks - 1) / chunks;

        std::vector<PassSums> partial(chunks, empty_sums(scale, bundle.antennas(), with_covariance));
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto work = [&]() {
            try
            {
                for (std::size_t c = next++; c < chunks; c = next++)
                {
                    const std::size_t first = c * per_chunk;
                    const std::size_t last = std::min(blocks, first + per_chunk);
                    for (std::size_t b = first; b < last; ++b)
                    {
                        const std::size_t begin = b * mc_block_size;
                        const std::size_t count = std::min(mc_block_size, settings.samples - begin);
                        accumulate_block(sampler, settings.seed, b, count, partial[c]);
                    }
                }
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        };

        unsigned workers = settings.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : settings.workers;
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
        if (workers <= 1)
            work();
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
        if (failure)
            std::rethrow_exception(failure);

        PassSums total = empty_sums(scale, bundle.antennas(), with_covariance);
        for (const PassSums &p : partial)
            total.merge(p);
        return total;
    }

    // ---------------------------------------------------------------- estimators from sums

    EstimatorResult second_moment_from(const PassSums &sums, Index k)
    {
        const auto &u = sums.users.at(static_cast<std::size_t>(k));
        const double s = sums.scale[static_cast<std::size_t>(k)];
        return {s * u.norm_sq.mean(), s * u.norm_sq.mean_std_error(), sums.n, std::nullopt, std::nullopt};
    }

    EstimatorResult fourth_moment_from(const PassSums &sums, Index k)
    {
        const auto &u = sums.users.at(static_cast<std::size_t>(k));
        const double s2 = sums.scale[static_cast<std::size_t>(k)] * sums.scale[static_cast<std::size_t>(k)];
        return {s2 * u.norm_sq.mean_of_squares(), s2 * u.norm_sq.mean_of_squares_std_error(), sums.n, std::nullopt,
                std::nullopt};
    }

    EstimatorResult fp_from(const PassSums &sums, Index k, Index l, FpNormalization norm)
    {
        const PassSums::Pair &p = sums.pair(k, l);
        const double n = static_cast<double>(sums.n);
        if (sums.n < 2)
            throw std::invalid_argument("fp_from: need at least two samples");

        // Var{X} = E|X|^2 - |E X|^2, unbiased.
        const double mean_sq = p.ip_sq.mean();
        const double mean_abs_sq = std::norm(p.sum_ip / n);
        double estimate = std::max(0.0, (mean_sq - mean_abs_sq) * n / (n - 1.0));
        double se = p.ip_sq.mean_std_error();

        if (norm == FpNormalization::empirical)
        {
            const double e_k = sums.users.at(static_cast<std::size_t>(k)).norm_sq.mean();
            const double e_l = sums.users.at(static_cast<std::size_t>(l)).norm_sq.mean();
            const double denom = e_k * e_l;
            if (denom > 0.0)
            {
                estimate /= denom;
                se /= denom;
            }
        }
        return {estimate, se, sums.n, std::nullopt, std::nullopt};
    }

    EstimatorResult ch_from(const PassSums &sums, Index k)
    {
        const auto &u = sums.users.at(static_cast<std::size_t>(k));
        return {u.norm_sq.variance(), u.norm_sq.variance_std_error(), sums.n, std::nullopt, std::nullopt};
    }

    EstimatorResult indirect_power_from(const PassSums &sums, Index k)
    {
        const auto &u = sums.users.at(static_cast<std::size_t>(k));
        const double s = sums.scale[static_cast<std::size_t>(k)];
        return {s * u.cascaded.mean(), s * u.cascaded.mean_std_error(), sums.n, std::nullopt, std::nullopt};
    }

    HermitianMatrix covariance_from(const PassSums &sums, Index k)
    {
        const auto &u = sums.users.at(static_cast<std::size_t>(k));
        if (u.cov.size() == 0)
            throw std::logic_error("covariance_from: pass was run without covariance accumulation");
        const double s = sums.scale[static_cast<std::size_t>(k)];
        const CMatrix c = u.cov * (s / static_cast<double>(sums.n));
        return HermitianMatrix(0.5 * (c + c.adjoint()));
    }

    // ---------------------------------------------------------------- stand-alone estimators

    namespace
    {
        void require_samples(const McSettings &settings, std::size_t minimum, const char *what)
        {
            if (settings.samples < minimum)
                throw std::invalid_argument(std::string(what) + ": needs at least " + std::to_string(minimum) +
                                            " samples");
        }

        void require_user(const CovarianceBundle &bundle, Index k)
        {
            if (k < 0 || k >= bundle.num_users())
                throw std::out_of_range("user index out of range");
        }
    } // namespace

    EstimatorResult estimate_second_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                           const McSettings &settings)
    {
        require_samples(settings, 100, "estimate_second_moment");
        require_user(bundle, k);
        const PassSums sums = run_pass(bundle, phase, settings, false);
        return with_closed_form(second_moment_from(sums, k), closed_second_moment(bundle, phase, k));
    }

    EstimatorResult estimate_fourth_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                           const McSettings &settings)
    {
        require_samples(settings, 100, "estimate_fourth_moment");
        require_user(bundle, k);
        const PassSums sums = run_pass(bundle, phase, settings, false);
        EstimatorResult r = fourth_moment_from(sums, k);
        if (closed_second_moment(bundle, phase, k) == 0.0)
            return with_closed_form(r, 0.0);
        return with_closed_form(r, aggregated_statistics(bundle, phase, k).fourth_moment);
    }

    EstimatorResult estimate_fp(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l,
                                const McSettings &settings, FpNormalization norm)
    {
        require_samples(settings, 1000, "estimate_fp");
        require_user(bundle, k);
        require_user(bundle, l);
        if (k == l)
            throw std::invalid_argument("estimate_fp: users must differ");
        const PassSums sums = run_pass(bundle, phase, settings, false);
        return with_closed_form(fp_from(sums, k, l, norm), fp_metric(bundle, phase, k, l));
    }

    EstimatorResult estimate_ch(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                const McSettings &settings)
    {
        require_samples(settings, 1000, "estimate_ch");
        require_user(bundle, k);
        const PassSums sums = run_pass(bundle, phase, settings, false);
        return with_closed_form(ch_from(sums, k), ch_metric(bundle, phase, k));
    }

    EstimatorResult estimate_indirect_power(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                            const McSettings &settings)
    {
        require_samples(settings, 100, "estimate_indirect_power");
        require_user(bundle, k);
        const PassSums sums = run_pass(bundle, phase, settings, false);
        const UserLink &u = bundle.users[static_cast<std::size_t>(k)];
        const PowerDecomposition pd = power_decomposition(bundle.antennas(), u.beta_direct, bundle.beta_s,
                                                          theta_matrix(phase, bundle.ris_side_cov, u.ris_cov));
        return with_closed_form(indirect_power_from(sums, k), pd.indirect);
    }

    HermitianMatrix empirical_covariance(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                         const McSettings &settings)
    {
        require_samples(settings, 10000, "empirical_covariance");
        require_user(bundle, k);
        return covariance_from(run_pass(bundle, phase, settings, true), k);
    }

    double max_entry_relative_error(const CMatrix &estimate, const CMatrix &reference)
    {
        if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols())
            throw std::invalid_argument("max_entry_relative_error: dimension mismatch");
        if (estimate.size() == 0)
            return 0.0;
        const double err = (estimate - reference).cwiseAbs().maxCoeff();
        const double ref = reference.cwiseAbs().maxCoeff();
        return ref > 0.0 ? err / ref : err;
    }

} // namespace rismimo
