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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rismimo/channel.hpp"

namespace rismimo
{
    // Realizations per random stream. Stream b covers draws [b * block, (b + 1) * block).
    inline constexpr std::size_t mc_block_size = 1024;

    // Upper bound on the number of partial sums merged at the end of a pass.
    inline constexpr std::size_t mc_max_chunks = 64;

    struct McSettings
    {
        std::size_t samples = 200000;
        std::uint64_t seed = 0;
        unsigned workers = 1; // 0 means std::thread::hardware_concurrency()
    };

    struct EstimatorResult
    {
        double estimate = 0.0;
        double std_error = 0.0;
        std::size_t n_samples = 0;
        std::optional<double> closed_form;
        std::optional<double> z_score; // (estimate - closed_form) / std_error
    };

    // Attaches a closed-form value and its z-score. A zero standard error gives z = 0 when the
    // values agree exactly and +-infinity otherwise.
    EstimatorResult with_closed_form(EstimatorResult result, double closed_form);

    /// Running power sums of a real sample, for mean/variance estimates with standard errors.
    class MomentAccumulator
    {
    public:
        void push(double x);
        void merge(const MomentAccumulator &other);

        std::size_t count() const { return n_; }
        double mean() const;
        double variance() const; // unbiased, n - 1
        double mean_std_error() const;
        double variance_std_error() const; // sqrt((mu_4 - s^4) / n)
        double mean_of_squares() const;
        double mean_of_squares_std_error() const;

    private:
        std::size_t n_ = 0;
        double s1_ = 0.0, s2_ = 0.0, s3_ = 0.0, s4_ = 0.0;
    };

    /// Sums accumulated by one Monte Carlo pass over a bundle.
    ///
    /// Per-user values are normalized by `scale[k]`, the closed-form E{|z_k|^2} (1 if that is
    /// zero), so the power sums stay O(1) whatever the path loss.
    struct PassSums
    {
        struct User
        {
            MomentAccumulator norm_sq;  // |z_k|^2 / scale_k
            MomentAccumulator cascaded; // |H Phi g_k|^2 / scale_k
            CMatrix cov;                // sum z_k z_k^H / scale_k (only if requested)
        };
        struct Pair
        {
            Index k = 0;
            Index l = 1;
            cdouble sum_ip{0.0, 0.0};   // sum z_k^H z_l / sqrt(scale_k scale_l)
            MomentAccumulator ip_sq;    // |z_k^H z_l|^2 / (scale_k scale_l)
        };

        std::size_t n = 0;
        std::vector<double> scale;
        std::vector<User> users;
        std::vector<Pair> pairs; // every k < l, lexicographic

        const Pair &pair(Index k, Index l) const;
        void merge(const PassSums &other);
    };

    /// Draws `settings.samples` channels and accumulates every per-user and per-pair sum.
    /// Bit-identical for a fixed seed regardless of `settings.workers`.
    PassSums run_pass(const CovarianceBundle &bundle, const PhaseShift &phase, const McSettings &settings,
                      bool with_covariance);

    // Closed-form E{|z_k|^2} without the degenerate-user check (zero for a dead user).
    double closed_second_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k);

    enum class FpNormalization
    {
        closed_form, // divide by closed-form second moments
        empirical,   // divide by sample second moments (diagnostic)
    };

    // The estimators below need samples >= 100 (moments), >= 1000 (FP, CH) or >= 10^4 (covariance).
    EstimatorResult estimate_second_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                           const McSettings &settings);
    EstimatorResult estimate_fourth_moment(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                           const McSettings &settings);
    EstimatorResult estimate_fp(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l,
                                const McSettings &settings, FpNormalization norm = FpNormalization::closed_form);
    EstimatorResult estimate_ch(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                const McSettings &settings);
    EstimatorResult estimate_indirect_power(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                            const McSettings &settings);
    HermitianMatrix empirical_covariance(const CovarianceBundle &bundle, const PhaseShift &phase, Index k,
                                         const McSettings &settings);

    // Same estimates from an existing pass (no closed form attached).
    EstimatorResult second_moment_from(const PassSums &sums, Index k);
    EstimatorResult fourth_moment_from(const PassSums &sums, Index k);
    EstimatorResult fp_from(const PassSums &sums, Index k, Index l, FpNormalization norm = FpNormalization::closed_form);
    EstimatorResult ch_from(const PassSums &sums, Index k);
    EstimatorResult indirect_power_from(const PassSums &sums, Index k);
    HermitianMatrix covariance_from(const PassSums &sums, Index k);

    // max |a_ij - b_ij| / max |b_ij|.
    double max_entry_relative_error(const CMatrix &estimate, const CMatrix &reference);

} // namespace rismimo
