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

#include <vector>

#include "rismimo/channel.hpp"

// Closed-form statistics of the aggregated channel z_k = u_k + H Phi g_k under correlated
// Rayleigh fading. Notation used in the comments below:
//   T_k   = Phi^H R_si Phi R_ik                  (the RIS cascade matrix, N x N)
//   E2_k  = E{|z_k|^2} = M beta_k + M beta_s tr(T_k)
//   Rhat_k = E{z_k z_k^H} = R_k + tr(T_k) R_s
// The formulas use M beta = tr(R), which holds for every covariance model in this library
// (all have constant diagonal beta).

namespace rismimo
{
    // Default relative cutoff for counting non-zero eigenvalues.
    inline constexpr double default_rank_threshold = 1e-6;

    // T_k = Phi^H R_si Phi R_ik.
    CMatrix theta_matrix(const PhaseShift &phase, const HermitianMatrix &ris_side_cov, const HermitianMatrix &ris_user_cov);

    /// Real part of tr(T). The trace is real and non-negative for PSD inputs; an imaginary
    /// residue above 1e-10 |tr| or a negative real part beyond rounding raises ScenarioError.
    double theta_trace(const CMatrix &theta);

    // Real part of tr(T^2), checked the same way.
    double theta_square_trace(const CMatrix &theta);

    // E{|z_k|^2} = M beta_k + M beta_s tr(T_k).
    double second_moment(Index antennas, double beta_k, double beta_s, const CMatrix &theta);

    /// E{|z_k|^4} = E2_k^2 + 2 tr(R_s R_k) tr(T_k) + |tr(T_k)|^2 tr(R_s^2)
    ///              + tr(T_k^2) (M^2 beta_s^2 + tr(R_s^2)) + tr(R_k^2)
    double fourth_moment(Index antennas, double beta_k, double beta_s, const HermitianMatrix &direct_cov,
                         const HermitianMatrix &bs_cov, const CMatrix &theta);

    // Rhat_k = R_k + tr(T_k) R_s.
    HermitianMatrix aggregated_covariance(const HermitianMatrix &direct_cov, const HermitianMatrix &bs_cov,
                                          const CMatrix &theta);

    struct AggregatedStatistics
    {
        CMatrix theta;
        double theta_trace = 0.0;
        double second_moment = 0.0;
        double fourth_moment = 0.0;
        HermitianMatrix agg_covariance = HermitianMatrix::zero(0);
    };

    /// Everything above for user k of a bundle. Throws ScenarioError for a degenerate user
    /// (beta_k = 0 and tr(T_k) = 0), whose metrics would be 0/0.
    AggregatedStatistics aggregated_statistics(const CovarianceBundle &bundle, const PhaseShift &phase, Index k);

    struct FpComponents
    {
        double num = 0.0;
        double den = 0.0;
    };

    /// Four-term expansions of tr(Rhat_k Rhat_l) and E2_k E2_l.
    FpComponents fp_components(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l, Index antennas,
                               double beta_k, double beta_l, double beta_s, const HermitianMatrix &direct_cov_k,
                               const HermitianMatrix &direct_cov_l, const HermitianMatrix &bs_cov);

    /// Deterministic favorable-propagation metric tr(Rhat_k Rhat_l) / (E2_k E2_l).
    ///
    /// This is the closed form that treats z_k and z_l as independent. They share H, so the
    /// exact Var{z_k^H z_l} carries one more term; see fp_shared_channel_term().
    double fp_metric(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l, Index antennas,
                     double beta_k, double beta_l, double beta_s, const HermitianMatrix &direct_cov_k,
                     const HermitianMatrix &direct_cov_l, const HermitianMatrix &bs_cov);
    double fp_metric(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l);

    /// tr(R_s)^2 tr(T_k T_l) / (E2_k E2_l): the contribution of the BS-RIS matrix H being
    /// common to both users, E{|g_k^H Phi^H H^H H Phi g_l|^2} minus its independent-user value.
    /// Zero when either user has no RIS path.
    double fp_shared_channel_term(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l,
                                  Index antennas, double beta_s);

    // fp_metric + fp_shared_channel_term: exact Var{z_k^H z_l} / (E2_k E2_l).
    double fp_metric_exact(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l);

    /// Deterministic channel-hardening metric Var{|z_k|^2} / E2_k^2 from its own closed form
    /// (not fourth - second^2, which cancels badly for large arrays).
    double ch_metric(Index antennas, double beta_k, double beta_s, const HermitianMatrix &direct_cov,
                     const HermitianMatrix &bs_cov, const CMatrix &theta);
    double ch_metric(const CovarianceBundle &bundle, const PhaseShift &phase, Index k);

    /// Parameters of the spatially uncorrelated model; xi = beta_s beta_ik d_h^2 d_v^2.
    struct UncorrelatedParams
    {
        Index antennas = 1; // M
        Index elements = 1; // N
        double beta_k = 0.0;
        double beta_l = 0.0;
        double xi_k = 0.0;
        double xi_l = 0.0;

        void validate() const;
    };

    // M beta_k + M N xi_k.
    double second_moment_uncorrelated(const UncorrelatedParams &p);

    /// M^2 beta_k^2 + 2MN(M+1) beta_k xi_k + (M^2+M)(N^2+N) xi_k^2 + M beta_k^2.
    ///
    /// The cross coefficient follows from the correlated fourth moment with identity
    /// covariances: 2 tr(R_s R_k) tr(T) + 2 M^2 beta_s beta_k tr(T) = 2MN(M+1) beta_k xi_k.
    double fourth_moment_uncorrelated(const UncorrelatedParams &p);

    // (beta_k beta_l + N beta_k xi_l + N beta_l xi_k + N^2 xi_k xi_l) / (M * same) = 1/M.
    double fp_metric_uncorrelated(const UncorrelatedParams &p);

    // (2N beta_k xi_k + N^2 xi_k^2 + (M+1) N xi_k^2 + beta_k^2) / (M (beta_k + N xi_k)^2).
    double ch_metric_uncorrelated(const UncorrelatedParams &p);

    /// Chebyshev lower bound max(0, 1 - ch / eps^2) on Pr{ | |z|^2/E2 - 1 |^2 <= eps }.
    double chebyshev_hardening_bound(double ch, double epsilon);

    struct PowerDecomposition
    {
        double direct = 0.0;   // tr(R_k) = M beta_k
        double indirect = 0.0; // tr(E{H Phi g g^H Phi^H H^H}) = M beta_s tr(T_k)
    };

    PowerDecomposition power_decomposition(Index antennas, double beta_k, double beta_s, const CMatrix &theta);

    struct RankProfile
    {
        std::vector<double> eigenvalues; // descending
        Index numerical_rank = 0;
        double threshold = default_rank_threshold;
    };

    // numerical_rank counts eigenvalues > rel_threshold * delta_1; rel_threshold must lie in (0, 1).
    RankProfile rank_profile(const HermitianMatrix &a, double rel_threshold = default_rank_threshold);

    // Number of entries of a descending eigenvalue list above an absolute cutoff.
    Index count_above(const std::vector<double> &eigenvalues, double cutoff);

    /// Finite-N diagnostics for the conditions under which the favorable-propagation metric
    /// vanishes asymptotically: tr(Phi^H R Phi R)/N bounded away from zero and
    /// ||Phi^H R Phi R||_2 bounded.
    struct AssumptionReport
    {
        double liminf_proxy = 0.0; // tr(Phi^H R Phi R) / N
        double specnorm = 0.0;     // ||Phi^H R Phi R||_2
        bool proxy_satisfied = false;
        bool norm_satisfied = false;
    };

    // proxy_satisfied uses proxy > 1e-6 (tr(R)/N)^2, i.e. relative to the element power.
    AssumptionReport check_fp_assumptions(const PhaseShift &phase, const HermitianMatrix &ris_cov);

} // namespace rismimo
