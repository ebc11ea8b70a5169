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
#include <vector>

#include "rismimo/covariance.hpp"
#include "rismimo/rng.hpp"

namespace rismimo
{
    /// RIS phase-shift configuration Phi = diag(exp(j theta_1), ..., exp(j theta_N)).
    class PhaseShift
    {
    public:
        // Throws std::invalid_argument if any theta is outside [-pi, pi] or not finite.
        explicit PhaseShift(std::vector<double> thetas);

        static PhaseShift zero(Index elements);
        static PhaseShift uniform_random(Index elements, std::uint64_t seed);

        Index size() const { return static_cast<Index>(thetas_.size()); }
        const std::vector<double> &thetas() const { return thetas_; }

        // exp(j theta_n), the diagonal of Phi.
        const CVector &diagonal() const { return diag_; }
        CMatrix matrix() const;

        // Phi x and Phi^H x.
        CVector apply(const CVector &x) const;
        CVector apply_adjoint(const CVector &x) const;

    private:
        std::vector<double> thetas_;
        CVector diag_;
    };

    // Direct (BS-user) and RIS-user statistics of one user.
    struct UserLink
    {
        double beta_direct = 0.0; // beta_k
        double beta_ris = 0.0;    // beta_ik
        HermitianMatrix direct_cov = HermitianMatrix::zero(0); // R_k, M x M
        HermitianMatrix ris_cov = HermitianMatrix::zero(0);    // R_ik, N x N
    };

    /// All second-order statistics needed to draw channels for K users.
    struct CovarianceBundle
    {
        double beta_s = 0.0;                                  // BS-RIS large-scale gain
        HermitianMatrix bs_cov = HermitianMatrix::zero(0);    // R_s, M x M (BS side of H)
        HermitianMatrix ris_side_cov = HermitianMatrix::zero(0); // R_si, N x N (RIS side of H)
        std::vector<UserLink> users;

        Index antennas() const { return bs_cov.dim(); }
        Index elements() const { return ris_side_cov.dim(); }
        Index num_users() const { return static_cast<Index>(users.size()); }

        // Throws ScenarioError on inconsistent dimensions or negative gains.
        void validate() const;
    };

    /// One draw of the BS-RIS matrix, the per-user RIS and direct channels, and the
    /// aggregated channels z_k = u_k + H Phi g_k.
    struct ChannelRealization
    {
        CMatrix bs_ris;                  // H, M x N
        std::vector<CVector> ris_user;   // g_k, N
        std::vector<CVector> direct;     // u_k, M
        std::vector<CVector> aggregated; // z_k, M
        PhaseShift phase = PhaseShift::zero(0);
    };

    /// Draws correlated Rayleigh channels with precomputed covariance square roots.
    ///
    /// The small-scale factors are consumed from the stream in a fixed order: the M x N
    /// matrix of H (column-major), then for each user its N-vector g~_k and its M-vector u~_k.
    /// draw() and draw_aggregated() consume identical numbers, so they describe the same channel.
    class ChannelSampler
    {
    public:
        ChannelSampler(const CovarianceBundle &bundle, PhaseShift phase);

        ChannelRealization draw(RngStream &rng) const;

        /// Same channel as draw(), but only z_k and the cascaded part H Phi g_k are formed
        /// (O(MN + M^2 + N^2) per user instead of O(MN(M + N))).
        void draw_aggregated(RngStream &rng, std::vector<CVector> &z, std::vector<CVector> &cascaded) const;

        Index antennas() const { return bs_sqrt_.rows(); }
        Index elements() const { return ris_side_sqrt_.rows(); }
        Index num_users() const { return static_cast<Index>(direct_sqrt_.size()); }
        const PhaseShift &phase() const { return phase_; }

    private:
        PhaseShift phase_;
        CMatrix bs_sqrt_;       // R_s^{1/2}
        CMatrix ris_side_sqrt_; // R_si^{1/2}
        std::vector<CMatrix> direct_sqrt_;   // R_k^{1/2}
        std::vector<CMatrix> ris_user_sqrt_; // R_ik^{1/2}
        std::vector<CMatrix> cascade_;       // R_si^{1/2} Phi R_ik^{1/2}
    };

    ChannelRealization sample_realization(const CovarianceBundle &bundle, const PhaseShift &phase, RngStream &rng);

    // u + H diag(exp(j theta)) g.
    CVector aggregate(const CVector &u, const CMatrix &h, const PhaseShift &phase, const CVector &g);

    struct UplinkSignalParams
    {
        double power = 1.0;     // p, per-symbol transmit power (linear)
        double noise_var = 1.0; // sigma^2
        std::vector<cdouble> symbols;
    };

    // Unit-modulus QPSK symbols, (+-1 +- j)/sqrt(2).
    std::vector<cdouble> qpsk_symbols(Index count, RngStream &rng);

    /// y = sqrt(p) sum_k z_k s_k + w, w ~ CN(0, sigma^2 I_M). p = 0 or sigma^2 = 0 are allowed.
    CVector uplink_signal(const ChannelRealization &realization, const UplinkSignalParams &params, RngStream &rng);

    // z^H y.
    cdouble mrc_project(const CVector &y, const CVector &z);

    /// |z_k^H z_l| / sqrt(m2_k m2_l) for a single realization, with m2 the closed-form E{|z|^2}.
    double interference_ratio(const ChannelRealization &realization, Index k, Index l, double m2_k, double m2_l);
    double interference_ratio(const CVector &z_k, const CVector &z_l, double m2_k, double m2_l);

} // namespace rismimo
