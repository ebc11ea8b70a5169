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

#include "rismimo/channel.hpp"

#include <cmath>
#include <string>

namespace rismimo
{
    PhaseShift::PhaseShift(std::vector<double> thetas) : thetas_(std::move(thetas)), diag_(static_cast<Index>(thetas_.size()))
    {
        for (std::size_t n = 0; n < thetas_.size(); ++n)
        {
            const double theta = thetas_[n];
            if (!std::isfinite(theta) || std::abs(theta) > pi)
                throw std::invalid_argument("PhaseShift: theta_" + std::to_string(n) + " outside [-pi, pi]");
            diag_(static_cast<Index>(n)) = std::polar(1.0, theta);
        }
    }

    PhaseShift PhaseShift::zero(Index elements)
    {
        return PhaseShift(std::vector<double>(static_cast<std::size_t>(elements), 0.0));
    }

    PhaseShift PhaseShift::uniform_random(Index elements, std::uint64_t seed)
    {
        RngStream rng(seed, StreamPurpose::phase_shift, 0);
        std::vector<double> thetas(static_cast<std::size_t>(elements));
        for (double &t : thetas)
            t = rng.uniform(-pi, pi);
        return PhaseShift(std::move(thetas));
    }

    CMatrix PhaseShift::matrix() const { return diag_.asDiagonal(); }

    CVector PhaseShift::apply(const CVector &x) const
    {
        if (x.size() != diag_.size())
            throw std::invalid_argument("PhaseShift::apply: dimension mismatch");
        return diag_.cwiseProduct(x);
    }

    CVector PhaseShift::apply_adjoint(const CVector &x) const
    {
        if (x.size() != diag_.size())
            throw std::invalid_argument("PhaseShift::apply_adjoint: dimension mismatch");
        return diag_.conjugate().cwiseProduct(x);
    }

    void CovarianceBundle::validate() const
    {
        const Index m = antennas();
        const Index n = elements();
        if (m < 1 || n < 1)
            throw ScenarioError("CovarianceBundle: empty BS or RIS covariance");
        if (beta_s < 0.0)
            throw ScenarioError("CovarianceBundle: negative beta_s");
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            const UserLink &u = users[k];
            if (u.direct_cov.dim() != m)
                throw ScenarioError("CovarianceBundle: user " + std::to_string(k) + " direct covariance is not M x M");
            if (u.ris_cov.dim() != n)
                throw ScenarioError("CovarianceBundle: user " + std::to_string(k) + " RIS covariance is not N x N");
            if (u.beta_direct < 0.0 || u.beta_ris < 0.0)
                throw ScenarioError("CovarianceBundle: negative large-scale gain for user " + std::to_string(k));
        }
    }

    ChannelSampler::ChannelSampler(const CovarianceBundle &bundle, PhaseShift phase) : phase_(std::move(phase))
    {
        bundle.validate();
        if (phase_.size() != bundle.elements())
            throw ScenarioError("ChannelSampler: phase-shift length differs from the RIS element count");

        bs_sqrt_ = hermitian_sqrt(bundle.bs_cov);
        ris_side_sqrt_ = hermitian_sqrt(bundle.ris_side_cov);
        for (const UserLink &u : bundle.users)
        {
            direct_sqrt_.push_back(hermitian_sqrt(u.direct_cov));
            ris_user_sqrt_.push_back(hermitian_sqrt(u.ris_cov));
            cascade_.push_back(ris_side_sqrt_ * phase_.diagonal().asDiagonal() * ris_user_sqrt_.back());
        }
    }

    ChannelRealization ChannelSampler::draw(RngStream &rng) const
    {
        const Index m = antennas();
        const Index n = elements();

        ChannelRealization out;
        out.phase = phase_;
        const CMatrix h_small = rng.complex_normal_matrix(m, n);
        out.bs_ris = bs_sqrt_ * h_small * ris_side_sqrt_;

        for (std::size_t k = 0; k < direct_sqrt_.size(); ++k)
        {
            const CVector g_small = rng.complex_normal_vector(n);
            const CVector u_small = rng.complex_normal_vector(m);
            out.ris_user.push_back(ris_user_sqrt_[k] * g_small);
            out.direct.push_back(direct_sqrt_[k] * u_small);
            out.aggregated.push_back(aggregate(out.direct.back(), out.bs_ris, phase_, out.ris_user.back()));
        }
        return out;
    }

    void ChannelSampler::draw_aggregated(RngStream &rng, std::vector<CVector> &z, std::vector<CVector> &cascaded) const
    {
        const Index m = antennas();
        const Index n = elements();
        const std::size_t users = direct_sqrt_.size();
        z.resize(users);
        cascaded.resize(users);

        const CMatrix h_small = rng.complex_normal_matrix(m, n);
        for (std::size_t k = 0; k < users; ++k)
        {
            const CVector g_small = rng.complex_normal_vector(n);
            const CVector u_small = rng.complex_normal_vector(m);
            const CVector reflected = cascade_[k] * g_small;
            cascaded[k].noalias() = bs_sqrt_ * (h_small * reflected);
            z[k].noalias() = direct_sqrt_[k] * u_small;
            z[k] += cascaded[k];
        }
    }

    ChannelRealization sample_realization(const CovarianceBundle &bundle, const PhaseShift &phase, RngStream &rng)
    {
        return ChannelSampler(bundle, phase).draw(rng);
    }

    CVector aggregate(const CVector &u, const CMatrix &h, const PhaseShift &phase, const CVector &g)
    {
        if (h.rows() != u.size() || h.cols() != g.size() || phase.size() != g.size())
            throw std::invalid_argument("aggregate: dimension mismatch");
        CVector z = u;
        z.noalias() += h * phase.apply(g);
        return z;
    }

    std::vector<cdouble> qpsk_symbols(Index count, RngStream &rng)
    {
        const double a = 1.0 / std::sqrt(2.0);
        std::vector<cdouble> out;
        out.reserve(static_cast<std::size_t>(count));
        for (Index i = 0; i < count; ++i)
        {
            const double re = rng.uniform(0.0, 1.0) < 0.5 ? -a : a;
            const double im = rng.uniform(0.0, 1.0) < 0.5 ? -a : a;
            out.emplace_back(re, im);
        }
        return out;
    }

    CVector uplink_signal(const ChannelRealization &realization, const UplinkSignalParams &params, RngStream &rng)
    {
        if (params.power < 0.0 || !std::isfinite(params.power))
            throw std::invalid_argument("uplink_signal: transmit power must be non-negative");
        if (params.noise_var < 0.0 || !std::isfinite(params.noise_var))
            throw std::invalid_argument("uplink_signal: noise variance must be non-negative");
        if (params.symbols.size() != realization.aggregated.size())
            throw std::invalid_argument("uplink_signal: expected one symbol per user");
        if (realization.aggregated.empty())
            throw std::invalid_argument("uplink_signal: realization has no users");

        const Index m = realization.aggregated.front().size();
        CVector y = CVector::Zero(m);
        const double amp = std::sqrt(params.power);
        for (std::size_t k = 0; k < params.symbols.size(); ++k)
            y += realization.aggregated[k] * (amp * params.symbols[k]);

        if (params.noise_var > 0.0)
            y += std::sqrt(params.noise_var) * rng.complex_normal_vector(m);
        return y;
    }

    cdouble mrc_project(const CVector &y, const CVector &z)
    {
        if (y.size() != z.size())
            throw std::invalid_argument("mrc_project: dimension mismatch");
        return z.dot(y); // Eigen's dot conjugates the left operand
    }

    double interference_ratio(const CVector &z_k, const CVector &z_l, double m2_k, double m2_l)
    {
        if (z_k.size() != z_l.size())
            throw std::invalid_argument("interference_ratio: dimension mismatch");
        if (!(m2_k > 0.0) || !(m2_l > 0.0))
            throw ScenarioError("interference_ratio: second moment must be positive");
        return std::abs(z_k.dot(z_l)) / std::sqrt(m2_k * m2_l);
    }

    double interference_ratio(const ChannelRealization &realization, Index k, Index l, double m2_k, double m2_l)
    {
        if (k == l)
            throw std::invalid_argument("interference_ratio: users must differ");
        const auto count = static_cast<Index>(realization.aggregated.size());
        if (k < 0 || l < 0 || k >= count || l >= count)
            throw std::out_of_range("interference_ratio: user index out of range");
        return interference_ratio(realization.aggregated[static_cast<std::size_t>(k)],
                                  realization.aggregated[static_cast<std::size_t>(l)], m2_k, m2_l);
    }

} // namespace rismimo
