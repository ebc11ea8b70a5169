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

#include "rismimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rismimo
{
    namespace
    {
        // tr(A B) for Hermitian A, B without forming the product.
        double trace_product(const CMatrix &a, const CMatrix &b)
        {
            return (a.transpose().cwiseProduct(b)).sum().real();
        }

        double checked_real(cdouble value, const char *what)
        {
            const double tol = 1e-10 * std::abs(value) + 1e-300;
            if (std::abs(value.imag()) > tol)
                throw ScenarioError(std::string(what) + ": trace has a non-negligible imaginary part");
            return value.real();
        }

        const UserLink &user_at(const CovarianceBundle &bundle, Index k)
        {
            if (k < 0 || k >= bundle.num_users())
                throw std::out_of_range("user index out of range");
            return bundle.users[static_cast<std::size_t>(k)];
        }

        void require_positive(double value, const char *what)
        {
            if (!(value > 0.0))
                throw ScenarioError(std::string(what) + ": zero denominator (user has neither a direct nor an RIS path)");
        }
    } // namespace

    CMatrix theta_matrix(const PhaseShift &phase, const HermitianMatrix &ris_side_cov, const HermitianMatrix &ris_user_cov)
    {
        const Index n = phase.size();
        if (ris_side_cov.dim() != n || ris_user_cov.dim() != n)
            throw std::invalid_argument("theta_matrix: dimension mismatch");
        const CVector &d = phase.diagonal();
        // Phi^H R_si Phi has entries conj(d_a) r_ab d_b.
        const CMatrix rotated = d.conjugate().asDiagonal() * ris_side_cov.matrix() * d.asDiagonal();
        return rotated * ris_user_cov.matrix();
    }

    double theta_trace(const CMatrix &theta)
    {
        const double tr = checked_real(theta.trace(), "theta_trace");
        const double scale = theta.cwiseAbs().sum();
        if (tr < -1e-10 * scale)
            throw ScenarioError("theta_trace: negative trace, covariances are inconsistent");
        return std::max(tr, 0.0);
    }

    double theta_square_trace(const CMatrix &theta)
    {
        const double tr = checked_real(theta.transpose().cwiseProduct(theta).sum(), "theta_square_trace");
        return std::max(tr, 0.0);
    }

    double second_moment(Index antennas, double beta_k, double beta_s, const CMatrix &theta)
    {
        const double m = static_cast<double>(antennas);
        return m * beta_k + m * beta_s * theta_trace(theta);
    }

    double fourth_moment(Index antennas, double beta_k, double beta_s, const HermitianMatrix &direct_cov,
                         const HermitianMatrix &bs_cov, const CMatrix &theta)
    {
        if (direct_cov.dim() != antennas || bs_cov.dim() != antennas)
            throw std::invalid_argument("fourth_moment: covariances must be M x M");
        const double m = static_cast<double>(antennas);
        const double t = theta_trace(theta);
        const double t2 = theta_square_trace(theta);
        const double e2 = m * beta_k + m * beta_s * t;
        const double rs_rk = trace_product(bs_cov.matrix(), direct_cov.matrix());
        const double rs_sq = trace_product(bs_cov.matrix(), bs_cov.matrix());
        const double rk_sq = trace_product(direct_cov.matrix(), direct_cov.matrix());
        return e2 * e2 + 2.0 * rs_rk * t + t * t * rs_sq + t2 * (m * m * beta_s * beta_s + rs_sq) + rk_sq;
    }

    HermitianMatrix aggregated_covariance(const HermitianMatrix &direct_cov, const HermitianMatrix &bs_cov,
                                          const CMatrix &theta)
    {
        if (direct_cov.dim() != bs_cov.dim())
            throw std::invalid_argument("aggregated_covariance: R_k and R_s must have the same size");
        const double t = theta_trace(theta);
        return HermitianMatrix(direct_cov.matrix() + t * bs_cov.matrix());
    }

    AggregatedStatistics aggregated_statistics(const CovarianceBundle &bundle, const PhaseShift &phase, Index k)
    {
        const UserLink &user = user_at(bundle, k);
        const Index m = bundle.antennas();
        AggregatedStatistics s;
        s.theta = theta_matrix(phase, bundle.ris_side_cov, user.ris_cov);
        s.theta_trace = theta_trace(s.theta);
        if (user.beta_direct == 0.0 && s.theta_trace == 0.0)
            throw ScenarioError("user " + std::to_string(k) + " is degenerate: no direct and no RIS path");
        s.second_moment = second_moment(m, user.beta_direct, bundle.beta_s, s.theta);
        s.fourth_moment = fourth_moment(m, user.beta_direct, bundle.beta_s, user.direct_cov, bundle.bs_cov, s.theta);
        s.agg_covariance = aggregated_covariance(user.direct_cov, bundle.bs_cov, s.theta);
        return s;
    }

    FpComponents fp_components(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l, Index antennas,
                               double beta_k, double beta_l, double beta_s, const HermitianMatrix &direct_cov_k,
                               const HermitianMatrix &direct_cov_l, const HermitianMatrix &bs_cov)
    {
        if (direct_cov_k.dim() != antennas || direct_cov_l.dim() != antennas || bs_cov.dim() != antennas)
            throw std::invalid_argument("fp_components: covariances must be M x M");
        const double m = static_cast<double>(antennas);
        const double tk = stats_k.theta_trace;
        const double tl = stats_l.theta_trace;
        const CMatrix &rk = direct_cov_k.matrix();
        const CMatrix &rl = direct_cov_l.matrix();
        const CMatrix &rs = bs_cov.matrix();

        FpComponents c;
        c.num = trace_product(rk, rl) + tk * trace_product(rs, rl) + tl * trace_product(rk, rs) +
                tk * tl * trace_product(rs, rs);
        const double tr_rk = m * beta_k;
        const double tr_rl = m * beta_l;
        const double tr_rs = m * beta_s;
        c.den = tr_rk * tr_rl + tk * tr_rs * tr_rl + tl * tr_rk * tr_rs + tk * tl * tr_rs * tr_rs;
        return c;
    }

    double fp_metric(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l, Index antennas,
                     double beta_k, double beta_l, double beta_s, const HermitianMatrix &direct_cov_k,
                     const HermitianMatrix &direct_cov_l, const HermitianMatrix &bs_cov)
    {
        if (direct_cov_k.dim() != antennas || direct_cov_l.dim() != antennas || bs_cov.dim() != antennas)
            throw std::invalid_argument("fp_metric: covariances must be M x M");
        const double m = static_cast<double>(antennas);
        const double e2_k = m * beta_k + m * beta_s * stats_k.theta_trace;
        const double e2_l = m * beta_l + m * beta_s * stats_l.theta_trace;
        require_positive(e2_k * e2_l, "fp_metric");
        const CMatrix hat_k = direct_cov_k.matrix() + stats_k.theta_trace * bs_cov.matrix();
        const CMatrix hat_l = direct_cov_l.matrix() + stats_l.theta_trace * bs_cov.matrix();
        return trace_product(hat_k, hat_l) / (e2_k * e2_l);
    }

    double fp_metric(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l)
    {
        if (k == l)
            throw std::invalid_argument("fp_metric: users must differ");
        const AggregatedStatistics sk = aggregated_statistics(bundle, phase, k);
        const AggregatedStatistics sl = aggregated_statistics(bundle, phase, l);
        const UserLink &uk = user_at(bundle, k);
        const UserLink &ul = user_at(bundle, l);
        return fp_metric(sk, sl, bundle.antennas(), uk.beta_direct, ul.beta_direct, bundle.beta_s, uk.direct_cov,
                         ul.direct_cov, bundle.bs_cov);
    }

    double fp_shared_channel_term(const AggregatedStatistics &stats_k, const AggregatedStatistics &stats_l,
                                  Index antennas, double beta_s)
    {
        require_positive(stats_k.second_moment * stats_l.second_moment, "fp_shared_channel_term");
        const double tr_rs = static_cast<double>(antennas) * beta_s;
        const double cross = checked_real(stats_k.theta.transpose().cwiseProduct(stats_l.theta).sum(),
                                          "fp_shared_channel_term");
        return tr_rs * tr_rs * std::max(cross, 0.0) / (stats_k.second_moment * stats_l.second_moment);
    }

    double fp_metric_exact(const CovarianceBundle &bundle, const PhaseShift &phase, Index k, Index l)
    {
        if (k == l)
            throw std::invalid_argument("fp_metric_exact: users must differ");
        const AggregatedStatistics sk = aggregated_statistics(bundle, phase, k);
        const AggregatedStatistics sl = aggregated_statistics(bundle, phase, l);
        return fp_metric(bundle, phase, k, l) + fp_shared_channel_term(sk, sl, bundle.antennas(), bundle.beta_s);
    }

    double ch_metric(Index antennas, double beta_k, double beta_s, const HermitianMatrix &direct_cov,
                     const HermitianMatrix &bs_cov, const CMatrix &theta)
    {
        if (direct_cov.dim() != antennas || bs_cov.dim() != antennas)
            throw std::invalid_argument("ch_metric: covariances must be M x M");
        const double m = static_cast<double>(antennas);
        const double t = theta_trace(theta);
        const double t2 = theta_square_trace(theta);
        const double e2 = m * beta_k + m * beta_s * t;
        require_positive(e2, "ch_metric");
        const double rs_rk = trace_product(bs_cov.matrix(), direct_cov.matrix());
        const double rs_sq = trace_product(bs_cov.matrix(), bs_cov.matrix());
        const double rk_sq = trace_product(direct_cov.matrix(), direct_cov.matrix());
        const double num = 2.0 * rs_rk * t + t * t * rs_sq + t2 * (m * m * beta_s * beta_s + rs_sq) + rk_sq;
        return num / (e2 * e2);
    }

    double ch_metric(const CovarianceBundle &bundle, const PhaseShift &phase, Index k)
    {
        const AggregatedStatistics s = aggregated_statistics(bundle, phase, k);
        const UserLink &u = user_at(bundle, k);
        return ch_metric(bundle.antennas(), u.beta_direct, bundle.beta_s, u.direct_cov, bundle.bs_cov, s.theta);
    }

    void UncorrelatedParams::validate() const
    {
        if (antennas < 1 || elements < 1)
            throw std::invalid_argument("UncorrelatedParams: M and N must be positive");
        if (beta_k < 0.0 || beta_l < 0.0 || xi_k < 0.0 || xi_l < 0.0)
            throw std::invalid_argument("UncorrelatedParams: gains must be non-negative");
    }

    double second_moment_uncorrelated(const UncorrelatedParams &p)
    {
        p.validate();
        const double m = static_cast<double>(p.antennas);
        const double n = static_cast<double>(p.elements);
        return m * p.beta_k + m * n * p.xi_k;
    }

    double fourth_moment_uncorrelated(const UncorrelatedParams &p)
    {
        p.validate();
        const double m = static_cast<double>(p.antennas);
        const double n = static_cast<double>(p.elements);
        const double b = p.beta_k;
        const double x = p.xi_k;
        return m * m * b * b + 2.0 * m * n * (m + 1.0) * b * x + (m * m + m) * (n * n + n) * x * x + m * b * b;
    }

    double fp_metric_uncorrelated(const UncorrelatedParams &p)
    {
        p.validate();
        const double m = static_cast<double>(p.antennas);
        const double n = static_cast<double>(p.elements);
        const double bracket = p.beta_k * p.beta_l + n * p.beta_k * p.xi_l + n * p.beta_l * p.xi_k + n * n * p.xi_k * p.xi_l;
        require_positive(bracket, "fp_metric_uncorrelated");
        return bracket / (m * bracket);
    }

    double ch_metric_uncorrelated(const UncorrelatedParams &p)
    {
        p.validate();
        const double m = static_cast<double>(p.antennas);
        const double n = static_cast<double>(p.elements);
        const double b = p.beta_k;
        const double x = p.xi_k;
        const double base = b + n * x;
        require_positive(base, "ch_metric_uncorrelated");
        const double num = 2.0 * n * b * x + n * n * x * x + (m + 1.0) * n * x * x + b * b;
        return num / (m * base * base);
    }

    double chebyshev_hardening_bound(double ch, double epsilon)
    {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("chebyshev_hardening_bound: epsilon must be positive");
        if (ch < 0.0)
            throw std::invalid_argument("chebyshev_hardening_bound: metric must be non-negative");
        return std::max(0.0, 1.0 - ch / (epsilon * epsilon));
    }

    PowerDecomposition power_decomposition(Index antennas, double beta_k, double beta_s, const CMatrix &theta)
    {
        const double m = static_cast<double>(antennas);
        return {m * beta_k, m * beta_s * theta_trace(theta)};
    }

    RankProfile rank_profile(const HermitianMatrix &a, double rel_threshold)
    {
        if (!(rel_threshold > 0.0) || !(rel_threshold < 1.0))
            throw std::invalid_argument("rank_profile: threshold must lie in (0, 1)");
        RankProfile p;
        p.threshold = rel_threshold;
        p.eigenvalues = sorted_eigenvalues(a);
        if (!p.eigenvalues.empty() && p.eigenvalues.front() > 0.0)
            p.numerical_rank = count_above(p.eigenvalues, rel_threshold * p.eigenvalues.front());
        return p;
    }

    Index count_above(const std::vector<double> &eigenvalues, double cutoff)
    {
        return static_cast<Index>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                [cutoff](double v) { return v > cutoff; }));
    }

    AssumptionReport check_fp_assumptions(const PhaseShift &phase, const HermitianMatrix &ris_cov)
    {
        const Index n = phase.size();
        if (ris_cov.dim() != n)
            throw std::invalid_argument("check_fp_assumptions: dimension mismatch");
        AssumptionReport r;
        if (n == 0)
            return r;
        const CMatrix product = theta_matrix(phase, ris_cov, ris_cov);
        r.liminf_proxy = std::max(checked_real(product.trace(), "check_fp_assumptions"), 0.0) / static_cast<double>(n);

        Eigen::JacobiSVD<CMatrix> svd(product);
        r.specnorm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;

        const double element_power = ris_cov.trace() / static_cast<double>(n);
        r.proxy_satisfied = element_power > 0.0 && r.liminf_proxy > 1e-6 * element_power * element_power;
        r.norm_satisfied = std::isfinite(r.specnorm);
        return r;
    }

} // namespace rismimo
