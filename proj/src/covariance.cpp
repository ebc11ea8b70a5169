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

#include "rismimo/covariance.hpp"

#include <algorithm>
#include <cmath>

namespace rismimo
{
    namespace
    {
        Eigen::VectorXd ascending_eigenvalues(const CMatrix &a)
        {
            if (a.rows() == 0)
                return {};
            Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("Hermitian eigendecomposition did not converge");
            return solver.eigenvalues();
        }
    } // namespace

    double hermitian_residual(const CMatrix &a)
    {
        if (a.size() == 0)
            return 0.0;
        return (a - a.adjoint()).cwiseAbs().maxCoeff();
    }

    HermitianMatrix::HermitianMatrix(CMatrix entries) : m_(std::move(entries))
    {
        if (m_.rows() != m_.cols())
            throw std::invalid_argument("HermitianMatrix: matrix must be square");
        if (m_.rows() == 0)
            return;
        if (!m_.allFinite())
            throw std::invalid_argument("HermitianMatrix: non-finite entry");

        const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
        if (hermitian_residual(m_) > hermitian_tolerance * scale)
            throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian");

        // Remove sub-tolerance asymmetry so downstream products stay exactly Hermitian.
        m_ = (0.5 * (m_ + m_.adjoint())).eval();

        const Eigen::VectorXd eig = ascending_eigenvalues(m_);
        const double top = eig(eig.size() - 1);
        if (eig(0) < -psd_slack * std::max(top, 0.0) && eig(0) < 0.0)
            throw NotPsdError("HermitianMatrix: matrix is not positive semi-definite");
    }

    HermitianMatrix HermitianMatrix::zero(Index dim)
    {
        return HermitianMatrix(CMatrix::Zero(dim, dim), Unchecked{});
    }

    HermitianMatrix HermitianMatrix::scaled_identity(Index dim, double scale)
    {
        if (scale < 0.0)
            throw std::invalid_argument("HermitianMatrix::scaled_identity: negative scale");
        CMatrix m = CMatrix::Identity(dim, dim) * scale;
        return HermitianMatrix(std::move(m), Unchecked{});
    }

    HermitianMatrix HermitianMatrix::scaled(double factor) const
    {
        if (factor < 0.0)
            throw std::invalid_argument("HermitianMatrix::scaled: negative factor");
        return HermitianMatrix(m_ * factor, Unchecked{});
    }

    Eigen::Vector3d RisGeometry::element_position(Index x) const
    {
        return {0.0, static_cast<double>(x % n_h) * d_h, static_cast<double>(x / n_h) * d_v};
    }

    void RisGeometry::validate() const
    {
        if (n_h < 1 || n_v < 1)
            throw std::invalid_argument("RisGeometry: element counts must be positive");
        if (!(d_h > 0.0) || !(d_v > 0.0))
            throw std::invalid_argument("RisGeometry: element size must be positive");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("RisGeometry: wavelength must be positive");
    }

    double normalized_sinc(double x)
    {
        if (x == 0.0)
            return 1.0;
        const double px = pi * x;
        return std::sin(px) / px;
    }

    HermitianMatrix local_scattering_covariance(const LocalScatteringParams &params)
    {
        if (params.clusters() < 1)
            throw std::invalid_argument("local_scattering_covariance: at least one cluster is required");
        if (params.beta < 0.0 || !std::isfinite(params.beta))
            throw std::invalid_argument("local_scattering_covariance: beta must be non-negative");
        if (params.angular_std < 0.0 || !std::isfinite(params.angular_std))
            throw std::invalid_argument("local_scattering_covariance: angular spread must be non-negative");
        if (params.antennas < 1)
            throw std::invalid_argument("local_scattering_covariance: antenna count must be positive");
        for (double psi : params.nominal_aoas)
            if (!(std::abs(psi) <= pi))
                throw std::invalid_argument("local_scattering_covariance: nominal AoA outside [-pi, pi]");

        const Index m_count = params.antennas;
        const double s_count = static_cast<double>(params.clusters());
        const double half_var = 0.5 * params.angular_std * params.angular_std;

        // The matrix is Toeplitz: build the first column and mirror it.
        CVector column(m_count);
        for (Index d = 0; d < m_count; ++d)
        {
            cdouble acc{0.0, 0.0};
            for (double psi : params.nominal_aoas)
            {
                const double phase = pi * static_cast<double>(d) * std::sin(psi);
                const double spread = pi * static_cast<double>(d) * std::cos(psi);
                acc += std::polar(std::exp(-half_var * spread * spread), phase);
            }
            column(d) = acc * (params.beta / s_count);
        }
        column(0) = cdouble(params.beta, 0.0);

        CMatrix r(m_count, m_count);
        for (Index m = 0; m < m_count; ++m)
            for (Index n = 0; n < m_count; ++n)
                r(m, n) = m >= n ? column(m - n) : std::conj(column(n - m));
        return HermitianMatrix(std::move(r));
    }

    HermitianMatrix ris_sinc_correlation(const RisGeometry &geometry)
    {
        geometry.validate();
        const Index n = geometry.elements();
        const double area = geometry.element_area();

        CMatrix r(n, n);
        for (Index a = 0; a < n; ++a)
        {
            r(a, a) = area;
            const Eigen::Vector3d va = geometry.element_position(a);
            for (Index b = a + 1; b < n; ++b)
            {
                const double dist = (va - geometry.element_position(b)).norm();
                const double value = area * normalized_sinc(2.0 * dist / geometry.wavelength);
                r(a, b) = value;
                r(b, a) = value;
            }
        }
        return HermitianMatrix(std::move(r));
    }

    HermitianMatrix uncorrelated_bs_covariance(double beta, Index antennas)
    {
        if (beta < 0.0)
            throw std::invalid_argument("uncorrelated_bs_covariance: beta must be non-negative");
        if (antennas < 1)
            throw std::invalid_argument("uncorrelated_bs_covariance: antenna count must be positive");
        return HermitianMatrix::scaled_identity(antennas, beta);
    }

    HermitianMatrix uncorrelated_ris_correlation(const RisGeometry &geometry)
    {
        geometry.validate();
        return HermitianMatrix::scaled_identity(geometry.elements(), geometry.element_area());
    }

    CMatrix hermitian_sqrt(const CMatrix &a)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("hermitian_sqrt: matrix must be square");
        if (a.rows() == 0)
            return a;

        const CMatrix sym = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("hermitian_sqrt: eigendecomposition did not converge");

        Eigen::VectorXd eig = solver.eigenvalues();
        const double top = std::max(eig.maxCoeff(), 0.0);
        for (Index i = 0; i < eig.size(); ++i)
        {
            if (eig(i) >= 0.0)
                continue;
            if (eig(i) < -sqrt_clamp * top || top == 0.0)
                throw NotPsdError("hermitian_sqrt: matrix has a significantly negative eigenvalue");
            eig(i) = 0.0;
        }

        const CMatrix &v = solver.eigenvectors();
        return v * eig.cwiseSqrt().asDiagonal() * v.adjoint();
    }

    CMatrix hermitian_sqrt(const HermitianMatrix &a) { return hermitian_sqrt(a.matrix()); }

    std::vector<double> sorted_eigenvalues(const CMatrix &a)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("sorted_eigenvalues: matrix must be square");
        const Eigen::VectorXd eig = ascending_eigenvalues(0.5 * (a + a.adjoint()));
        std::vector<double> out(eig.data(), eig.data() + eig.size());
        std::reverse(out.begin(), out.end());
        return out;
    }

    std::vector<double> sorted_eigenvalues(const HermitianMatrix &a) { return sorted_eigenvalues(a.matrix()); }

} // namespace rismimo
