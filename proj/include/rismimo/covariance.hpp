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

#include "rismimo/common.hpp"

namespace rismimo
{
    // Entries of A and A^H may differ by at most this much (scaled by max(1, max|a_mn|)).
    inline constexpr double hermitian_tolerance = 1e-12;

    // Smallest eigenvalue accepted by the HermitianMatrix invariant, relative to the largest.
    inline constexpr double psd_slack = 1e-10;

    // Eigenvalues in [-sqrt_clamp * delta_1, 0) are zeroed by hermitian_sqrt; anything lower is an error.
    inline constexpr double sqrt_clamp = 1e-8;

    /// Dense complex square matrix that is Hermitian and positive semi-definite up to rounding.
    ///
    /// Every covariance in the library (BS array, RIS plane, aggregated channel) is carried in
    /// this type. Construction validates both invariants and throws std::invalid_argument
    /// (asymmetry) or NotPsdError (negative spectrum) otherwise.
    class HermitianMatrix
    {
    public:
        explicit HermitianMatrix(CMatrix entries);

        static HermitianMatrix zero(Index dim);
        static HermitianMatrix scaled_identity(Index dim, double scale);

        Index dim() const { return m_.rows(); }
        const CMatrix &matrix() const { return m_; }
        cdouble operator()(Index row, Index col) const { return m_(row, col); }

        double trace() const { return m_.trace().real(); }
        HermitianMatrix scaled(double factor) const;

    private:
        struct Unchecked {};
        HermitianMatrix(CMatrix entries, Unchecked) : m_(std::move(entries)) {}

        CMatrix m_;
    };

    // Largest |A - A^H| entry.
    double hermitian_residual(const CMatrix &a);

    /// Parameters of the Gaussian local scattering model for a uniform linear array
    /// with half-wavelength spacing.
    struct LocalScatteringParams
    {
        double beta = 1.0;                // large-scale gain (linear)
        std::vector<double> nominal_aoas; // one nominal AoA per cluster [rad]
        double angular_std = 0.0;         // [rad]
        Index antennas = 1;

        Index clusters() const { return static_cast<Index>(nominal_aoas.size()); }
    };

    /// Planar RIS of n_h x n_v elements, each d_h wide and d_v tall.
    struct RisGeometry
    {
        Index n_h = 1;
        Index n_v = 1;
        double d_h = 0.025;
        double d_v = 0.025;
        double wavelength = 0.1;

        Index elements() const { return n_h * n_v; }
        double element_area() const { return d_h * d_v; }

        // Position of element x (0-based), row-major along the horizontal axis.
        Eigen::Vector3d element_position(Index x) const;

        void validate() const;
    };

    // Normalized sinc, sin(pi x)/(pi x) with sinc(0) = 1.
    double normalized_sinc(double x);

    /// [R]_mn = beta/S * sum_s exp(j pi (m-n) sin psi_s) exp(-sigma^2/2 (pi (m-n) cos psi_s)^2)
    ///
    /// Rejects S = 0, beta < 0, sigma < 0 and |psi_s| > pi.
    HermitianMatrix local_scattering_covariance(const LocalScatteringParams &params);

    /// [R]_mn = d_h d_v sinc(2 |v_m - v_n| / lambda), isotropic scattering in front of the surface.
    HermitianMatrix ris_sinc_correlation(const RisGeometry &geometry);

    // beta * I_M.
    HermitianMatrix uncorrelated_bs_covariance(double beta, Index antennas);

    // d_h d_v * I_N.
    HermitianMatrix uncorrelated_ris_correlation(const RisGeometry &geometry);

    /// Hermitian square root B = V diag(sqrt(delta)) V^H, so that B B^H = A.
    ///
    /// Small negative eigenvalues (above -sqrt_clamp * delta_1) are treated as zero; more
    /// negative ones mean the input is not a covariance and raise NotPsdError.
    CMatrix hermitian_sqrt(const CMatrix &a);
    CMatrix hermitian_sqrt(const HermitianMatrix &a);

    // Eigenvalues in descending order.
    std::vector<double> sorted_eigenvalues(const HermitianMatrix &a);
    std::vector<double> sorted_eigenvalues(const CMatrix &a);

} // namespace rismimo
