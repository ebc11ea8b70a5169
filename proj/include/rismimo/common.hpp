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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rismimo
{
    using cdouble = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using Index = Eigen::Index;

    inline constexpr double pi = std::numbers::pi;

    // Raised when a scenario is physically or numerically inconsistent
    // (degenerate users, zero distances, dimension mismatches between links).
    class ScenarioError : public std::invalid_argument
    {
    public:
        explicit ScenarioError(const std::string &what) : std::invalid_argument(what) {}
    };

    // Raised when a matrix that must be positive semi-definite is not, beyond rounding slack.
    class NotPsdError : public std::domain_error
    {
    public:
        explicit NotPsdError(const std::string &what) : std::domain_error(what) {}
    };

    inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline double rad_to_deg(double rad) { return rad * 180.0 / pi; }

} // namespace rismimo
