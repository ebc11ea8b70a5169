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
#include <random>

#include "rismimo/common.hpp"

namespace rismimo
{
    // Independent random streams are keyed by what they are used for.
    enum class StreamPurpose : std::uint64_t
    {
        nominal_aoa = 1,
        phase_shift = 2,
        channel = 3,
        noise = 4,
        symbols = 5,
    };

    /// Deterministic random stream derived from (master seed, purpose, stream index).
    ///
    /// The key is hashed with SplitMix64 into the seed sequence of a Mersenne Twister, so the
    /// stream for a given key never depends on how many other streams exist or which thread
    /// consumes it.
    class RngStream
    {
    public:
        RngStream(std::uint64_t master_seed, StreamPurpose purpose, std::uint64_t index);

        double uniform(double lo, double hi);
        double normal();

        // CN(0, 1): independent real and imaginary parts with variance 1/2 each.
        cdouble complex_normal();

        CVector complex_normal_vector(Index n);
        CMatrix complex_normal_matrix(Index rows, Index cols);

    private:
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

    // SplitMix64 finalizer.
    std::uint64_t mix64(std::uint64_t x);

} // namespace rismimo
