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

#include "rismimo/rng.hpp"

#include <array>
#include <cmath>

namespace rismimo
{
    std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    namespace
    {
        std::mt19937_64 keyed_engine(std::uint64_t master_seed, StreamPurpose purpose, std::uint64_t index)
        {
            const std::uint64_t a = mix64(master_seed);
            const std::uint64_t b = mix64(a ^ static_cast<std::uint64_t>(purpose));
            const std::uint64_t c = mix64(b ^ mix64(index));
            const std::uint64_t d = mix64(c);
            std::array<std::uint32_t, 8> words{};
            const std::array<std::uint64_t, 4> keys{a, b, c, d};
            for (std::size_t i = 0; i < keys.size(); ++i)
            {
                words[2 * i] = static_cast<std::uint32_t>(keys[i]);
                words[2 * i + 1] = static_cast<std::uint32_t>(keys[i] >> 32);
            }
            std::seed_seq seq(words.begin(), words.end());
            return std::mt19937_64(seq);
        }
    } // namespace

    RngStream::RngStream(std::uint64_t master_seed, StreamPurpose purpose, std::uint64_t index)
        : engine_(keyed_engine(master_seed, purpose, index))
    {
    }

    double RngStream::uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double RngStream::normal() { return normal_(engine_); }

    cdouble RngStream::complex_normal()
    {
        static const double scale = 1.0 / std::sqrt(2.0);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {re * scale, im * scale};
    }

    CVector RngStream::complex_normal_vector(Index n)
    {
        CVector v(n);
        for (Index i = 0; i < n; ++i)
            v(i) = complex_normal();
        return v;
    }

    CMatrix RngStream::complex_normal_matrix(Index rows, Index cols)
    {
        CMatrix m(rows, cols);
        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r)
                m(r, c) = complex_normal();
        return m;
    }

} // namespace rismimo
