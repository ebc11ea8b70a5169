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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "rismimo/channel.hpp"
#include "rismimo/montecarlo.hpp"
#include "test_support.hpp"

using namespace rismimo;
using Catch::Approx;

TEST_CASE("PhaseShift range and unitarity")
{
    CHECK_THROWS_AS(PhaseShift({0.0, 3.2}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseShift({std::nan("")}), std::invalid_argument);
    CHECK_NOTHROW(PhaseShift({-pi, pi}));

    std::mt19937 gen(3);
    const PhaseShift phi = test::random_phase(gen, 12);
    const CMatrix p = phi.matrix();
    CHECK((p.adjoint() * p - CMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-15);

    const CVector x = test::random_complex(gen, 12, 1);
    CHECK((phi.apply_adjoint(phi.apply(x)) - x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS(phi.apply(CVector::Zero(3)));

    const PhaseShift r1 = PhaseShift::uniform_random(16, 5);
    const PhaseShift r2 = PhaseShift::uniform_random(16, 5);
    CHECK(r1.thetas() == r2.thetas());
    CHECK(r1.thetas() != PhaseShift::uniform_random(16, 6).thetas());
    for (double t : r1.thetas())
        CHECK(std::abs(t) <= pi);
}

TEST_CASE("aggregate: scalar and trivial cases")
{
    CVector u(1), g(1);
    u << 1.0;
    g << 1.0;
    CMatrix h(1, 1);
    h << 2.0;
    const CVector z = aggregate(u, h, PhaseShift({pi / 2.0}), g);
    CHECK(std::abs(z(0) - cdouble(1.0, 2.0)) < 1e-15);

    std::mt19937 gen(1);
    const CVector u4 = test::random_complex(gen, 4, 1);
    const CMatrix h48 = test::random_complex(gen, 4, 8);
    CHECK(aggregate(u4, h48, PhaseShift::zero(8), CVector::Zero(8)) == u4);
    CHECK_THROWS(aggregate(u4, h48, PhaseShift::zero(7), CVector::Zero(7)));
    CHECK_THROWS(aggregate(CVector::Zero(3), h48, PhaseShift::zero(8), CVector::Zero(8)));
}

TEST_CASE("aggregate: element-wise loop oracle")
{
    std::mt19937 gen(2);
    const CVector u = test::random_complex(gen, 4, 1);
    const CMatrix h = test::random_complex(gen, 4, 8);
    const CVector g = test::random_complex(gen, 8, 1);
    const PhaseShift phi = test::random_phase(gen, 8);
    const CVector z = aggregate(u, h, phi, g);
    for (Index m = 0; m < 4; ++m)
    {
        cdouble acc = u(m);
        for (Index n = 0; n < 8; ++n)
            acc += h(m, n) * std::polar(1.0, phi.thetas()[static_cast<std::size_t>(n)]) * g(n);
        CHECK(std::abs(z(m) - acc) < 1e-12);
    }
}

TEST_CASE("sampled realizations")
{
    std::mt19937 gen(4);
    const CovarianceBundle b = test::random_bundle(gen, 4, 6);
    const PhaseShift phi = test::random_phase(gen, 6);
    const ChannelSampler sampler(b, phi);

    SECTION("stored z equals aggregate() exactly")
    {
        RngStream rng(9, StreamPurpose::channel, 0);
        for (int i = 0; i < 20; ++i)
        {
            const ChannelRealization r = sampler.draw(rng);
            for (std::size_t k = 0; k < r.aggregated.size(); ++k)
                CHECK(r.aggregated[k] == aggregate(r.direct[k], r.bs_ris, r.phase, r.ris_user[k]));
        }
    }

    SECTION("fast path draws the same channel")
    {
        RngStream a(9, StreamPurpose::channel, 3);
        RngStream c(9, StreamPurpose::channel, 3);
        std::vector<CVector> z, cascaded;
        for (int i = 0; i < 5; ++i)
        {
            const ChannelRealization r = sampler.draw(a);
            sampler.draw_aggregated(c, z, cascaded);
            for (std::size_t k = 0; k < z.size(); ++k)
            {
                CHECK((z[k] - r.aggregated[k]).norm() <= 1e-12 * r.aggregated[k].norm());
                CHECK((cascaded[k] - r.bs_ris * phi.apply(r.ris_user[k])).norm() <= 1e-12 * (1.0 + cascaded[k].norm()));
            }
        }
    }

    SECTION("identical keys give identical realizations")
    {
        RngStream a(42, StreamPurpose::channel, 17);
        RngStream c(42, StreamPurpose::channel, 17);
        const ChannelRealization ra = sample_realization(b, phi, a);
        const ChannelRealization rc = sample_realization(b, phi, c);
        CHECK(ra.bs_ris == rc.bs_ris);
        CHECK(ra.aggregated[1] == rc.aggregated[1]);

        RngStream other(42, StreamPurpose::channel, 18);
        CHECK(sample_realization(b, phi, other).bs_ris != ra.bs_ris);
    }
}

TEST_CASE("sampled realizations: degenerate links")
{
    const CovarianceBundle zero = test::uncorrelated_bundle(3, 4, 0.0, 1.0, {0.0, 0.0}, {0.0, 0.0});
    RngStream rng(1, StreamPurpose::channel, 0);
    const ChannelRealization r = sample_realization(zero, PhaseShift::zero(4), rng);
    CHECK(r.bs_ris.isZero(0.0));
    CHECK(r.aggregated[0].isZero(0.0));

    // Dead RIS-user link: z_k = u_k.
    CovarianceBundle dead = test::uncorrelated_bundle(3, 4, 1.0, 1.0, {1.0, 2.0}, {0.0, 0.0});
    const ChannelRealization d = sample_realization(dead, PhaseShift::zero(4), rng);
    CHECK(d.aggregated[0] == d.direct[0]);
    CHECK(d.aggregated[1] == d.direct[1]);
}

TEST_CASE("sampled realizations: rejects inconsistent bundles")
{
    CovarianceBundle b = test::uncorrelated_bundle(3, 4, 1.0, 1.0, {1.0}, {1.0});
    CHECK_THROWS_AS(ChannelSampler(b, PhaseShift::zero(5)), ScenarioError);
    b.users[0].direct_cov = HermitianMatrix::scaled_identity(2, 1.0);
    CHECK_THROWS_AS(ChannelSampler(b, PhaseShift::zero(4)), ScenarioError);
}

TEST_CASE("direct channel sample covariance matches R_k")
{
    // Sample-covariance oracle on the direct link alone, accumulated here by hand.
    std::mt19937 gen(5);
    CovarianceBundle b;
    b.beta_s = 0.0;
    b.bs_cov = HermitianMatrix::zero(4);
    b.ris_side_cov = HermitianMatrix::zero(2);
    UserLink u;
    const CMatrix rk = test::random_psd(gen, 4, 3);
    u.direct_cov = HermitianMatrix(rk);
    u.beta_direct = rk.trace().real() / 4.0;
    u.ris_cov = HermitianMatrix::zero(2);
    b.users.push_back(u);

    const ChannelSampler sampler(b, PhaseShift::zero(2));
    CMatrix acc = CMatrix::Zero(4, 4);
    const int n = 200000;
    RngStream rng(6, StreamPurpose::channel, 0);
    for (int i = 0; i < n; ++i)
    {
        const CVector x = sampler.draw(rng).direct[0];
        acc += x * x.adjoint();
    }
    acc /= static_cast<double>(n);
    CHECK(max_entry_relative_error(acc, rk) <= 0.02);
}

TEST_CASE("RNG streams: unit-variance complex normals and key separation")
{
    RngStream rng(3, StreamPurpose::channel, 0);
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const cdouble x = rng.complex_normal();
        re2 += x.real() * x.real();
        im2 += x.imag() * x.imag();
        cross += x.real() * x.imag();
    }
    CHECK(re2 / n == Approx(0.5).margin(0.01));
    CHECK(im2 / n == Approx(0.5).margin(0.01));
    CHECK(std::abs(cross / n) < 0.01);

    RngStream a(3, StreamPurpose::channel, 0);
    RngStream b(3, StreamPurpose::noise, 0);
    CHECK(a.normal() != b.normal());
}

TEST_CASE("uplink signal")
{
    std::mt19937 gen(8);
    const CovarianceBundle b = test::random_bundle(gen, 4, 5);
    RngStream rng(2, StreamPurpose::channel, 0);
    const ChannelRealization r = sample_realization(b, PhaseShift::zero(5), rng);

    SECTION("noise-free single symbol is sqrt(p) z")
    {
        RngStream noise(2, StreamPurpose::noise, 0);
        const CVector y = uplink_signal(r, {2.0, 0.0, {1.0, 0.0}}, noise);
        CHECK((y - std::sqrt(2.0) * r.aggregated[0]).norm() < 1e-14);
    }

    SECTION("zero power leaves only noise")
    {
        RngStream noise(2, StreamPurpose::noise, 1);
        RngStream replay(2, StreamPurpose::noise, 1);
        const CVector y = uplink_signal(r, {0.0, 0.3, {1.0, 1.0}}, noise);
        const CVector w = std::sqrt(0.3) * replay.complex_normal_vector(4);
        CHECK((y - w).norm() < 1e-14);
    }

    SECTION("energy balance with fixed channels")
    {
        const double p = 1.7, s2 = 0.4;
        RngStream sym(2, StreamPurpose::symbols, 0);
        RngStream noise(2, StreamPurpose::noise, 2);
        const int n = 100000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += uplink_signal(r, {p, s2, qpsk_symbols(2, sym)}, noise).squaredNorm();
        const double expected = p * (r.aggregated[0].squaredNorm() + r.aggregated[1].squaredNorm()) + 4.0 * s2;
        CHECK(test::rel_diff(acc / n, expected) <= 0.01);
    }

    SECTION("invalid parameters")
    {
        RngStream noise(2, StreamPurpose::noise, 3);
        CHECK_THROWS(uplink_signal(r, {-1.0, 1.0, {1.0, 1.0}}, noise));
        CHECK_THROWS(uplink_signal(r, {1.0, -1.0, {1.0, 1.0}}, noise));
        CHECK_THROWS(uplink_signal(r, {1.0, 1.0, {1.0}}, noise));
    }
}

TEST_CASE("QPSK symbols have unit modulus")
{
    RngStream rng(1, StreamPurpose::symbols, 0);
    for (const cdouble &s : qpsk_symbols(64, rng))
        CHECK(std::abs(s) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("MRC projection")
{
    CVector z(2);
    z << cdouble(1.0, 2.0), 0.0; // |z|^2 = 5
    CHECK(std::abs(mrc_project(z, z) - cdouble(5.0, 0.0)) < 1e-15);

    CVector y(2);
    y << 0.0, cdouble(3.0, -1.0);
    CHECK(std::abs(mrc_project(y, z)) == 0.0);

    // Two users with orthogonal channels, no noise: MRC recovers s_1 exactly.
    std::mt19937 gen(12);
    const CMatrix q = test::random_complex(gen, 6, 2).householderQr().householderQ() * CMatrix::Identity(6, 2);
    ChannelRealization r;
    r.aggregated = {CVector(q.col(0) * 2.5), CVector(q.col(1) * 0.7)};
    const std::vector<cdouble> s{cdouble(1.0, -1.0) / std::sqrt(2.0), cdouble(-1.0, -1.0) / std::sqrt(2.0)};
    RngStream noise(1, StreamPurpose::noise, 0);
    const double p = 3.0;
    const CVector rx = uplink_signal(r, {p, 0.0, s}, noise);
    const cdouble s1 = mrc_project(rx, r.aggregated[0]) / (std::sqrt(p) * r.aggregated[0].squaredNorm());
    CHECK(std::abs(s1 - s[0]) < 1e-12);
}

TEST_CASE("interference ratio")
{
    CVector z(3);
    z << 1.0, cdouble(0.0, 2.0), -1.0;
    CHECK(interference_ratio(z, CVector::Zero(3), 1.0, 1.0) == 0.0);
    CHECK(interference_ratio(z, z, z.squaredNorm(), z.squaredNorm()) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(interference_ratio(z, z, 0.0, 1.0), ScenarioError);

    ChannelRealization r;
    r.aggregated = {z, z};
    CHECK_THROWS(interference_ratio(r, 0, 0, 1.0, 1.0));
    CHECK_THROWS(interference_ratio(r, 0, 2, 1.0, 1.0));
}

TEST_CASE("interference ratio: median shrinks when M doubles")
{
    auto median_ratio = [](Index m) {
        const CovarianceBundle b = test::uncorrelated_xi_bundle(m, m, {1.0, 1.0}, {0.2, 0.2});
        const ChannelSampler sampler(b, PhaseShift::zero(m));
        const double m2 = closed_second_moment(b, PhaseShift::zero(m), 0);
        std::vector<double> v;
        std::vector<CVector> z, c;
        RngStream rng(4, StreamPurpose::channel, static_cast<std::uint64_t>(m));
        for (int i = 0; i < 10000; ++i)
        {
            sampler.draw_aggregated(rng, z, c);
            v.push_back(interference_ratio(z[0], z[1], m2, m2));
        }
        std::nth_element(v.begin(), v.begin() + 5000, v.end());
        return v[5000];
    };
    const double r8 = median_ratio(8);
    const double r16 = median_ratio(16);
    const double r32 = median_ratio(32);
    CHECK(r16 < r8);
    CHECK(r32 < r16);
}
