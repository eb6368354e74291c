// SPDX-License-Identifier: Apache-2.0
//
// irssim - CSI acquisition simulator for IRS-assisted mmWave links
// Copyright (C) 2026 The irssim authors
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

#include <catch_amalgamated.hpp>

#include "irssim/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace irssim;
using Catch::Approx;

namespace
{
    constexpr double pi = std::numbers::pi;

    double wrap(double a)
    {
        return std::remainder(a, 2.0 * pi);
    }
} // namespace

TEST_CASE("subband_frequencies")
{
    RfParams rf;
    const auto f = subband_frequencies(rf);
    REQUIRE(f.size() == 128);
    // f_1 = F_c - K F_d / 2 + F_d / 2 = 28e9 - 230.4e6 + 1.8e6
    CHECK(f.front() == Approx(27.7714e9).epsilon(1e-12));
    double mean = 0;
    for (double v : f)
        mean += v;
    CHECK(mean / 128 == Approx(28e9).epsilon(1e-12));
    CHECK(f.back() - f.front() == Approx(127 * 3.6e6).epsilon(1e-9));
    for (std::size_t k = 1; k < f.size(); ++k)
        REQUIRE(f[k] > f[k - 1]);

    rf.subband_count = 1;
    const auto single = subband_frequencies(rf);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 28e9);
}

TEST_CASE("RfParams validation")
{
    RfParams rf;
    CHECK_NOTHROW(rf.validate());
    rf.noise_power = 0.0;
    CHECK_THROWS_WITH(rf.validate(), Catch::Matchers::ContainsSubstring("noise_power"));
    rf = {};
    rf.subband_width = 1e9; // 128 GHz of bandwidth around 28 GHz
    CHECK_THROWS_AS(rf.validate(), std::invalid_argument);
    rf = {};
    rf.pathloss_exponent = -1;
    CHECK_THROWS_AS(rf.validate(), std::invalid_argument);
}

TEST_CASE("path_loss")
{
    CHECK(path_loss(2, 2, 1) == 2.0);
    CHECK(path_loss(2, 2, 5) == Approx(0.08));
    CHECK(path_loss(2, 0, 7) == 2.0);
    CHECK(path_loss(2, 2, 3) < path_loss(2, 2, 2.9));
    CHECK_THROWS_AS(path_loss(2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(2, 2, -1), std::invalid_argument);
}

TEST_CASE("los_coefficient")
{
    const RfParams rf;
    const double f = 28e9;

    // Integer number of cycles: positive real
    const double d_int = 700 * speed_of_light / f;
    const auto c_int = los_coefficient(rf, f, d_int);
    CHECK(c_int.real() == Approx(path_loss(2, 2, d_int)).epsilon(1e-9));
    CHECK(std::abs(c_int.imag()) < 1e-9 * std::abs(c_int));

    // Quarter cycle: -j * rho
    const double d_q = 0.25 * speed_of_light / f;
    const auto c_q = los_coefficient(rf, f, d_q);
    CHECK(std::abs(c_q.real()) < 1e-9 * std::abs(c_q));
    CHECK(c_q.imag() == Approx(-path_loss(2, 2, d_q)));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(0.1, 40.0), uf(27e9, 29e9);
    for (int i = 0; i < 500; ++i)
    {
        const double d = ud(rng), fr = uf(rng);
        const auto c = los_coefficient(rf, fr, d);
        REQUIRE(std::abs(c) == Approx(path_loss(2, 2, d)).epsilon(1e-12));
        REQUIRE(std::abs(wrap(std::arg(c) + 2 * pi * fr * d / speed_of_light)) < 1e-6);
    }
    CHECK_THROWS_AS(los_coefficient(rf, f, 0.0), std::invalid_argument);
}

TEST_CASE("ap_irs_channel and irs_ue_channel")
{
    const RfParams rf;
    const IrsLayout one{1, 1, 0.005, 0.005};
    const auto h1 = ap_irs_channel(one, {3, 4, 0}, rf, rf.center_frequency);
    REQUIRE(h1.size() == 1);
    CHECK(std::abs(h1[0]) == Approx(2.0 / 25.0));

    const IrsLayout layout{8, 8, 0.005, 0.005};
    const Point3 ap{5, -5, 0};
    const auto h = ap_irs_channel(layout, ap, rf, rf.center_frequency);
    const auto pos = unit_positions(layout);
    for (std::size_t n = 0; n < h.size(); ++n)
        REQUIRE(std::abs(h[n]) == Approx(path_loss(2, 2, distance(ap, pos[n]))).epsilon(1e-12));
    // Magnitude ordering follows distance ordering
    for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = 0; b < h.size(); ++b)
            if (distance(ap, pos[a]) < distance(ap, pos[b]))
                REQUIRE(std::abs(h[a]) > std::abs(h[b]));

    // Units 1 and 2 are equidistant from a point level with their midpoint
    const IrsLayout two{2, 1, 0.005, 0.005};
    const auto hs = ap_irs_channel(two, {4, 0, 0.0025}, rf, rf.center_frequency);
    CHECK(std::abs(hs[0]) == Approx(std::abs(hs[1])));

    const Point3 ue{5, 3, 0};
    const auto g = irs_ue_channel(layout, ue, rf, 27.9e9);
    const auto g_as_h = ap_irs_channel(layout, ue, rf, 27.9e9);
    REQUIRE(g.size() == g_as_h.size());
    for (std::size_t n = 0; n < g.size(); ++n)
        REQUIRE(g[n] == g_as_h[n]);

    const double d = 6.0;
    const auto g_axis = irs_ue_channel(layout, {d, 0, 0}, rf, rf.center_frequency);
    CHECK(std::abs(wrap(std::arg(g_axis[0]) + 2 * pi * rf.center_frequency * d / speed_of_light)) < 1e-6);

    CHECK_THROWS_AS(ap_irs_channel(layout, {0, 0, 0}, rf, rf.center_frequency), std::invalid_argument);
    CHECK_THROWS_AS(irs_ue_channel(layout, {-1, 0, 0}, rf, rf.center_frequency), std::invalid_argument);
}

TEST_CASE("effective_rus_channel")
{
    const RfParams rf;
    const IrsLayout layout;
    const Point3 ap{5, -5, 0}, ue{5, 3, 0};
    const auto freqs = subband_frequencies(rf);

    SECTION("single member equals g h")
    {
        const auto rus = make_rus(layout, 10, 20, 1, 1);
        const ComplexChannel w{cd(1, 0)};
        const auto hb = effective_rus_channel(layout, rus, w, ap, ue, rf);
        const Point3 p = unit_position(layout, rus.member_indices[0]);
        for (std::size_t k = 0; k < freqs.size(); ++k)
        {
            const cd expected = los_coefficient(rf, freqs[k], distance(ap, p)) * los_coefficient(rf, freqs[k], distance(p, ue));
            REQUIRE(std::abs(hb[k] - expected) < 1e-10 * std::abs(expected));
        }

        // Constant magnitude and a constant phase step of -2 pi F_d (d_ap + d_ue) / c
        const double step = -2 * pi * rf.subband_width * (distance(ap, p) + distance(p, ue)) / speed_of_light;
        for (std::size_t k = 1; k < hb.size(); ++k)
        {
            REQUIRE(std::abs(hb[k]) == Approx(std::abs(hb[0])).epsilon(1e-12));
            REQUIRE(std::abs(wrap(std::arg(hb[k] / hb[k - 1]) - step)) < 1e-9);
        }
    }

    SECTION("shut-down RUS")
    {
        const auto rus = make_rus(layout, 0, 0, 4, 4);
        const ComplexChannel zeros(16, cd(0, 0));
        for (const auto &v : effective_rus_channel(layout, rus, zeros, ap, ue, rf))
            REQUIRE(v == cd(0, 0));
    }

    SECTION("phase-conjugate codeword adds coherently at f_1")
    {
        const auto rus = make_rus(layout, 0, 0, 4, 4);
        ComplexChannel w(16);
        double coherent = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
        {
            const Point3 p = unit_position(layout, rus.member_indices[i]);
            const cd gh = los_coefficient(rf, freqs[0], distance(ap, p)) * los_coefficient(rf, freqs[0], distance(p, ue));
            w[i] = std::conj(gh) / std::abs(gh);
            coherent += std::abs(gh);
        }
        const auto hb = effective_rus_channel(layout, rus, w, ap, ue, rf);
        CHECK(std::abs(hb[0]) == Approx(coherent).epsilon(1e-10));
    }

    SECTION("linear in the codeword")
    {
        const auto rus = make_rus(layout, 30, 62, 4, 4);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ph(0, 2 * pi), mag(0, 0.5);
        ComplexChannel w1(16), w2(16), w12(16);
        for (std::size_t i = 0; i < 16; ++i)
        {
            w1[i] = std::polar(mag(rng), ph(rng));
            w2[i] = std::polar(mag(rng), ph(rng));
            w12[i] = w1[i] + w2[i];
        }
        const auto a = effective_rus_channel(layout, rus, w1, ap, ue, rf);
        const auto b = effective_rus_channel(layout, rus, w2, ap, ue, rf);
        const auto ab = effective_rus_channel(layout, rus, w12, ap, ue, rf);
        for (std::size_t k = 0; k < ab.size(); ++k)
            REQUIRE(std::abs(ab[k] - a[k] - b[k]) < 1e-12 * (std::abs(a[k]) + std::abs(b[k]) + 1e-30));
    }

    SECTION("codeword validation")
    {
        const auto rus = make_rus(layout, 0, 0, 4, 4);
        CHECK_THROWS_AS(effective_rus_channel(layout, rus, ComplexChannel(15, cd(1, 0)), ap, ue, rf), std::invalid_argument);
        CHECK_THROWS_AS(effective_rus_channel(layout, rus, ComplexChannel(16, cd(2, 0)), ap, ue, rf), std::invalid_argument);
    }
}

TEST_CASE("corrupt_estimate")
{
    ComplexChannel h(128);
    for (std::size_t k = 0; k < h.size(); ++k)
        h[k] = std::polar(1e-3 * (1.0 + 0.1 * double(k % 3)), 0.1 * double(k));
    double p = 0;
    for (auto v : h)
        p += std::norm(v);
    const double scale = std::sqrt(128.0 / p);

    SECTION("sigma_e = 0 returns the normalized channel for any seed")
    {
        RngStream a(1, {0}), b(999, {5});
        const auto ea = corrupt_estimate(h, 0.0, a);
        const auto eb = corrupt_estimate(h, 0.0, b);
        for (std::size_t k = 0; k < h.size(); ++k)
        {
            REQUIRE(ea[k] == eb[k]);
            REQUIRE(std::abs(ea[k] - scale * h[k]) < 1e-12);
        }
    }

    SECTION("sigma_e = 1 is pure noise")
    {
        ComplexChannel other(128, cd(5, -2));
        RngStream a(4, {1}), b(4, {1});
        const auto ea = corrupt_estimate(h, 1.0, a);
        const auto eb = corrupt_estimate(other, 1.0, b);
        for (std::size_t k = 0; k < h.size(); ++k)
            REQUIRE(ea[k] == eb[k]);
    }

    SECTION("same seed reproduces bit for bit")
    {
        RngStream a(42, {3, 7}), b(42, {3, 7}), c(42, {3, 8});
        const auto ea = corrupt_estimate(h, 0.3, a);
        const auto eb = corrupt_estimate(h, 0.3, b);
        const auto ec = corrupt_estimate(h, 0.3, c);
        CHECK(ea == eb);
        CHECK(ea != ec);
    }

    SECTION("unit mean per-element power (Monte Carlo)")
    {
        double acc = 0.0;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i)
        {
            RngStream rng(2024, {std::uint64_t(i)});
            const auto e = corrupt_estimate(h, 0.1, rng);
            double s = 0;
            for (auto v : e)
                s += std::norm(v);
            acc += s / 128.0;
        }
        CHECK(acc / draws == Approx(1.0).epsilon(0.03));
    }

    SECTION("out-of-range sigma_e")
    {
        RngStream rng(1, {});
        CHECK_THROWS_AS(corrupt_estimate(h, -0.1, rng), std::invalid_argument);
        CHECK_THROWS_AS(corrupt_estimate(h, 1.5, rng), std::invalid_argument);
    }
}

TEST_CASE("RngStream - complex normal moments")
{
    RngStream rng(5, {1, 2, 3});
    const int n = 200000;
    double sr = 0, si = 0, p = 0, cross = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = rng.complex_normal(2.0);
        sr += z.real();
        si += z.imag();
        p += std::norm(z);
        cross += z.real() * z.imag();
    }
    CHECK(std::abs(sr / n) < 0.01);
    CHECK(std::abs(si / n) < 0.01);
    CHECK(p / n == Approx(2.0).epsilon(0.01));
    CHECK(std::abs(cross / n) < 0.01);
}
