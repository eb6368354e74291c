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

#include "irssim/delay_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace irssim;
using Catch::Approx;

namespace
{
    constexpr double pi = std::numbers::pi;

    ComplexChannel single_path(std::span<const double> f, double delay, double gain = 1.0, double phase = 0.0)
    {
        ComplexChannel h(f.size());
        for (std::size_t k = 0; k < f.size(); ++k)
            h[k] = std::polar(gain, phase - 2 * pi * f[k] * delay);
        return h;
    }

    // Brute force: fine scan of the whole range, then a 1 ps scan around the best point.
    double dense_grid_peak(std::span<const cd> h, std::span<const double> f, double t_min, double t_max)
    {
        auto power = [&](double t)
        {
            cd acc(0, 0);
            for (std::size_t k = 0; k < f.size(); ++k)
                acc += h[k] * std::exp(cd(0, 2 * pi * f[k] * t));
            return std::norm(acc);
        };
        double best_t = t_min, best = -1;
        for (double t = t_min; t <= t_max; t += 0.1e-9)
            if (const double p = power(t); p > best)
            {
                best = p;
                best_t = t;
            }
        const double lo = std::max(t_min, best_t - 0.2e-9), hi = std::min(t_max, best_t + 0.2e-9);
        for (double t = lo; t <= hi; t += 1e-12)
            if (const double p = power(t); p > best)
            {
                best = p;
                best_t = t;
            }
        return best_t;
    }
} // namespace

TEST_CASE("steering_vector")
{
    const auto f = subband_frequencies(RfParams{});
    for (const auto &v : steering_vector(f, 0.0))
        CHECK(v == cd(1, 0));

    const auto b = steering_vector(f, 37.3e-9);
    double n2 = 0;
    for (const auto &v : b)
        n2 += std::norm(v);
    CHECK(n2 == Approx(128.0));

    const double single[] = {1e9};
    const auto half = steering_vector(single, 0.5e-9);
    CHECK(std::abs(half[0] - cd(-1, 0)) < 1e-12);
}

TEST_CASE("bartlett_power")
{
    const auto f = subband_frequencies(RfParams{});
    const double t0 = 61.7e-9;
    const auto b = steering_vector(f, t0);
    ComplexChannel matched(b.size());
    for (std::size_t k = 0; k < b.size(); ++k)
        matched[k] = std::conj(b[k]) / 128.0;
    CHECK(bartlett_power(matched, f, t0) == Approx(1.0).epsilon(1e-12));
    for (double t : {0.0, 30e-9, 61e-9, 62.5e-9, 200e-9})
        CHECK(bartlett_power(matched, f, t) <= 1.0 + 1e-12);

    const ComplexChannel zero(128, cd(0, 0));
    CHECK(bartlett_power(zero, f, 10e-9) == 0.0);

    CHECK_THROWS_AS(bartlett_power(ComplexChannel(3), f, 0.0), std::invalid_argument);
}

TEST_CASE("DelayGrid defaults and validation")
{
    const RfParams rf;
    const auto g = DelayGrid::defaults_for(rf);
    CHECK(g.t_min == 0.0);
    CHECK(g.t_max == Approx(0.95 / 3.6e6));
    CHECK(g.coarse_step == Approx(1.0 / (4 * 128 * 3.6e6)));
    CHECK(g.refinement_iterations == 2);
    CHECK_NOTHROW(g.validate(rf));

    auto bad = g;
    bad.t_max = 1.1 / rf.subband_width;
    CHECK_THROWS_AS(bad.validate(rf), std::invalid_argument);
    bad = g;
    bad.coarse_step = 1.0 / (rf.bandwidth());
    CHECK_THROWS_AS(bad.validate(rf), std::invalid_argument);
}

TEST_CASE("estimate_delay - noiseless single path")
{
    const RfParams rf;
    const auto f = subband_frequencies(rf);
    const auto grid = DelayGrid::defaults_for(rf);

    const auto h = single_path(f, 100e-9, 3e-4, 1.1);
    CHECK(std::abs(estimate_delay(h, f, grid) - 100e-9) < 0.05e-9);

    // Oracle check on a few off-grid delays
    for (double t0 : {12.345e-9, 77.7e-9, 150.0001e-9, 230.9e-9})
    {
        const auto hh = single_path(f, t0);
        const double oracle = dense_grid_peak(hh, f, grid.t_min, grid.t_max);
        CHECK(std::abs(oracle - t0) < 1.5e-12);
        CHECK(std::abs(estimate_delay(hh, f, grid) - oracle) < 0.05e-9);
    }
}

TEST_CASE("estimate_delay - refinement error shrinks with the coarse step")
{
    const RfParams rf;
    const auto f = subband_frequencies(rf);
    auto grid = DelayGrid::defaults_for(rf);
    grid.refinement_iterations = 0;

    const double t0 = 91.2345e-9;
    const auto h = single_path(f, t0);
    double prev = 1.0;
    for (int i = 0; i < 4; ++i)
    {
        const double err = std::abs(estimate_delay(h, f, grid) - t0);
        INFO("step " << grid.coarse_step << " error " << err);
        CHECK(err <= 0.5 * grid.coarse_step + 1e-15);
        CHECK(err <= prev + 1e-15);
        prev = err;
        grid.coarse_step *= 0.5;
    }
}

TEST_CASE("estimate_delay - invariant to complex scaling")
{
    const RfParams rf;
    const auto f = subband_frequencies(rf);
    const auto grid = DelayGrid::defaults_for(rf);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n(0, 1);

    ComplexChannel h = single_path(f, 45e-9);
    for (auto &v : h)
        v += 0.3 * cd(n(rng), n(rng));
    const double ref = estimate_delay(h, f, grid);
    for (int i = 0; i < 10; ++i)
    {
        const cd c = std::polar(std::exp(n(rng)), n(rng));
        ComplexChannel scaled(h.size());
        for (std::size_t k = 0; k < h.size(); ++k)
            scaled[k] = c * h[k];
        CHECK(bartlett_power(scaled, f, ref) == Approx(std::norm(c) * bartlett_power(h, f, ref)).epsilon(1e-10));
        CHECK(estimate_delay(scaled, f, grid) == Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("estimate_delay - spectrum repeats every 1/F_d")
{
    const RfParams rf;
    const auto f = subband_frequencies(rf);
    const double period = 1.0 / rf.subband_width;
    const double t0 = 40e-9;
    // Path at t0 + 1/F_d; the centered grid adds a common phase only.
    const auto a = single_path(f, t0);
    const auto b = single_path(f, t0 + period);
    for (double t : {0.0, 20e-9, 40e-9, 41e-9, 100e-9})
        CHECK(bartlett_power(a, f, t) == Approx(bartlett_power(b, f, t)).epsilon(1e-8));
    // The search range ends before the first alias, so the estimate stays unambiguous.
    CHECK(std::abs(estimate_delay(b, f, DelayGrid::defaults_for(rf)) - t0) < 0.05e-9);
}

TEST_CASE("estimate_delay - Monte Carlo at sigma_e = 0.1")
{
    const RfParams rf;
    const auto f = subband_frequencies(rf);
    const auto grid = DelayGrid::defaults_for(rf);
    const double t0 = 43.1e-9;
    const auto h = single_path(f, t0, 2e-3);

    double sq = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i)
    {
        RngStream rng(77, {std::uint64_t(i)});
        const auto noisy = corrupt_estimate(h, 0.1, rng);
        const double e = estimate_delay(noisy, f, grid) - t0;
        sq += e * e;
    }
    const double rms = std::sqrt(sq / trials);
    INFO("RMS delay error " << rms * 1e12 << " ps");
    CHECK(rms < grid.coarse_step);
    // Regression baseline (about 7 ps at this SNR); keep well under one bin
    CHECK(rms < 20e-12);
}

TEST_CASE("estimate_delay - multi-element RUS lands between member delays")
{
    const RfParams rf;
    const IrsLayout layout;
    const auto f = subband_frequencies(rf);
    const auto grid = DelayGrid::defaults_for(rf);
    const Point3 ap{5, -5, 0};
    const auto rus = make_rus(layout, 0, 0, 4, 4);
    const ComplexChannel ones(16, cd(1, 0));

    for (const Point3 ue : {Point3{5, 3, 0}, Point3{2, 8, 1}, Point3{15, 0.3, 0.2}})
    {
        const auto hb = effective_rus_channel(layout, rus, ones, ap, ue, rf);
        double lo = 1, hi = 0;
        for (auto n : rus.member_indices)
        {
            const Point3 p = unit_position(layout, n);
            const double t = (distance(ap, p) + distance(p, ue)) / speed_of_light;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        const double est = estimate_delay(hb, f, grid);
        CHECK(est >= lo - 1e-13);
        CHECK(est <= hi + 1e-13);
    }
}

TEST_CASE("delay_to_rus_ue_distance")
{
    const double t = 30.0 / speed_of_light;
    REQUIRE(delay_to_rus_ue_distance(t, 10.0).has_value());
    CHECK(*delay_to_rus_ue_distance(t, 10.0) == Approx(20.0));
    CHECK_FALSE(delay_to_rus_ue_distance(10.0 / speed_of_light, 10.0 + 1e-9).has_value());
    CHECK_FALSE(delay_to_rus_ue_distance(5.0 / speed_of_light, 10.0).has_value());
}
