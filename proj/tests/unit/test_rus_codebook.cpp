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

#include "irssim/rus_codebook.hpp"

#include <cmath>
#include <numbers>

using namespace irssim;
using Catch::Approx;

TEST_CASE("dft_codeword")
{
    const auto w0 = dft_codeword(4, 4, 1, 1, 0, 0);
    REQUIRE(w0.size() == 16);
    for (const auto &v : w0)
        CHECK(std::abs(v - cd(1, 0)) < 1e-15);

    // p = 2 on a 4-row RUS: e^{j pi r}, the same ramp in every column
    const auto w = dft_codeword(4, 4, 1, 1, 2, 0);
    const double ramp[] = {1, -1, 1, -1};
    for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t r = 0; r < 4; ++r)
            CHECK(std::abs(w[q * 4 + r] - cd(ramp[r], 0)) < 1e-12);

    // Direct evaluation of the separable exponent with oversampling
    const auto wo = dft_codeword(4, 2, 2, 3, 5, 4);
    for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t r = 0; r < 4; ++r)
        {
            const double phase = 2 * std::numbers::pi * (5.0 * r / 8.0 + 4.0 * q / 6.0);
            CHECK(std::abs(wo[q * 4 + r] - std::polar(1.0, phase)) < 1e-12);
        }

    CHECK_THROWS_AS(dft_codeword(4, 4, 1, 1, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(dft_codeword(4, 4, 1, 1, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(dft_codeword(4, 4, 0, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("build_codebook - sizes, ordering and unit modulus")
{
    CHECK(build_codebook(4, 4, 1, 1).size() == 16);
    CHECK(build_codebook(4, 4, 2, 2).size() == 64);
    const auto tiny = build_codebook(1, 1, 1, 1);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny.codewords[0] == ComplexChannel{cd(1, 0)});

    const auto cb = build_codebook(4, 2, 2, 3);
    CHECK(cb.size() == 8 * 6);
    CHECK(cb.codewords[cb.flat_index(5, 4)] == dft_codeword(4, 2, 2, 3, 5, 4));
    CHECK(cb.flat_index(1, 0) == 6);
    for (const auto &w : cb.codewords)
        for (const auto &v : w)
            REQUIRE(std::abs(v) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("build_codebook - critically sampled words are orthogonal")
{
    const auto cb = build_codebook(4, 4, 1, 1);
    for (std::size_t a = 0; a < cb.size(); ++a)
        for (std::size_t b = 0; b < cb.size(); ++b)
        {
            cd ip(0, 0);
            for (std::size_t i = 0; i < 16; ++i)
                ip += std::conj(cb.codewords[a][i]) * cb.codewords[b][i];
            REQUIRE(std::abs(ip - cd(a == b ? 16.0 : 0.0, 0)) < 1e-12);
        }
}

TEST_CASE("search_codeword")
{
    const IrsLayout layout;
    const RfParams rf;
    const auto rus = make_rus(layout, 30, 62, 4, 4);

    SECTION("single-word codebook")
    {
        const auto cb = build_codebook(1, 1);
        const auto one = make_rus(layout, 0, 0, 1, 1);
        CHECK(search_codeword(cb, layout, one, {5, -5, 0}, {5, 3, 0}, rf).index == 0);
    }

    SECTION("broadside transceivers select the all-ones word")
    {
        const Point3 ap{40, rus.center.y, rus.center.z}, ue{60, rus.center.y, rus.center.z};
        const auto cb = build_codebook(4, 4);
        const auto cascade = rus_cascade(layout, rus, ap, ue, rf, rf.center_frequency);
        std::size_t oracle = 0;
        double best = -1;
        for (std::size_t c = 0; c < cb.size(); ++c)
        {
            cd y(0, 0);
            for (std::size_t i = 0; i < 16; ++i)
                y += cascade[i] * cb.codewords[c][i];
            if (std::norm(y) > best)
            {
                best = std::norm(y);
                oracle = c;
            }
        }
        CHECK(oracle == 0);
        const auto choice = search_codeword(cb, layout, rus, ap, ue, rf);
        CHECK(choice.index == 0);
        CHECK(choice.power == Approx(best));
    }

    SECTION("noiseless search equals exhaustive argmax and dominates the mean")
    {
        const Point3 ap{5, -5, 0};
        for (const Point3 ue : {Point3{5, 3, 0}, Point3{1, 10, 2}, Point3{12, -1, 0.5}, Point3{0.5, 3, 0}})
        {
            const auto cb = build_codebook(4, 4, 2, 2);
            const auto cascade = rus_cascade(layout, rus, ap, ue, rf, rf.center_frequency);
            double best = -1, mean = 0;
            std::size_t oracle = 0;
            for (std::size_t c = 0; c < cb.size(); ++c)
            {
                cd y(0, 0);
                for (std::size_t i = 0; i < 16; ++i)
                    y += cascade[i] * cb.codewords[c][i];
                mean += std::norm(y) / double(cb.size());
                if (std::norm(y) > best)
                {
                    best = std::norm(y);
                    oracle = c;
                }
            }
            const auto choice = search_codeword(cb, layout, rus, ap, ue, rf);
            CHECK(choice.index == oracle);
            CHECK(choice.power >= mean);
            cd ones(0, 0);
            for (std::size_t i = 0; i < 16; ++i)
                ones += cascade[i];
            CHECK(choice.power >= std::norm(ones));
        }
    }

    SECTION("noisy feedback is reproducible")
    {
        const auto cb = build_codebook(4, 4);
        RngStream a(9, {1}), b(9, {1});
        const auto ca = search_codeword(cb, layout, rus, {5, -5, 0}, {15, 3, 0}, rf, &a);
        const auto cbb = search_codeword(cb, layout, rus, {5, -5, 0}, {15, 3, 0}, rf, &b);
        CHECK(ca.index == cbb.index);
        CHECK(ca.power == cbb.power);
    }

    SECTION("size mismatch")
    {
        CHECK_THROWS_AS(search_codeword(build_codebook(2, 2), layout, rus, {5, -5, 0}, {5, 3, 0}, rf), std::invalid_argument);
        CHECK_THROWS_AS(search_codeword(Codebook{}, layout, rus, {5, -5, 0}, {5, 3, 0}, rf), std::invalid_argument);
    }
}
