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

#include "irssim/rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace irssim
{
    namespace
    {
        std::vector<std::uint32_t> seed_words(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
        {
            std::vector<std::uint32_t> words;
            words.reserve(2 + 2 * keys.size());
            auto push = [&](std::uint64_t v)
            {
                words.push_back(std::uint32_t(v & 0xffffffffu));
                words.push_back(std::uint32_t(v >> 32));
            };
            push(seed);
            for (auto k : keys)
                push(k);
            return words;
        }
    } // namespace

    RngStream::RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
    {
        const auto words = seed_words(seed, keys);
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    double RngStream::uniform()
    {
        // 53 random mantissa bits, shifted off zero
        return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double RngStream::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    std::complex<double> RngStream::complex_normal(double variance)
    {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

} // namespace irssim
