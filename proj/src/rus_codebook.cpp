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

#include "irssim/rus_codebook.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irssim
{
    ComplexChannel dft_codeword(std::size_t m_v, std::size_t m_h, std::size_t o1, std::size_t o2, std::size_t p,
                                std::size_t l)
    {
        if (m_v == 0 || m_h == 0 || o1 == 0 || o2 == 0)
            throw std::invalid_argument("Codebook dimensions and oversampling factors must be positive");
        if (p >= o1 * m_v || l >= o2 * m_h)
            throw std::invalid_argument("Beam index (p=" + std::to_string(p) + ", l=" + std::to_string(l) +
                                        ") outside the oversampled range " + std::to_string(o1 * m_v) + "x" +
                                        std::to_string(o2 * m_h));

        constexpr double two_pi = 2.0 * std::numbers::pi;
        const double nv = double(o1 * m_v);
        const double nh = double(o2 * m_h);

        ComplexChannel w(m_v * m_h);
        for (std::size_t q = 0; q < m_h; ++q)
        {
            // Phases are reduced modulo one cycle through integer arithmetic.
            const double ph_h = double((l * q) % (o2 * m_h)) / nh;
            for (std::size_t r = 0; r < m_v; ++r)
            {
                const double ph_v = double((p * r) % (o1 * m_v)) / nv;
                w[q * m_v + r] = std::polar(1.0, two_pi * (ph_v + ph_h));
            }
        }
        return w;
    }

    Codebook build_codebook(std::size_t m_v, std::size_t m_h, std::size_t o1, std::size_t o2)
    {
        Codebook cb;
        cb.m_v = m_v;
        cb.m_h = m_h;
        cb.oversampling_v = o1;
        cb.oversampling_h = o2;
        cb.codewords.reserve(o1 * m_v * o2 * m_h);
        for (std::size_t p = 0; p < o1 * m_v; ++p)
            for (std::size_t l = 0; l < o2 * m_h; ++l)
                cb.codewords.push_back(dft_codeword(m_v, m_h, o1, o2, p, l));
        return cb;
    }

    CodewordChoice search_codeword(const Codebook &codebook, const IrsLayout &layout, const RusSpec &rus,
                                   const Point3 &ap_pos, const Point3 &ue_pos, const RfParams &rf,
                                   RngStream *feedback_rng)
    {
        if (codebook.codewords.empty())
            throw std::invalid_argument("Cannot search an empty codebook");
        if (codebook.m_v * codebook.m_h != rus.member_indices.size())
            throw std::invalid_argument("Codebook size does not match the RUS");

        const auto cascade = rus_cascade(layout, rus, ap_pos, ue_pos, rf, rf.center_frequency);

        CodewordChoice best;
        best.power = -1.0;
        for (std::size_t c = 0; c < codebook.size(); ++c)
        {
            const auto &w = codebook.codewords[c];
            cd y(0.0, 0.0);
            for (std::size_t i = 0; i < w.size(); ++i)
                y += cascade[i] * w[i];
            if (feedback_rng)
                y += feedback_rng->complex_normal(rf.noise_power);
            const double power = std::norm(y);
            if (power > best.power)
                best = {c, power};
        }
        return best;
    }

} // namespace irssim
