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

#include "irssim/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irssim
{
    void RfParams::validate() const
    {
        if (!(center_frequency > 0.0) || !std::isfinite(center_frequency))
            throw std::invalid_argument("center_frequency must be positive");
        if (subband_count == 0)
            throw std::invalid_argument("subband_count must be positive");
        if (!(subband_width > 0.0) || !std::isfinite(subband_width))
            throw std::invalid_argument("subband_width must be positive");
        if (!(center_frequency > 0.5 * bandwidth()))
            throw std::invalid_argument("subband_width: total bandwidth must stay below twice the center_frequency");
        if (!(pathloss_constant > 0.0) || !std::isfinite(pathloss_constant))
            throw std::invalid_argument("pathloss_constant must be positive");
        if (!(pathloss_exponent >= 0.0) || !std::isfinite(pathloss_exponent))
            throw std::invalid_argument("pathloss_exponent must be non-negative");
        if (!(noise_power > 0.0) || !std::isfinite(noise_power))
            throw std::invalid_argument("noise_power must be positive");
    }

    std::vector<double> subband_frequencies(const RfParams &rf)
    {
        const std::size_t K = rf.subband_count;
        const double f0 = rf.center_frequency - 0.5 * double(K) * rf.subband_width;
        std::vector<double> f(K);
        for (std::size_t k = 0; k < K; ++k)
            f[k] = f0 + (double(k) + 0.5) * rf.subband_width;
        return f;
    }

    double path_loss(double alpha, double gamma, double d)
    {
        if (!(d > 0.0))
            throw std::invalid_argument("Path loss requires a positive distance, got " + std::to_string(d));
        return alpha / std::pow(d, gamma);
    }

    cd los_coefficient(const RfParams &rf, double f, double d)
    {
        const double rho = path_loss(rf.pathloss_constant, rf.pathloss_exponent, d);
        // Reduce the cycle count before scaling by 2 pi; f d / c is in the thousands at mmWave.
        const double cycles = f * d / speed_of_light;
        const double frac = cycles - std::floor(cycles);
        return std::polar(rho, -2.0 * std::numbers::pi * frac);
    }

    ComplexChannel point_irs_channel(const IrsLayout &layout, const Point3 &pos, const RfParams &rf, double f)
    {
        ComplexChannel out(layout.unit_count());
        for (std::size_t n = 1; n <= layout.unit_count(); ++n)
        {
            const double d = distance(pos, unit_position(layout, n));
            if (!(d > 0.0))
                throw std::invalid_argument("Transceiver coincides with reflecting unit " + std::to_string(n));
            out[n - 1] = los_coefficient(rf, f, d);
        }
        return out;
    }

    ComplexChannel ap_irs_channel(const IrsLayout &layout, const Point3 &ap_pos, const RfParams &rf, double f)
    {
        if (!(ap_pos.x > 0.0))
            throw std::invalid_argument("AP must be in front of the IRS (x > 0)");
        return point_irs_channel(layout, ap_pos, rf, f);
    }

    ComplexChannel irs_ue_channel(const IrsLayout &layout, const Point3 &ue_pos, const RfParams &rf, double f)
    {
        if (!(ue_pos.x > 0.0))
            throw std::invalid_argument("UE must be in front of the IRS (x > 0)");
        return point_irs_channel(layout, ue_pos, rf, f);
    }

    ComplexChannel rus_cascade(const IrsLayout &layout, const RusSpec &rus, const Point3 &ap_pos, const Point3 &ue_pos,
                               const RfParams &rf, double f)
    {
        ComplexChannel out;
        out.reserve(rus.member_indices.size());
        for (std::size_t n : rus.member_indices)
        {
            const Point3 p = unit_position(layout, n);
            out.push_back(los_coefficient(rf, f, distance(ap_pos, p)) * los_coefficient(rf, f, distance(p, ue_pos)));
        }
        return out;
    }

    ComplexChannel effective_rus_channel(const IrsLayout &layout, const RusSpec &rus, std::span<const cd> codeword,
                                         const Point3 &ap_pos, const Point3 &ue_pos, const RfParams &rf)
    {
        if (codeword.size() != rus.member_indices.size())
            throw std::invalid_argument("Codeword length " + std::to_string(codeword.size()) + " does not match RUS size " +
                                        std::to_string(rus.member_indices.size()));
        for (const auto &w : codeword)
            if (std::abs(w) > 1.0 + 1e-12)
                throw std::invalid_argument("Codeword entries must satisfy |w| <= 1");

        const auto freqs = subband_frequencies(rf);
        ComplexChannel out(freqs.size(), cd(0.0, 0.0));
        for (std::size_t i = 0; i < rus.member_indices.size(); ++i)
        {
            if (codeword[i] == cd(0.0, 0.0))
                continue;
            const Point3 p = unit_position(layout, rus.member_indices[i]);
            const double d_ap = distance(ap_pos, p);
            const double d_ue = distance(p, ue_pos);
            const double gain = path_loss(rf.pathloss_constant, rf.pathloss_exponent, d_ap) *
                                path_loss(rf.pathloss_constant, rf.pathloss_exponent, d_ue);
            for (std::size_t k = 0; k < freqs.size(); ++k)
            {
                // g_i h_i = rho_ap rho_ue exp(-j 2 pi f (d_ap + d_ue) / c)
                const double cycles = freqs[k] * (d_ap + d_ue) / speed_of_light;
                out[k] += std::polar(gain, -2.0 * std::numbers::pi * (cycles - std::floor(cycles))) * codeword[i];
            }
        }
        return out;
    }

    ComplexChannel corrupt_estimate(std::span<const cd> channel, double sigma_e, RngStream &rng)
    {
        if (!(sigma_e >= 0.0 && sigma_e <= 1.0))
            throw std::invalid_argument("sigma_e must lie in [0, 1], got " + std::to_string(sigma_e));

        double power = 0.0;
        for (const auto &v : channel)
            power += std::norm(v);
        const double scale = (power > 0.0) ? std::sqrt(double(channel.size()) / power) : 1.0;

        const double a = std::sqrt(1.0 - sigma_e * sigma_e);
        ComplexChannel out(channel.size());
        for (std::size_t k = 0; k < channel.size(); ++k)
        {
            out[k] = a * scale * channel[k];
            if (sigma_e > 0.0)
                out[k] += sigma_e * rng.complex_normal(1.0);
        }
        return out;
    }

} // namespace irssim
