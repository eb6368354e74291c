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

#include "irssim/delay_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace irssim
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        cd unit_phasor(double cycles)
        {
            return std::polar(1.0, two_pi * (cycles - std::floor(cycles)));
        }
    } // namespace

    DelayGrid DelayGrid::defaults_for(const RfParams &rf)
    {
        DelayGrid g;
        g.t_min = 0.0;
        g.t_max = 0.95 / rf.subband_width;
        g.coarse_step = 1.0 / (4.0 * rf.bandwidth());
        g.refinement_iterations = 2;
        return g;
    }

    void DelayGrid::validate(const RfParams &rf) const
    {
        if (!(t_min >= 0.0) || !(t_max > t_min))
            throw std::invalid_argument("delay_grid: require 0 <= t_min < t_max");
        if (t_max > 1.0 / rf.subband_width)
            throw std::invalid_argument("delay_grid.t_max exceeds the unambiguous delay range 1/F_d");
        if (!(coarse_step > 0.0) || coarse_step > 1.0 / (2.0 * rf.bandwidth()))
            throw std::invalid_argument("delay_grid.coarse_step must be positive and at most 1/(2 K F_d)");
        if (refinement_iterations < 0)
            throw std::invalid_argument("delay_grid.refinement_iterations must be non-negative");
    }

    ComplexChannel steering_vector(std::span<const double> frequencies, double t)
    {
        ComplexChannel b(frequencies.size());
        for (std::size_t k = 0; k < frequencies.size(); ++k)
            b[k] = unit_phasor(frequencies[k] * t);
        return b;
    }

    double bartlett_power(std::span<const cd> channel, std::span<const double> frequencies, double t)
    {
        if (channel.size() != frequencies.size())
            throw std::invalid_argument("Channel has " + std::to_string(channel.size()) + " subbands but " +
                                        std::to_string(frequencies.size()) + " frequencies were given");
        cd acc(0.0, 0.0);
        for (std::size_t k = 0; k < channel.size(); ++k)
            acc += channel[k] * unit_phasor(frequencies[k] * t);
        return std::norm(acc);
    }

    double estimate_delay(std::span<const cd> channel, std::span<const double> frequencies, const DelayGrid &grid)
    {
        if (channel.size() != frequencies.size())
            throw std::invalid_argument("Channel and frequency grid lengths differ");
        if (!(grid.coarse_step > 0.0) || !(grid.t_max > grid.t_min))
            throw std::invalid_argument("Invalid delay grid");

        const std::size_t K = channel.size();
        const std::size_t n_points = std::size_t(std::floor((grid.t_max - grid.t_min) / grid.coarse_step)) + 1;

        // Coarse scan: rotate each subband term by a fixed phasor per grid step.
        std::vector<cd> term(K), rot(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            term[k] = channel[k] * unit_phasor(frequencies[k] * grid.t_min);
            rot[k] = unit_phasor(frequencies[k] * grid.coarse_step);
        }

        // Split real/imaginary parts; std::complex multiplication carries NaN recovery we do not need here.
        std::vector<double> tr(K), ti(K), rr(K), ri(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            tr[k] = term[k].real();
            ti[k] = term[k].imag();
            rr[k] = rot[k].real();
            ri[k] = rot[k].imag();
        }

        std::size_t best = 0;
        double best_power = -1.0;
        for (std::size_t j = 0; j < n_points; ++j)
        {
            double ar = 0.0, ai = 0.0;
            for (std::size_t k = 0; k < K; ++k)
            {
                ar += tr[k];
                ai += ti[k];
                const double nr = tr[k] * rr[k] - ti[k] * ri[k];
                ti[k] = tr[k] * ri[k] + ti[k] * rr[k];
                tr[k] = nr;
            }
            const double p = ar * ar + ai * ai;
            if (p > best_power)
            {
                best_power = p;
                best = j;
            }
        }

        double t = grid.t_min + double(best) * grid.coarse_step;
        double h = grid.coarse_step;
        for (int it = 0; it < grid.refinement_iterations; ++it)
        {
            const double p0 = bartlett_power(channel, frequencies, t);
            const double pm = bartlett_power(channel, frequencies, t - h);
            const double pp = bartlett_power(channel, frequencies, t + h);
            const double curvature = pm - 2.0 * p0 + pp;
            if (curvature < 0.0)
            {
                const double offset = std::clamp(0.5 * h * (pm - pp) / curvature, -h, h);
                t += offset;
            }
            t = std::clamp(t, grid.t_min, grid.t_max);
            h *= 0.5;
        }
        return t;
    }

    std::optional<double> delay_to_rus_ue_distance(double delay, double d_ap_rus)
    {
        const double total = speed_of_light * delay;
        if (!(total > d_ap_rus))
            return std::nullopt;
        return total - d_ap_rus;
    }

} // namespace irssim
