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

#include "irssim/beam_optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace irssim
{
    bool ReflectState::is_feasible(double tol) const
    {
        for (const auto &t : theta)
            if (!(std::abs(t) <= 1.0 + tol))
                return false;
        return true;
    }

    ComplexChannel reconstruct_ue_channel(const IrsLayout &layout, const Point3 &ue_estimate, const RfParams &rf,
                                          double f)
    {
        if (!(ue_estimate.x >= 0.0))
            throw std::invalid_argument("Estimated UE position must satisfy x >= 0");
        return point_irs_channel(layout, ue_estimate, rf, f);
    }

    ReflectState optimal_theta(std::span<const cd> g, std::span<const cd> h)
    {
        if (g.size() != h.size())
            throw std::invalid_argument("Channel lengths differ: " + std::to_string(g.size()) + " vs " +
                                        std::to_string(h.size()));
        ReflectState s;
        s.theta.resize(g.size());
        for (std::size_t n = 0; n < g.size(); ++n)
        {
            const cd prod = g[n] * h[n];
            const double mag = std::abs(prod);
            s.theta[n] = (mag > 0.0) ? std::conj(prod) / mag : cd(1.0, 0.0);
        }
        return s;
    }

    double to_db(double linear)
    {
        return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
    }

    Snr received_snr(std::span<const cd> g, std::span<const cd> h, const ReflectState &state, double noise_power)
    {
        if (g.size() != h.size() || g.size() != state.theta.size())
            throw std::invalid_argument("received_snr: g, h and theta must have equal length");
        if (!(noise_power > 0.0))
            throw std::invalid_argument("received_snr: noise power must be positive");
        cd y(0.0, 0.0);
        for (std::size_t n = 0; n < g.size(); ++n)
            y += g[n] * h[n] * state.theta[n];
        const double lin = std::norm(y) / noise_power;
        return {lin, to_db(lin)};
    }

} // namespace irssim
