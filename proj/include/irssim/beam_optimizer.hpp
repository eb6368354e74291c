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

#pragma once

#include "irssim/channel_model.hpp"

#include <span>

namespace irssim
{
    /// Reflection coefficients theta_n of all units, |theta_n| <= 1.
    struct ReflectState
    {
        ComplexChannel theta;

        static ReflectState all_ones(std::size_t n) { return {ComplexChannel(n, cd(1.0, 0.0))}; }
        bool is_feasible(double tol = 1e-12) const;
    };

    /// IRS-UE channel rebuilt from an estimated UE position (same LOS model as irs_ue_channel).
    ComplexChannel reconstruct_ue_channel(const IrsLayout &layout, const Point3 &ue_estimate, const RfParams &rf,
                                          double f);

    /// theta_n = conj(g_n h_n) / |g_n h_n|. A zero product leaves theta_n = 1.
    ReflectState optimal_theta(std::span<const cd> g, std::span<const cd> h);

    struct Snr
    {
        double linear = 0.0;
        double db = 0.0;
    };

    /// |sum_n g_n h_n theta_n|^2 / sigma^2 (unit transmit power).
    Snr received_snr(std::span<const cd> g, std::span<const cd> h, const ReflectState &state, double noise_power);

    double to_db(double linear);

} // namespace irssim
