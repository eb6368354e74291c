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

#include <optional>
#include <span>

namespace irssim
{
    /// Search grid for the delay spectrum.
    ///
    /// On a uniform subband grid the spectrum repeats every 1/F_d, so the search range
    /// must stay inside one period.
    struct DelayGrid
    {
        double t_min = 0.0;       // [s]
        double t_max = 0.0;       // [s]
        double coarse_step = 0.0; // [s]
        int refinement_iterations = 2;

        /// t_max = 0.95 / F_d, coarse step = 1 / (4 K F_d), two refinement rounds.
        static DelayGrid defaults_for(const RfParams &rf);

        void validate(const RfParams &rf) const;
    };

    /// b(t), entry k = exp(j 2 pi f_k t).
    ComplexChannel steering_vector(std::span<const double> frequencies, double t);

    /// |sum_k hbar_k exp(j 2 pi f_k t)|^2.
    double bartlett_power(std::span<const cd> channel, std::span<const double> frequencies, double t);

    /// Delay maximizing the Bartlett spectrum: coarse grid scan, then parabolic refinement
    /// with the probe spacing halved each round. The result is clamped to [t_min, t_max].
    double estimate_delay(std::span<const cd> channel, std::span<const double> frequencies, const DelayGrid &grid);

    /// RUS-UE range from a total AP-RUS-UE delay. Returns std::nullopt when c t <= d_ap_rus,
    /// i.e. the measurement is shorter than the known first leg.
    std::optional<double> delay_to_rus_ue_distance(double delay, double d_ap_rus);

} // namespace irssim
