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

#include "irssim/geometry.hpp"
#include "irssim/rng.hpp"

#include <complex>
#include <span>
#include <vector>

namespace irssim
{
    using cd = std::complex<double>;

    /// Vector of complex channel coefficients. Depending on context it has one entry per
    /// reflecting unit (h, g, theta), per RUS member (codewords) or per subband.
    using ComplexChannel = std::vector<cd>;

    inline constexpr double speed_of_light = 299792458.0; // m/s

    /// Radio parameters. Defaults are the 28 GHz indoor scenario.
    struct RfParams
    {
        double center_frequency = 28.0e9; // F_c [Hz]
        std::size_t subband_count = 128;  // K
        double subband_width = 3.6e6;     // F_d [Hz], 5 resource blocks
        double pathloss_constant = 2.0;   // alpha
        double pathloss_exponent = 2.0;   // gamma
        double noise_power = 1.0e-3;      // sigma^2 [W]

        double bandwidth() const { return double(subband_count) * subband_width; }

        // Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    /// Centered subband grid: f_k = F_c - K F_d / 2 + (k - 1/2) F_d, k = 1..K.
    std::vector<double> subband_frequencies(const RfParams &rf);

    /// rho = alpha / d^gamma. Throws std::invalid_argument for d <= 0.
    double path_loss(double alpha, double gamma, double d);

    /// LOS coefficient rho(d) * exp(-j 2 pi f d / c).
    cd los_coefficient(const RfParams &rf, double f, double d);

    /// Per-unit LOS channel from a point to every reflecting unit (near-field, exact distances).
    /// Throws std::invalid_argument if the point coincides with a unit.
    ComplexChannel point_irs_channel(const IrsLayout &layout, const Point3 &pos, const RfParams &rf, double f);

    /// AP -> IRS channel h at frequency f. Requires ap_pos.x > 0.
    ComplexChannel ap_irs_channel(const IrsLayout &layout, const Point3 &ap_pos, const RfParams &rf, double f);

    /// IRS -> UE channel g at frequency f. Requires ue_pos.x > 0.
    ComplexChannel irs_ue_channel(const IrsLayout &layout, const Point3 &ue_pos, const RfParams &rf, double f);

    /// Cascaded per-member products g_i(f) h_i(f) of one RUS.
    ComplexChannel rus_cascade(const IrsLayout &layout, const RusSpec &rus, const Point3 &ap_pos, const Point3 &ue_pos,
                               const RfParams &rf, double f);

    /// Wideband AP-RUS-UE channel with only `rus` active and its members set to `codeword`:
    /// entry k is sum_i g_i(f_k) h_i(f_k) w_i. All other units are switched off.
    ComplexChannel effective_rus_channel(const IrsLayout &layout, const RusSpec &rus, std::span<const cd> codeword,
                                         const Point3 &ap_pos, const Point3 &ue_pos, const RfParams &rf);

    /// Noisy estimate sqrt(1 - sigma_e^2) * h_norm + sigma_e * z.
    ///
    /// h_norm is the input rescaled to unit mean per-entry power and z has i.i.d.
    /// CN(0, 1) entries. An all-zero input is passed through unscaled.
    ComplexChannel corrupt_estimate(std::span<const cd> channel, double sigma_e, RngStream &rng);

} // namespace irssim
