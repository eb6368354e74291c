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

#include <optional>
#include <span>

namespace irssim
{
    struct RangeObservation
    {
        Point3 anchor;      // P_m
        double range = 0.0; // estimated distance to the anchor [m]
        bool valid = true;
    };

    struct SolverConfig
    {
        int max_iterations = 100;
        double initial_damping = 1e-3;
        double step_tolerance = 1e-9;     // [m]
        double gradient_tolerance = 1e-12;
        std::optional<Point3> initial_guess; // replaces the closed-form start; x is mirrored to +|x|
    };

    struct PositionEstimate
    {
        Point3 point;
        double residual_rms = 0.0; // RMS of |P_m - P| - d_m at the returned point [m]
        double initial_residual_rms = 0.0;
        int iterations_used = 0;
        bool converged = false;
        bool ill_conditioned = false; // anchors (nearly) collinear
    };

    /// Least-squares multilateration restricted to the half-space x >= 0.
    ///
    /// Minimizes sum_m (|P_m - P| - d_m)^2 with Levenberg-Marquardt on range residuals.
    /// Start point: linear least squares on squared-range differences, which fixes the
    /// in-plane coordinates for anchors on the IRS plane; the out-of-plane coordinate comes
    /// from the mean squared range and is taken on the +x side. Iterates with x < 0 are
    /// reflected, which is cost-neutral when all anchors lie in x = 0.
    ///
    /// Invalid observations are ignored. Throws std::invalid_argument if fewer than three
    /// valid observations remain.
    PositionEstimate trilaterate(std::span<const RangeObservation> observations, const SolverConfig &config = {});

    double position_error(const Point3 &estimate, const Point3 &truth);

} // namespace irssim
