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

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace irssim
{
    /// Cartesian coordinate in meters. The IRS lies in the y-z plane with the
    /// lower-left reflecting unit at the origin; transceivers sit at x > 0.
    struct Point3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        bool is_finite() const;
        friend bool operator==(const Point3 &, const Point3 &) = default;
    };

    double distance(const Point3 &a, const Point3 &b);

    /// Uniform planar array of reflecting units.
    ///
    /// Units are numbered 1..N column-major starting at the origin: the index
    /// runs up the first column (increasing z), then the second column, and so
    /// on along +y.
    struct IrsLayout
    {
        std::size_t n_rows = 64;    // N_v, along z
        std::size_t n_cols = 128;   // N_h, along y
        double row_spacing = 0.005; // D_v [m]
        double col_spacing = 0.005; // D_h [m]

        std::size_t unit_count() const { return n_rows * n_cols; }

        // Throws std::invalid_argument when dimensions or spacings are not positive.
        void validate() const;
    };

    /// Position of unit `n` (1-based). Throws std::out_of_range for n outside 1..N.
    Point3 unit_position(const IrsLayout &layout, std::size_t n);

    /// Positions of all units, entry i holds unit i+1.
    std::vector<Point3> unit_positions(const IrsLayout &layout);

    /// One reflecting-unit set: a contiguous rus_rows x rus_cols block of the panel.
    struct RusSpec
    {
        std::size_t first_row = 0; // zero-based grid row of the lower-left member
        std::size_t first_col = 0; // zero-based grid column of the lower-left member
        std::size_t rus_rows = 4;  // M_v
        std::size_t rus_cols = 4;  // M_h
        std::vector<std::size_t> member_indices; // 1-based unit indices, column-major within the block
        Point3 center;                           // P_m

        std::size_t size() const { return rus_rows * rus_cols; }
    };

    /// Builds the RUS whose lower-left member sits at grid (row, col).
    RusSpec make_rus(const IrsLayout &layout, std::size_t first_row, std::size_t first_col,
                     std::size_t rus_rows, std::size_t rus_cols);

    /// Places `count` non-overlapping RUS blocks on the panel.
    ///
    /// count = 1 gives a single centered block. Up to five blocks are taken in the order
    /// lower-left, upper-right, upper-left, lower-right corner, then the panel center, so
    /// count = 5 is the four corners plus center. Beyond five, blocks are added greedily at
    /// the free position farthest from all chosen centers.
    ///
    /// `origins` overrides the policy with explicit (row, col) block origins.
    /// Throws std::invalid_argument if a block does not fit or two blocks overlap.
    std::vector<RusSpec> place_rus(const IrsLayout &layout, std::size_t count, std::size_t rus_rows,
                                   std::size_t rus_cols,
                                   const std::optional<std::vector<std::pair<std::size_t, std::size_t>>> &origins = std::nullopt);

} // namespace irssim
