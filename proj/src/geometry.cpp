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

#include "irssim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace irssim
{
    bool Point3::is_finite() const
    {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    double distance(const Point3 &a, const Point3 &b)
    {
        const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    void IrsLayout::validate() const
    {
        if (n_rows == 0 || n_cols == 0)
            throw std::invalid_argument("IRS layout must have at least one row and one column");
        if (!(row_spacing > 0.0) || !(col_spacing > 0.0) || !std::isfinite(row_spacing) || !std::isfinite(col_spacing))
            throw std::invalid_argument("IRS unit spacings must be positive and finite");
    }

    Point3 unit_position(const IrsLayout &layout, std::size_t n)
    {
        if (n < 1 || n > layout.unit_count())
            throw std::out_of_range("Unit index " + std::to_string(n) + " outside 1.." + std::to_string(layout.unit_count()));
        const std::size_t col = (n - 1) / layout.n_rows;
        const std::size_t row = (n - 1) % layout.n_rows;
        return {0.0, layout.col_spacing * double(col), layout.row_spacing * double(row)};
    }

    std::vector<Point3> unit_positions(const IrsLayout &layout)
    {
        std::vector<Point3> out;
        out.reserve(layout.unit_count());
        for (std::size_t n = 1; n <= layout.unit_count(); ++n)
            out.push_back(unit_position(layout, n));
        return out;
    }

    RusSpec make_rus(const IrsLayout &layout, std::size_t first_row, std::size_t first_col,
                     std::size_t rus_rows, std::size_t rus_cols)
    {
        if (rus_rows == 0 || rus_cols == 0)
            throw std::invalid_argument("RUS must have at least one row and one column");
        if (first_row + rus_rows > layout.n_rows || first_col + rus_cols > layout.n_cols)
            throw std::invalid_argument("RUS block at (" + std::to_string(first_row) + ", " + std::to_string(first_col) +
                                        ") does not fit on the " + std::to_string(layout.n_rows) + "x" +
                                        std::to_string(layout.n_cols) + " panel");

        RusSpec rus;
        rus.first_row = first_row;
        rus.first_col = first_col;
        rus.rus_rows = rus_rows;
        rus.rus_cols = rus_cols;
        rus.member_indices.reserve(rus_rows * rus_cols);

        double sy = 0.0, sz = 0.0;
        for (std::size_t q = 0; q < rus_cols; ++q)
            for (std::size_t r = 0; r < rus_rows; ++r)
            {
                const std::size_t n = (first_col + q) * layout.n_rows + (first_row + r) + 1;
                rus.member_indices.push_back(n);
                const Point3 p = unit_position(layout, n);
                sy += p.y;
                sz += p.z;
            }
        const double m = double(rus.member_indices.size());
        rus.center = {0.0, sy / m, sz / m};
        return rus;
    }

    namespace
    {
        bool blocks_overlap(const RusSpec &a, const RusSpec &b)
        {
            const bool rows = a.first_row < b.first_row + b.rus_rows && b.first_row < a.first_row + a.rus_rows;
            const bool cols = a.first_col < b.first_col + b.rus_cols && b.first_col < a.first_col + a.rus_cols;
            return rows && cols;
        }

        void check_disjoint(const std::vector<RusSpec> &placed, const RusSpec &candidate)
        {
            for (const auto &p : placed)
                if (blocks_overlap(p, candidate))
                    throw std::invalid_argument("RUS blocks at (" + std::to_string(p.first_row) + ", " +
                                                std::to_string(p.first_col) + ") and (" +
                                                std::to_string(candidate.first_row) + ", " +
                                                std::to_string(candidate.first_col) + ") overlap");
        }
    } // namespace

    std::vector<RusSpec> place_rus(const IrsLayout &layout, std::size_t count, std::size_t rus_rows,
                                   std::size_t rus_cols,
                                   const std::optional<std::vector<std::pair<std::size_t, std::size_t>>> &origins)
    {
        layout.validate();
        if (rus_rows == 0 || rus_cols == 0 || rus_rows > layout.n_rows || rus_cols > layout.n_cols)
            throw std::invalid_argument("RUS of " + std::to_string(rus_rows) + "x" + std::to_string(rus_cols) +
                                        " does not fit on the panel");

        std::vector<RusSpec> out;
        if (origins)
        {
            if (origins->size() != count)
                throw std::invalid_argument("RUS placement lists " + std::to_string(origins->size()) +
                                            " origins but count is " + std::to_string(count));
            for (const auto &[r, c] : *origins)
            {
                auto rus = make_rus(layout, r, c, rus_rows, rus_cols);
                check_disjoint(out, rus);
                out.push_back(std::move(rus));
            }
            return out;
        }

        if (count == 0)
            return out;

        const std::size_t last_row = layout.n_rows - rus_rows;
        const std::size_t last_col = layout.n_cols - rus_cols;
        const std::pair<std::size_t, std::size_t> centre{last_row / 2, last_col / 2};

        if (count == 1)
        {
            out.push_back(make_rus(layout, centre.first, centre.second, rus_rows, rus_cols));
            return out;
        }

        const std::pair<std::size_t, std::size_t> preferred[] = {
            {0, 0}, {last_row, last_col}, {last_row, 0}, {0, last_col}, centre};

        for (const auto &[r, c] : preferred)
        {
            if (out.size() == count)
                break;
            auto rus = make_rus(layout, r, c, rus_rows, rus_cols);
            check_disjoint(out, rus);
            out.push_back(std::move(rus));
        }

        // Greedy farthest-point fill for larger counts
        while (out.size() < count)
        {
            double best_score = -1.0;
            std::optional<RusSpec> best;
            for (std::size_t c = 0; c <= last_col; ++c)
                for (std::size_t r = 0; r <= last_row; ++r)
                {
                    RusSpec cand = make_rus(layout, r, c, rus_rows, rus_cols);
                    bool free = true;
                    double nearest = std::numeric_limits<double>::infinity();
                    for (const auto &p : out)
                    {
                        if (blocks_overlap(p, cand))
                        {
                            free = false;
                            break;
                        }
                        nearest = std::min(nearest, distance(p.center, cand.center));
                    }
                    if (free && nearest > best_score)
                    {
                        best_score = nearest;
                        best = std::move(cand);
                    }
                }
            if (!best)
                throw std::invalid_argument("Cannot place " + std::to_string(count) + " non-overlapping " +
                                            std::to_string(rus_rows) + "x" + std::to_string(rus_cols) +
                                            " RUS blocks on the panel");
            out.push_back(std::move(*best));
        }
        return out;
    }

} // namespace irssim
