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

#include "irssim/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace irssim
{
    namespace
    {
        constexpr double width = 720.0, height = 480.0;
        constexpr double left = 70.0, right = 190.0, top = 40.0, bottom = 60.0;

        const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return buf;
        }

        std::string px(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        struct Series
        {
            std::string label;
            std::vector<std::pair<double, double>> points; // NaN y breaks the line
        };

        std::vector<double> nice_ticks(double lo, double hi)
        {
            if (!(hi > lo))
                hi = lo + 1.0;
            const double raw = (hi - lo) / 6.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0})
                if (m * mag >= raw)
                {
                    step = m * mag;
                    break;
                }
            std::vector<double> ticks;
            for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
                ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
            return ticks;
        }
    } // namespace

    std::string render_plot(std::span<const ResultRow> rows, PlotMetric metric)
    {
        if (rows.empty())
            throw std::invalid_argument("plot: no rows to draw");

        const auto [xmin_it, xmax_it] = std::minmax_element(rows.begin(), rows.end(), [](auto &a, auto &b) { return a.ue_x < b.ue_x; });
        const auto [ymin_it, ymax_it] = std::minmax_element(rows.begin(), rows.end(), [](auto &a, auto &b) { return a.ue_y < b.ue_y; });
        const bool x_varies = xmin_it->ue_x != xmax_it->ue_x;
        const bool y_varies = ymin_it->ue_y != ymax_it->ue_y;
        if (x_varies && y_varies)
            throw std::invalid_argument("plot: rows vary along both x and y; expected a single sweep");
        const bool along_y = y_varies;
        auto coord = [&](const ResultRow &r) { return along_y ? r.ue_y : r.ue_x; };

        std::vector<double> sigmas;
        for (const auto &r : rows)
            if (std::find(sigmas.begin(), sigmas.end(), r.sigma_e) == sigmas.end())
                sigmas.push_back(r.sigma_e);

        std::vector<Series> series;
        if (metric == PlotMetric::snr)
        {
            Series upper{"upper", {}}, noopt{"noopt", {}};
            for (const auto &r : rows)
                if (r.sigma_e == sigmas.front())
                {
                    upper.points.emplace_back(coord(r), r.snr_upper_db);
                    noopt.points.emplace_back(coord(r), r.snr_noopt_db);
                }
            series.push_back(std::move(upper));
            for (double s : sigmas)
            {
                Series p{"proposed (sigma_e=" + num(s) + ")", {}};
                for (const auto &r : rows)
                    if (r.sigma_e == s)
                        p.points.emplace_back(coord(r), r.snr_proposed_db);
                series.push_back(std::move(p));
            }
            series.push_back(std::move(noopt));
        }
        else
        {
            for (double s : sigmas)
            {
                Series e{"error (sigma_e=" + num(s) + ")", {}};
                for (const auto &r : rows)
                    if (r.sigma_e == s)
                        e.points.emplace_back(coord(r), r.mean_pos_err_m);
                series.push_back(std::move(e));
            }
        }
        for (auto &s : series)
            std::stable_sort(s.points.begin(), s.points.end(), [](auto &a, auto &b) { return a.first < b.first; });

        double x0 = coord(rows.front()), x1 = x0, y0 = 0.0, y1 = 0.0;
        bool have_y = false;
        for (const auto &s : series)
            for (const auto &[x, y] : s.points)
            {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                if (std::isfinite(y))
                {
                    y0 = have_y ? std::min(y0, y) : y;
                    y1 = have_y ? std::max(y1, y) : y;
                    have_y = true;
                }
            }
        if (x1 == x0)
        {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if (!have_y)
        {
            y0 = 0.0;
            y1 = 1.0;
        }
        const double pad = (y1 > y0) ? 0.05 * (y1 - y0) : 1.0;
        y0 -= pad;
        y1 += pad;
        if (metric == PlotMetric::error)
            y0 = std::max(0.0, y0);

        const double pw = width - left - right, ph = height - top - bottom;
        auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
        auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

        std::string out;
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" + px(height) +
               "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) + "\" fill=\"white\"/>\n";
        out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
               "\" fill=\"none\" stroke=\"black\"/>\n";

        for (double t : nice_ticks(x0, x1))
        {
            out += "<line x1=\"" + px(sx(t)) + "\" y1=\"" + px(top + ph) + "\" x2=\"" + px(sx(t)) + "\" y2=\"" + px(top) +
                   "\" stroke=\"#dddddd\"/>\n";
            out += "<text x=\"" + px(sx(t)) + "\" y=\"" + px(top + ph + 16) + "\" text-anchor=\"middle\">" + num(t) + "</text>\n";
        }
        for (double t : nice_ticks(y0, y1))
        {
            out += "<line x1=\"" + px(left) + "\" y1=\"" + px(sy(t)) + "\" x2=\"" + px(left + pw) + "\" y2=\"" + px(sy(t)) +
                   "\" stroke=\"#dddddd\"/>\n";
            out += "<text x=\"" + px(left - 6) + "\" y=\"" + px(sy(t) + 4) + "\" text-anchor=\"end\">" + num(t) + "</text>\n";
        }

        const std::string xlabel = along_y ? "UE y-coordinate [m]" : "UE x-coordinate [m]";
        const std::string ylabel = metric == PlotMetric::snr ? "Received SNR [dB]" : "Location estimation error [m]";
        out += "<text x=\"" + px(left + pw / 2) + "\" y=\"" + px(height - 18) + "\" text-anchor=\"middle\">" + xlabel + "</text>\n";
        out += "<text x=\"18\" y=\"" + px(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
               px(top + ph / 2) + ")\">" + ylabel + "</text>\n";

        for (std::size_t i = 0; i < series.size(); ++i)
        {
            const auto &s = series[i];
            const std::string colour = palette[i % std::size(palette)];
            out += "<g class=\"series\" data-label=\"" + s.label + "\">\n";
            std::string pts;
            auto flush = [&]()
            {
                if (!pts.empty())
                    out += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
                pts.clear();
            };
            for (const auto &[x, y] : s.points)
            {
                if (!std::isfinite(y))
                {
                    flush();
                    continue;
                }
                pts += (pts.empty() ? "" : " ") + px(sx(x)) + "," + px(sy(y));
            }
            flush();
            out += "</g>\n";

            const double ly = top + 14.0 + 18.0 * double(i);
            out += "<line x1=\"" + px(left + pw + 10) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(left + pw + 30) +
                   "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + px(left + pw + 36) + "\" y=\"" + px(ly) + "\">" + s.label + "</text>\n";
        }
        out += "</svg>\n";
        return out;
    }

    void emit_plot(std::span<const ResultRow> rows, PlotMetric metric, const std::filesystem::path &path)
    {
        const std::string svg = render_plot(rows, metric);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("Cannot open " + path.string() + " for writing");
        out << svg;
        if (!out)
            throw std::runtime_error("Failed writing plot to " + path.string());
    }

} // namespace irssim
