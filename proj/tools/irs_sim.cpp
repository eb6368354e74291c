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

// Command-line front end: simulate, sweep, plot, show-config.

#include "irssim/cli_io.hpp"
#include "irssim/sim_engine.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace irssim;

namespace
{
    ScenarioConfig base_config(const std::string &path)
    {
        return path.empty() ? parse_config("{}") : load_config(path);
    }

    void print_row_summary(const std::vector<ResultRow> &rows)
    {
        std::vector<double> sigmas;
        for (const auto &r : rows)
            if (std::find(sigmas.begin(), sigmas.end(), r.sigma_e) == sigmas.end())
                sigmas.push_back(r.sigma_e);
        for (double s : sigmas)
        {
            const auto sub = rows_for_sigma(rows, s);
            double err = 0.0;
            std::size_t n = 0;
            for (const auto &r : sub)
                if (std::isfinite(r.mean_pos_err_m))
                {
                    err += r.mean_pos_err_m;
                    ++n;
                }
            std::fprintf(stderr, "sigma_e=%-5g  mean gain over no-optimization: %7.3f dB   mean position error: %.4f m\n", s,
                         aggregate_gain(sub), n ? err / double(n) : NAN);
        }
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for RUS-based CSI acquisition on IRS-assisted mmWave links"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials, threads;
    std::vector<double> sigma_list;

    // simulate
    auto *sim = app.add_subcommand("simulate", "Run the acquisition pipeline at the configured UE position");
    sim->add_option("--config", config_path, "Scenario JSON file (defaults if omitted)")->check(CLI::ExistingFile);
    sim->add_option("--seed", seed, "Override the RNG seed");
    sim->add_option("--trials", trials, "Number of Monte Carlo trials");
    sim->add_option("--sigma-e", sigma_list, "Estimate-quality values (comma separated)")->delimiter(',');
    sim->add_option("--out", out_path, "Write per-trial JSON here instead of stdout");

    // sweep
    std::string axis;
    std::optional<double> from, to, step;
    std::string sweep_out;
    auto *sw = app.add_subcommand("sweep", "Sweep the UE along the x or y axis and write a results CSV");
    sw->add_option("--config", config_path, "Scenario JSON file (defaults if omitted)")->check(CLI::ExistingFile);
    sw->add_option("--axis", axis, "Sweep axis")->check(CLI::IsMember({"x", "y"}));
    sw->add_option("--from", from, "First UE coordinate [m]");
    sw->add_option("--to", to, "Last UE coordinate [m]");
    sw->add_option("--step", step, "Coordinate step [m]");
    sw->add_option("--sigma-e", sigma_list, "Estimate-quality values (comma separated)")->delimiter(',');
    sw->add_option("--trials", trials, "Trials per point");
    sw->add_option("--seed", seed, "Override the RNG seed");
    sw->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sw->add_option("--out", sweep_out, "Results CSV path")->required();

    // plot
    std::string plot_in, plot_out, metric = "snr";
    auto *pl = app.add_subcommand("plot", "Render an SVG chart from a sweep CSV");
    pl->add_option("--in", plot_in, "Results CSV")->required()->check(CLI::ExistingFile);
    pl->add_option("--metric", metric, "snr or error")->check(CLI::IsMember({"snr", "error"}));
    pl->add_option("--out", plot_out, "SVG path")->required();

    // show-config
    auto *show = app.add_subcommand("show-config", "Print the effective scenario configuration as JSON");
    show->add_option("--config", config_path, "Scenario JSON file (defaults if omitted)")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*show)
        {
            std::cout << dump_config(base_config(config_path));
            return 0;
        }

        if (*sim)
        {
            ScenarioConfig cfg = base_config(config_path);
            if (seed)
                cfg.seed = *seed;
            if (trials)
                cfg.trials = *trials;
            if (sigma_list.empty())
                sigma_list.push_back(cfg.sigma_e);
            cfg.validate();
            const Simulator simulator(cfg);
            const auto point = simulator.prepare_point(cfg.ue_position);

            std::string json = "[\n";
            std::vector<ResultRow> rows;
            for (std::size_t s = 0; s < sigma_list.size(); ++s)
            {
                std::vector<TrialResult> results;
                for (std::size_t t = 0; t < cfg.trials; ++t)
                {
                    results.push_back(simulator.run_trial(point, sigma_list[s], 0, t));
                    json += (json.size() > 2 ? ",\n" : "") + trial_to_json(results.back());
                }
                rows.push_back(aggregate_trials(results, sigma_list[s]));
            }
            json += "\n]\n";

            if (out_path.empty())
                std::cout << json;
            else
            {
                std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw std::runtime_error("Cannot open " + out_path + " for writing");
                out << json;
            }
            for (const auto &r : rows)
                std::fprintf(stderr,
                             "sigma_e=%-5g upper=%.3f dB proposed=%.3f dB noopt=%.3f dB pos_err=%.4f m failures=%.3f\n",
                             r.sigma_e, r.snr_upper_db, r.snr_proposed_db, r.snr_noopt_db, r.mean_pos_err_m,
                             r.failure_rate);
            std::fprintf(stderr, "acquisition pilot symbols: %zu\n", simulator.acquisition_symbols());
            return 0;
        }

        if (*sw)
        {
            ScenarioConfig cfg = base_config(config_path);
            SweepSpec spec = cfg.sweep.value_or(SweepSpec{});
            if (!axis.empty())
                spec.axis = axis == "x" ? SweepAxis::x : SweepAxis::y;
            if (from)
                spec.from = *from;
            if (to)
                spec.to = *to;
            if (step)
                spec.step = *step;
            if (!sigma_list.empty())
                spec.sigma_e = sigma_list;
            if (seed)
                cfg.seed = *seed;
            if (trials)
                cfg.trials = *trials;
            if (threads)
                cfg.threads = *threads;

            const auto rows = run_sweep(cfg, spec, cfg.trials, cfg.threads);
            write_results(rows, std::filesystem::path(sweep_out));
            print_row_summary(rows);
            return 0;
        }

        if (*pl)
        {
            const auto rows = read_results(std::filesystem::path(plot_in));
            emit_plot(rows, metric == "snr" ? PlotMetric::snr : PlotMetric::error, plot_out);
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
