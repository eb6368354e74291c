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

#include "irssim/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace irssim
{
    namespace
    {
        // RNG stream purposes
        constexpr std::uint64_t stream_estimate = 1;
        constexpr std::uint64_t stream_feedback = 2;

        std::invalid_argument config_error(const std::string &key, const std::string &what)
        {
            return std::invalid_argument(key + ": " + what);
        }

        void check_finite_point(const std::string &key, const Point3 &p)
        {
            if (!p.is_finite())
                throw config_error(key, "coordinates must be finite");
        }
    } // namespace

    std::size_t SweepSpec::point_count() const
    {
        return std::size_t(std::floor((to - from) / step + 1e-9)) + 1;
    }

    Point3 SweepSpec::position(const Point3 &base, std::size_t i) const
    {
        Point3 p = base;
        const double v = from + double(i) * step;
        (axis == SweepAxis::x ? p.x : p.y) = v;
        return p;
    }

    void SweepSpec::validate() const
    {
        if (!std::isfinite(from) || !std::isfinite(to) || !(from < to))
            throw config_error("sweep", "require from < to");
        if (!(step > 0.0) || !std::isfinite(step))
            throw config_error("sweep.step", "must be positive");
        if (sigma_e.empty())
            throw config_error("sweep.sigma_e", "list must not be empty");
        for (double s : sigma_e)
            if (!(s >= 0.0 && s <= 1.0))
                throw config_error("sweep.sigma_e", "values must lie in [0, 1]");
        if (axis == SweepAxis::x && !(from > 0.0))
            throw config_error("sweep.from", "UE x-coordinate must stay positive");
    }

    DelayGrid ScenarioConfig::effective_delay_grid() const
    {
        DelayGrid g = DelayGrid::defaults_for(rf);
        if (delay_grid.t_min)
            g.t_min = *delay_grid.t_min;
        if (delay_grid.t_max)
            g.t_max = *delay_grid.t_max;
        if (delay_grid.coarse_step)
            g.coarse_step = *delay_grid.coarse_step;
        if (delay_grid.refinement_iterations)
            g.refinement_iterations = *delay_grid.refinement_iterations;
        return g;
    }

    void ScenarioConfig::validate() const
    {
        try
        {
            irs.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error("irs", e.what());
        }
        try
        {
            rf.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error("rf", e.what());
        }

        check_finite_point("ap_position", ap_position);
        check_finite_point("ue_position", ue_position);
        if (!(ap_position.x > 0.0))
            throw config_error("ap_position", "AP must be in front of the IRS (x > 0)");
        if (!(ue_position.x > 0.0))
            throw config_error("ue_position", "UE must be in front of the IRS (x > 0)");
        if (!(sigma_e >= 0.0 && sigma_e <= 1.0))
            throw config_error("sigma_e", "must lie in [0, 1]");
        if (rus.count < 3)
            throw config_error("rus.count", "positioning needs at least 3 RUSs");
        if (codebook.oversampling_v == 0 || codebook.oversampling_h == 0)
            throw config_error("codebook", "oversampling factors must be positive");
        if (trials == 0)
            throw config_error("trials", "must be positive");
        if (solver.max_iterations <= 0)
            throw config_error("solver.max_iterations", "must be positive");
        if (!(solver.initial_damping > 0.0))
            throw config_error("solver.initial_damping", "must be positive");

        std::vector<RusSpec> placed;
        try
        {
            placed = place_rus(irs, rus.count, rus.rows, rus.cols, rus.placement);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error("rus", e.what());
        }

        const DelayGrid grid = effective_delay_grid();
        try
        {
            grid.validate(rf);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error("delay_grid", e.what());
        }

        // Every AP-RUS-UE path of the scene has to fit in the delay search range.
        std::vector<Point3> ues{ue_position};
        if (sweep)
        {
            sweep->validate();
            ues.push_back(sweep->position(ue_position, 0));
            ues.push_back(sweep->position(ue_position, sweep->point_count() - 1));
        }
        const double max_path = speed_of_light * grid.t_max;
        for (const auto &ue : ues)
            for (const auto &r : placed)
            {
                const double path = distance(ap_position, r.center) + distance(r.center, ue);
                if (!(path < max_path))
                    throw config_error(ue == ue_position ? "ue_position" : "sweep",
                                       "AP-RUS-UE path of " + std::to_string(path) +
                                           " m exceeds the unambiguous delay range of " + std::to_string(max_path) + " m");
            }
    }

    Simulator::Simulator(ScenarioConfig config) : config_(std::move(config))
    {
        config_.validate();
        rus_ = place_rus(config_.irs, config_.rus.count, config_.rus.rows, config_.rus.cols, config_.rus.placement);
        codebook_ = build_codebook(config_.rus.rows, config_.rus.cols, config_.codebook.oversampling_v,
                                   config_.codebook.oversampling_h);
        grid_ = config_.effective_delay_grid();
        freqs_ = subband_frequencies(config_.rf);
        h_ = ap_irs_channel(config_.irs, config_.ap_position, config_.rf, config_.rf.center_frequency);
        for (const auto &r : rus_)
            d_ap_rus_.push_back(distance(config_.ap_position, r.center));
    }

    std::size_t Simulator::acquisition_symbols() const
    {
        if (config_.codebook.shared_codeword)
            return codebook_.size() + rus_.size() - 1;
        return codebook_.size() * rus_.size();
    }

    Simulator::PointContext Simulator::prepare_point(const Point3 &ue) const
    {
        PointContext pc;
        pc.ue = ue;
        pc.g_true = irs_ue_channel(config_.irs, ue, config_.rf, config_.rf.center_frequency);
        pc.upper = received_snr(pc.g_true, h_, optimal_theta(pc.g_true, h_), config_.rf.noise_power);
        pc.noopt = received_snr(pc.g_true, h_, ReflectState::all_ones(h_.size()), config_.rf.noise_power);
        return pc;
    }

    TrialResult Simulator::run_trial(const Point3 &ue, double sigma_e, std::size_t point_index,
                                     std::size_t trial_index) const
    {
        return run_trial(prepare_point(ue), sigma_e, point_index, trial_index);
    }

    TrialResult Simulator::run_trial(const PointContext &point, double sigma_e, std::size_t point_index,
                                     std::size_t trial_index) const
    {
        const Point3 &ue = point.ue;
        if (!(sigma_e >= 0.0 && sigma_e <= 1.0))
            throw config_error("sigma_e", "must lie in [0, 1]");

        const auto &cfg = config_;
        TrialResult res;
        res.true_position = ue;

        // Step 1: beam search, wideband estimate and ranging per RUS
        std::vector<RangeObservation> obs;
        std::optional<std::size_t> shared;
        for (std::size_t m = 0; m < rus_.size(); ++m)
        {
            RusMeasurement meas;
            if (cfg.codebook.shared_codeword && shared)
                meas.codeword_index = *shared;
            else
            {
                // Feedback noise only in the noisy-estimate regime; sigma_e = 0 is ideal measurement.
                RngStream fb(cfg.seed, {point_index, trial_index, stream_feedback, m});
                meas.codeword_index = search_codeword(codebook_, cfg.irs, rus_[m], cfg.ap_position, ue, cfg.rf,
                                                      sigma_e > 0.0 ? &fb : nullptr)
                                          .index;
                shared = meas.codeword_index;
            }

            const auto hbar = effective_rus_channel(cfg.irs, rus_[m], codebook_.codewords[meas.codeword_index],
                                                    cfg.ap_position, ue, cfg.rf);
            RngStream est_rng(cfg.seed, {point_index, trial_index, stream_estimate, m});
            const auto hbar_hat = corrupt_estimate(hbar, sigma_e, est_rng);
            meas.delay = estimate_delay(hbar_hat, freqs_, grid_);
            meas.range = delay_to_rus_ue_distance(meas.delay, d_ap_rus_[m]);

            obs.push_back({rus_[m].center, meas.range.value_or(0.0), meas.range.has_value()});
            res.rus.push_back(meas);
        }

        const std::size_t n_valid = std::size_t(std::count_if(obs.begin(), obs.end(), [](const auto &o) { return o.valid; }));

        // Steps 2-4: position fix, channel reconstruction, reflection coefficients
        ReflectState proposed = ReflectState::all_ones(h_.size());
        if (n_valid >= 3)
        {
            const auto fix = trilaterate(obs, cfg.solver);
            res.estimated_position = fix.point;
            res.position_error = position_error(fix.point, ue);
            const auto g_hat = reconstruct_ue_channel(cfg.irs, fix.point, cfg.rf, cfg.rf.center_frequency);
            proposed = optimal_theta(g_hat, h_);
        }
        else
            res.acquisition_failed = true;

        const auto snr_prop = received_snr(point.g_true, h_, proposed, cfg.rf.noise_power);
        const auto &snr_up = point.upper;
        const auto &snr_no = point.noopt;

        res.snr_proposed = snr_prop.linear;
        res.snr_upper = snr_up.linear;
        res.snr_noopt = snr_no.linear;
        res.snr_proposed_db = snr_prop.db;
        res.snr_upper_db = snr_up.db;
        res.snr_noopt_db = snr_no.db;
        return res;
    }

    TrialResult run_acquisition(const ScenarioConfig &config, std::size_t trial_index)
    {
        Simulator sim(config);
        return sim.run_trial(config.ue_position, config.sigma_e, 0, trial_index);
    }

    ResultRow aggregate_trials(std::span<const TrialResult> trials, double sigma_e)
    {
        if (trials.empty())
            throw std::invalid_argument("Cannot aggregate zero trials");
        ResultRow row;
        row.ue_x = trials.front().true_position.x;
        row.ue_y = trials.front().true_position.y;
        row.ue_z = trials.front().true_position.z;
        row.sigma_e = sigma_e;
        row.trials = trials.size();

        double up = 0.0, prop = 0.0, no = 0.0, err = 0.0;
        std::size_t fixes = 0, failures = 0;
        for (const auto &t : trials)
        {
            up += t.snr_upper;
            prop += t.snr_proposed;
            no += t.snr_noopt;
            if (t.position_error)
            {
                err += *t.position_error;
                ++fixes;
            }
            if (t.acquisition_failed)
                ++failures;
        }
        const double n = double(trials.size());
        row.snr_upper_db = to_db(up / n);
        row.snr_proposed_db = to_db(prop / n);
        row.snr_noopt_db = to_db(no / n);
        row.mean_pos_err_m = fixes ? err / double(fixes) : std::numeric_limits<double>::quiet_NaN();
        row.failure_rate = double(failures) / n;
        return row;
    }

    std::vector<ResultRow> run_sweep(const ScenarioConfig &base, const SweepSpec &sweep, std::size_t trials,
                                     std::size_t threads)
    {
        sweep.validate();
        if (trials == 0)
            throw config_error("trials", "must be positive");

        ScenarioConfig cfg = base;
        cfg.sweep = sweep;
        cfg.trials = trials;
        const Simulator sim(cfg);

        const std::size_t n_points = sweep.point_count();
        const std::size_t n_sigma = sweep.sigma_e.size();

        std::vector<Point3> positions(n_points);
        std::vector<Simulator::PointContext> contexts(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
        {
            positions[i] = sweep.position(cfg.ue_position, i);
            if (!(positions[i].x > 0.0))
                throw config_error("sweep", "UE x-coordinate must stay positive");
        }

        // Work unit u covers (point, sigma, trial) with trial fastest.
        const std::size_t n_units = n_points * n_sigma * trials;
        std::vector<TrialResult> results(n_units);
        std::atomic<std::size_t> next_channel{0};
        std::atomic<std::size_t> next_unit{0};

        auto worker = [&]()
        {
            for (std::size_t i; (i = next_channel.fetch_add(1)) < n_points;)
                contexts[i] = sim.prepare_point(positions[i]);
        };
        auto trial_worker = [&]()
        {
            for (std::size_t u; (u = next_unit.fetch_add(1)) < n_units;)
            {
                const std::size_t trial = u % trials;
                const std::size_t s = (u / trials) % n_sigma;
                const std::size_t p = u / (trials * n_sigma);
                results[u] = sim.run_trial(contexts[p], sweep.sigma_e[s], p, trial);
            }
        };

        std::size_t n_threads = threads ? threads : std::max<std::size_t>(1, std::thread::hardware_concurrency());
        n_threads = std::min(n_threads, std::max<std::size_t>(1, n_units));
        auto run_parallel = [&](auto &fn)
        {
            if (n_threads == 1)
            {
                fn();
                return;
            }
            std::vector<std::jthread> pool;
            pool.reserve(n_threads);
            for (std::size_t t = 0; t < n_threads; ++t)
                pool.emplace_back(fn);
        };
        run_parallel(worker);
        run_parallel(trial_worker);

        std::vector<ResultRow> rows;
        rows.reserve(n_points * n_sigma);
        for (std::size_t p = 0; p < n_points; ++p)
            for (std::size_t s = 0; s < n_sigma; ++s)
            {
                const std::size_t first = (p * n_sigma + s) * trials;
                rows.push_back(aggregate_trials(std::span(results).subspan(first, trials), sweep.sigma_e[s]));
            }
        return rows;
    }

    double aggregate_gain(std::span<const ResultRow> rows)
    {
        if (rows.empty())
            throw std::invalid_argument("aggregate_gain needs at least one row");
        double sum = 0.0;
        for (const auto &r : rows)
            sum += r.snr_proposed_db - r.snr_noopt_db;
        return sum / double(rows.size());
    }

    std::vector<ResultRow> rows_for_sigma(std::span<const ResultRow> rows, double sigma_e)
    {
        std::vector<ResultRow> out;
        for (const auto &r : rows)
            if (r.sigma_e == sigma_e)
                out.push_back(r);
        return out;
    }

} // namespace irssim
