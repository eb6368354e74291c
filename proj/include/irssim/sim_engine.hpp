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

#include "irssim/beam_optimizer.hpp"
#include "irssim/channel_model.hpp"
#include "irssim/delay_estimator.hpp"
#include "irssim/geometry.hpp"
#include "irssim/positioner.hpp"
#include "irssim/rus_codebook.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace irssim
{
    struct RusConfig
    {
        std::size_t count = 5; // N_M
        std::size_t rows = 4;  // M_v
        std::size_t cols = 4;  // M_h
        std::optional<std::vector<std::pair<std::size_t, std::size_t>>> placement; // explicit (row, col) origins
    };

    struct CodebookConfig
    {
        std::size_t oversampling_v = 1; // O_1
        std::size_t oversampling_h = 1; // O_2
        bool shared_codeword = true;    // search on the first RUS only and reuse the winner
    };

    struct DelayGridOverrides
    {
        std::optional<double> t_min;
        std::optional<double> t_max;
        std::optional<double> coarse_step;
        std::optional<int> refinement_iterations;
    };

    enum class SweepAxis
    {
        x,
        y
    };

    struct SweepSpec
    {
        SweepAxis axis = SweepAxis::x;
        double from = 0.5;
        double to = 20.0;
        double step = 0.5;
        std::vector<double> sigma_e{0.0, 0.1, 0.2, 0.4};

        std::size_t point_count() const;
        Point3 position(const Point3 &base, std::size_t i) const;
        void validate() const;
    };

    /// Complete description of one experiment. Defaults reproduce the 64 x 128 panel,
    /// five 4 x 4 RUSs, 128 subbands of 3.6 MHz at 28 GHz and the AP at (5, -5, 0).
    struct ScenarioConfig
    {
        IrsLayout irs;
        RusConfig rus;
        RfParams rf;
        Point3 ap_position{5.0, -5.0, 0.0};
        Point3 ue_position{5.0, 3.0, 0.0};
        double sigma_e = 0.1;
        CodebookConfig codebook;
        DelayGridOverrides delay_grid;
        SolverConfig solver;
        std::uint64_t seed = 42;
        std::size_t trials = 50;
        std::size_t threads = 0; // 0 = all hardware threads
        std::optional<SweepSpec> sweep;

        DelayGrid effective_delay_grid() const;

        // Checks every invariant; std::invalid_argument messages start with the offending key.
        void validate() const;
    };

    struct RusMeasurement
    {
        std::size_t codeword_index = 0;
        double delay = 0.0;            // [s]
        std::optional<double> range;   // RUS-UE distance [m], empty when inconsistent
    };

    struct TrialResult
    {
        Point3 true_position;
        std::optional<Point3> estimated_position;
        std::optional<double> position_error;
        std::vector<RusMeasurement> rus;
        double snr_proposed = 0.0; // linear
        double snr_upper = 0.0;
        double snr_noopt = 0.0;
        double snr_proposed_db = 0.0;
        double snr_upper_db = 0.0;
        double snr_noopt_db = 0.0;
        bool acquisition_failed = false;
    };

    /// One output row per (UE position, sigma_e).
    struct ResultRow
    {
        double ue_x = 0.0;
        double ue_y = 0.0;
        double ue_z = 0.0;
        double sigma_e = 0.0;
        std::size_t trials = 0;
        double snr_upper_db = 0.0;
        double snr_proposed_db = 0.0; // dB of the mean linear SNR
        double snr_noopt_db = 0.0;
        double mean_pos_err_m = 0.0;  // over trials with a position fix; NaN if none
        double failure_rate = 0.0;
    };

    /// Precomputed, read-only state shared by all trials of a configuration.
    class Simulator
    {
      public:
        explicit Simulator(ScenarioConfig config);

        const ScenarioConfig &config() const { return config_; }
        const std::vector<RusSpec> &rus() const { return rus_; }
        const Codebook &codebook() const { return codebook_; }
        const DelayGrid &delay_grid() const { return grid_; }
        const ComplexChannel &ap_channel() const { return h_; }

        /// Pilot symbols spent on acquisition: the codebook search plus one estimate per
        /// remaining RUS when the codeword is shared, a full search per RUS otherwise.
        std::size_t acquisition_symbols() const;

        /// Runs the four acquisition steps for one trial and evaluates the three SNRs with
        /// the true channels. Random draws are keyed by (seed, point_index, trial_index).
        TrialResult run_trial(const Point3 &ue, double sigma_e, std::size_t point_index,
                              std::size_t trial_index) const;

        /// Trial-independent quantities of one UE position.
        struct PointContext
        {
            Point3 ue;
            ComplexChannel g_true; // at F_c
            Snr upper;
            Snr noopt;
        };
        PointContext prepare_point(const Point3 &ue) const;

        TrialResult run_trial(const PointContext &point, double sigma_e, std::size_t point_index,
                              std::size_t trial_index) const;

      private:
        ScenarioConfig config_;
        std::vector<RusSpec> rus_;
        Codebook codebook_;
        DelayGrid grid_;
        std::vector<double> freqs_;
        ComplexChannel h_;
        std::vector<double> d_ap_rus_;
    };

    /// Single trial at config.ue_position and config.sigma_e.
    TrialResult run_acquisition(const ScenarioConfig &config, std::size_t trial_index);

    /// Sweeps the UE along one axis. Rows are ordered by position, then by sigma_e in the
    /// order given. `threads` = 0 uses every hardware thread; results do not depend on it.
    std::vector<ResultRow> run_sweep(const ScenarioConfig &base, const SweepSpec &sweep, std::size_t trials,
                                     std::size_t threads);

    /// Collapses trials at one position into a row.
    ResultRow aggregate_trials(std::span<const TrialResult> trials, double sigma_e);

    /// Mean over rows of (snr_proposed_db - snr_noopt_db). Throws on empty input.
    double aggregate_gain(std::span<const ResultRow> rows);

    /// Rows of `rows` with the given sigma_e.
    std::vector<ResultRow> rows_for_sigma(std::span<const ResultRow> rows, double sigma_e);

} // namespace irssim
