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

#include "irssim/sim_engine.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace irssim
{
    /// Parses a scenario from JSON text. Missing keys keep their defaults; unknown keys,
    /// wrong types and invariant violations throw std::invalid_argument whose message
    /// starts with the dotted key path (e.g. "rf.subband_count: ...").
    ScenarioConfig parse_config(std::string_view json_text);

    /// Reads and parses a scenario file. I/O errors are reported with the path.
    ScenarioConfig load_config(const std::filesystem::path &path);

    /// Serializes every field, suitable for parse_config.
    std::string dump_config(const ScenarioConfig &config);

    /// Column names of the results CSV, in order.
    const std::vector<std::string> &result_columns();

    /// CSV with a header row, 9 significant digits, LF line endings.
    void write_results(std::span<const ResultRow> rows, std::ostream &out);
    void write_results(std::span<const ResultRow> rows, const std::filesystem::path &path);

    /// Inverse of write_results. Throws std::invalid_argument on a malformed file.
    std::vector<ResultRow> read_results(std::istream &in);
    std::vector<ResultRow> read_results(const std::filesystem::path &path);

    enum class PlotMetric
    {
        snr,
        error
    };

    /// SVG line chart of one sweep. For `snr`: series "upper", "proposed" (one per sigma_e)
    /// and "noopt" in dB; for `error`: mean position error per sigma_e in meters.
    /// Rejects empty input and rows that vary along both x and y.
    std::string render_plot(std::span<const ResultRow> rows, PlotMetric metric);
    void emit_plot(std::span<const ResultRow> rows, PlotMetric metric, const std::filesystem::path &path);

    /// JSON summary of one trial.
    std::string trial_to_json(const TrialResult &trial);

} // namespace irssim
