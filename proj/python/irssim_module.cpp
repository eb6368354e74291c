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

#include <pybind11/complex.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/pybind11.h>

#include "irssim/cli_io.hpp"
#include "irssim/sim_engine.hpp"

#include <sstream>

namespace py = pybind11;
using namespace irssim;

PYBIND11_MODULE(_irssim, m)
{
    m.doc() = "CSI acquisition simulator for IRS-assisted mmWave links";
    m.attr("speed_of_light") = speed_of_light;

    py::class_<Point3>(m, "Point3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Point3{x, y, z}; }), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z)
        .def("__eq__", [](const Point3 &a, const Point3 &b) { return a == b; })
        .def("__iter__", [](const Point3 &p) { return py::iter(py::make_tuple(p.x, p.y, p.z)); })
        .def("__repr__", [](const Point3 &p)
             {
                 std::ostringstream s;
                 s << "Point3(" << p.x << ", " << p.y << ", " << p.z << ")";
                 return s.str(); });
    py::implicitly_convertible<py::tuple, Point3>();

    m.def("distance", &distance);

    py::class_<IrsLayout>(m, "IrsLayout")
        .def(py::init<>())
        .def_readwrite("n_rows", &IrsLayout::n_rows)
        .def_readwrite("n_cols", &IrsLayout::n_cols)
        .def_readwrite("row_spacing", &IrsLayout::row_spacing)
        .def_readwrite("col_spacing", &IrsLayout::col_spacing)
        .def("unit_count", &IrsLayout::unit_count);

    py::class_<RusSpec>(m, "RusSpec")
        .def_readonly("first_row", &RusSpec::first_row)
        .def_readonly("first_col", &RusSpec::first_col)
        .def_readonly("rus_rows", &RusSpec::rus_rows)
        .def_readonly("rus_cols", &RusSpec::rus_cols)
        .def_readonly("member_indices", &RusSpec::member_indices)
        .def_readonly("center", &RusSpec::center);

    m.def("unit_position", &unit_position, py::arg("layout"), py::arg("n"));
    m.def("place_rus", &place_rus, py::arg("layout"), py::arg("count"), py::arg("rus_rows") = 4, py::arg("rus_cols") = 4,
          py::arg("origins") = std::nullopt);

    py::class_<RfParams>(m, "RfParams")
        .def(py::init<>())
        .def_readwrite("center_frequency", &RfParams::center_frequency)
        .def_readwrite("subband_count", &RfParams::subband_count)
        .def_readwrite("subband_width", &RfParams::subband_width)
        .def_readwrite("pathloss_constant", &RfParams::pathloss_constant)
        .def_readwrite("pathloss_exponent", &RfParams::pathloss_exponent)
        .def_readwrite("noise_power", &RfParams::noise_power);

    m.def("subband_frequencies", &subband_frequencies);
    m.def("path_loss", &path_loss, py::arg("alpha"), py::arg("gamma"), py::arg("d"));
    m.def("ap_irs_channel", &ap_irs_channel);
    m.def("irs_ue_channel", &irs_ue_channel);

    py::class_<Codebook>(m, "Codebook")
        .def_readonly("codewords", &Codebook::codewords)
        .def("__len__", &Codebook::size);
    m.def("dft_codeword", &dft_codeword, py::arg("m_v"), py::arg("m_h"), py::arg("o1"), py::arg("o2"), py::arg("p"), py::arg("l"));
    m.def("build_codebook", &build_codebook, py::arg("m_v"), py::arg("m_h"), py::arg("o1") = 1, py::arg("o2") = 1);

    py::class_<DelayGrid>(m, "DelayGrid")
        .def(py::init<>())
        .def_static("defaults_for", &DelayGrid::defaults_for)
        .def_readwrite("t_min", &DelayGrid::t_min)
        .def_readwrite("t_max", &DelayGrid::t_max)
        .def_readwrite("coarse_step", &DelayGrid::coarse_step)
        .def_readwrite("refinement_iterations", &DelayGrid::refinement_iterations);
    m.def("steering_vector", [](const std::vector<double> &f, double t) { return steering_vector(f, t); });
    m.def("bartlett_power", [](const ComplexChannel &h, const std::vector<double> &f, double t) { return bartlett_power(h, f, t); });
    m.def("estimate_delay", [](const ComplexChannel &h, const std::vector<double> &f, const DelayGrid &g) { return estimate_delay(h, f, g); });

    py::class_<RangeObservation>(m, "RangeObservation")
        .def(py::init([](const Point3 &a, double r, bool valid) { return RangeObservation{a, r, valid}; }),
             py::arg("anchor"), py::arg("range"), py::arg("valid") = true)
        .def_readwrite("anchor", &RangeObservation::anchor)
        .def_readwrite("range", &RangeObservation::range)
        .def_readwrite("valid", &RangeObservation::valid);
    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("initial_damping", &SolverConfig::initial_damping)
        .def_readwrite("step_tolerance", &SolverConfig::step_tolerance)
        .def_readwrite("gradient_tolerance", &SolverConfig::gradient_tolerance)
        .def_readwrite("initial_guess", &SolverConfig::initial_guess);
    py::class_<PositionEstimate>(m, "PositionEstimate")
        .def_readonly("point", &PositionEstimate::point)
        .def_readonly("residual_rms", &PositionEstimate::residual_rms)
        .def_readonly("iterations_used", &PositionEstimate::iterations_used)
        .def_readonly("converged", &PositionEstimate::converged)
        .def_readonly("ill_conditioned", &PositionEstimate::ill_conditioned);
    m.def("trilaterate", [](const std::vector<RangeObservation> &obs, const SolverConfig &c) { return trilaterate(obs, c); },
          py::arg("observations"), py::arg("config") = SolverConfig{});
    m.def("position_error", &position_error);

    m.def("optimal_theta", [](const ComplexChannel &g, const ComplexChannel &h) { return optimal_theta(g, h).theta; });
    m.def("received_snr", [](const ComplexChannel &g, const ComplexChannel &h, const ComplexChannel &theta, double noise_power)
          { return received_snr(g, h, ReflectState{theta}, noise_power).linear; },
          py::arg("g"), py::arg("h"), py::arg("theta"), py::arg("noise_power"));
    m.def("to_db", &to_db);

    py::enum_<SweepAxis>(m, "SweepAxis").value("x", SweepAxis::x).value("y", SweepAxis::y);
    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("axis", &SweepSpec::axis)
        .def_readwrite("start", &SweepSpec::from)
        .def_readwrite("stop", &SweepSpec::to)
        .def_readwrite("step", &SweepSpec::step)
        .def_readwrite("sigma_e", &SweepSpec::sigma_e)
        .def("point_count", &SweepSpec::point_count);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("irs", &ScenarioConfig::irs)
        .def_readwrite("rf", &ScenarioConfig::rf)
        .def_readwrite("ap_position", &ScenarioConfig::ap_position)
        .def_readwrite("ue_position", &ScenarioConfig::ue_position)
        .def_readwrite("sigma_e", &ScenarioConfig::sigma_e)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("trials", &ScenarioConfig::trials)
        .def_readwrite("threads", &ScenarioConfig::threads)
        .def_readwrite("sweep", &ScenarioConfig::sweep)
        .def("validate", &ScenarioConfig::validate)
        .def("to_json", [](const ScenarioConfig &c) { return dump_config(c); });
    m.def("parse_config", [](const std::string &text) { return parse_config(text); });
    m.def("load_config", &load_config);

    py::class_<RusMeasurement>(m, "RusMeasurement")
        .def_readonly("codeword_index", &RusMeasurement::codeword_index)
        .def_readonly("delay", &RusMeasurement::delay)
        .def_readonly("range", &RusMeasurement::range);
    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("true_position", &TrialResult::true_position)
        .def_readonly("estimated_position", &TrialResult::estimated_position)
        .def_readonly("position_error", &TrialResult::position_error)
        .def_readonly("rus", &TrialResult::rus)
        .def_readonly("snr_proposed_db", &TrialResult::snr_proposed_db)
        .def_readonly("snr_upper_db", &TrialResult::snr_upper_db)
        .def_readonly("snr_noopt_db", &TrialResult::snr_noopt_db)
        .def_readonly("acquisition_failed", &TrialResult::acquisition_failed);
    py::class_<ResultRow>(m, "ResultRow")
        .def(py::init<>())
        .def_readwrite("ue_x", &ResultRow::ue_x)
        .def_readwrite("ue_y", &ResultRow::ue_y)
        .def_readwrite("ue_z", &ResultRow::ue_z)
        .def_readwrite("sigma_e", &ResultRow::sigma_e)
        .def_readwrite("trials", &ResultRow::trials)
        .def_readwrite("snr_upper_db", &ResultRow::snr_upper_db)
        .def_readwrite("snr_proposed_db", &ResultRow::snr_proposed_db)
        .def_readwrite("snr_noopt_db", &ResultRow::snr_noopt_db)
        .def_readwrite("mean_pos_err_m", &ResultRow::mean_pos_err_m)
        .def_readwrite("failure_rate", &ResultRow::failure_rate);

    m.def("run_acquisition", &run_acquisition, py::arg("config"), py::arg("trial_index") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("sweep"), py::arg("trials"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("aggregate_gain", [](const std::vector<ResultRow> &rows) { return aggregate_gain(rows); });
    m.def("results_csv", [](const std::vector<ResultRow> &rows)
          {
              std::ostringstream out;
              write_results(rows, out);
              return out.str(); });
    m.def("write_results", [](const std::vector<ResultRow> &rows, const std::filesystem::path &p) { write_results(rows, p); });
    m.def("render_plot", [](const std::vector<ResultRow> &rows, const std::string &metric)
          {
              if (metric != "snr" && metric != "error")
                  throw std::invalid_argument("metric must be 'snr' or 'error'");
              return render_plot(rows, metric == "snr" ? PlotMetric::snr : PlotMetric::error); },
          py::arg("rows"), py::arg("metric") = "snr");
}
