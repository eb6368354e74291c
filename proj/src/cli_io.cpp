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

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace irssim
{
    using nlohmann::json;

    namespace
    {
        std::invalid_argument key_error(const std::string &key, const std::string &what)
        {
            return std::invalid_argument(key + ": " + what);
        }

        // Walks one JSON object, remembering which keys were consumed.
        class ObjectReader
        {
          public:
            ObjectReader(const json &obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix))
            {
                if (!obj_.is_object())
                    throw key_error(prefix_.empty() ? "config" : prefix_, "expected a JSON object");
            }

            std::string path(const std::string &key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

            const json *find(const std::string &key)
            {
                auto it = obj_.find(key);
                if (it == obj_.end())
                    return nullptr;
                seen_.insert(key);
                return &*it;
            }

            template <typename T>
            void read(const std::string &key, T &target)
            {
                const json *v = find(key);
                if (!v)
                    return;
                target = convert<T>(*v, path(key));
            }

            template <typename T>
            void read(const std::string &key, std::optional<T> &target)
            {
                const json *v = find(key);
                if (!v)
                    return;
                target = convert<T>(*v, path(key));
            }

            void read_point(const std::string &key, Point3 &target)
            {
                const json *v = find(key);
                if (!v)
                    return;
                if (!v->is_array() || v->size() != 3 || !std::all_of(v->begin(), v->end(), [](const json &e) { return e.is_number(); }))
                    throw key_error(path(key), "expected an array of three numbers [x, y, z]");
                target = {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
            }

            void finish() const
            {
                for (auto it = obj_.begin(); it != obj_.end(); ++it)
                    if (!seen_.count(it.key()))
                        throw key_error(path(it.key()), "unknown key");
            }

            template <typename T>
            static T convert(const json &v, const std::string &where)
            {
                if constexpr (std::is_same_v<T, bool>)
                {
                    if (!v.is_boolean())
                        throw key_error(where, "expected true or false");
                    return v.get<bool>();
                }
                else if constexpr (std::is_integral_v<T>)
                {
                    if (!v.is_number_integer())
                        throw key_error(where, "expected an integer");
                    if constexpr (std::is_unsigned_v<T>)
                        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)
                            throw key_error(where, "must be non-negative");
                    return v.get<T>();
                }
                else if constexpr (std::is_floating_point_v<T>)
                {
                    if (!v.is_number())
                        throw key_error(where, "expected a number");
                    return v.get<T>();
                }
                else
                    static_assert(sizeof(T) == 0, "unsupported config type");
            }

          private:
            const json &obj_;
            std::string prefix_;
            std::set<std::string> seen_;
        };

        template <typename Fn>
        void section(ObjectReader &parent, const std::string &key, Fn &&fn)
        {
            if (const json *v = parent.find(key))
            {
                ObjectReader child(*v, parent.path(key));
                fn(child);
                child.finish();
            }
        }

        std::string format_double(double v)
        {
            if (std::isnan(v))
                return "nan";
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", v);
            return buf;
        }

        double parse_double(const std::string &s, const std::string &column)
        {
            if (s == "nan")
                return std::numeric_limits<double>::quiet_NaN();
            if (s == "inf")
                return std::numeric_limits<double>::infinity();
            if (s == "-inf")
                return -std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != s.size())
                throw std::invalid_argument("results column " + column + ": cannot parse '" + s + "'");
            return v;
        }
    } // namespace

    ScenarioConfig parse_config(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
        }

        ScenarioConfig cfg;
        ObjectReader root(doc, "");

        section(root, "irs", [&](ObjectReader &r)
                {
                    r.read("rows", cfg.irs.n_rows);
                    r.read("cols", cfg.irs.n_cols);
                    r.read("row_spacing", cfg.irs.row_spacing);
                    r.read("col_spacing", cfg.irs.col_spacing); });

        section(root, "rus", [&](ObjectReader &r)
                {
                    r.read("count", cfg.rus.count);
                    r.read("rows", cfg.rus.rows);
                    r.read("cols", cfg.rus.cols);
                    if (const json *p = r.find("placement"))
                    {
                        const std::string where = r.path("placement");
                        if (!p->is_array())
                            throw key_error(where, "expected an array of [row, col] pairs");
                        std::vector<std::pair<std::size_t, std::size_t>> origins;
                        for (const auto &e : *p)
                        {
                            if (!e.is_array() || e.size() != 2)
                                throw key_error(where, "expected an array of [row, col] pairs");
                            origins.emplace_back(ObjectReader::convert<std::size_t>(e[0], where),
                                                 ObjectReader::convert<std::size_t>(e[1], where));
                        }
                        cfg.rus.placement = std::move(origins);
                    } });

        section(root, "rf", [&](ObjectReader &r)
                {
                    r.read("center_frequency", cfg.rf.center_frequency);
                    r.read("subband_count", cfg.rf.subband_count);
                    r.read("subband_width", cfg.rf.subband_width);
                    r.read("pathloss_constant", cfg.rf.pathloss_constant);
                    r.read("pathloss_exponent", cfg.rf.pathloss_exponent);
                    r.read("noise_power", cfg.rf.noise_power); });

        root.read_point("ap_position", cfg.ap_position);
        root.read_point("ue_position", cfg.ue_position);
        root.read("sigma_e", cfg.sigma_e);

        section(root, "codebook", [&](ObjectReader &r)
                {
                    r.read("oversampling_v", cfg.codebook.oversampling_v);
                    r.read("oversampling_h", cfg.codebook.oversampling_h);
                    r.read("shared_codeword", cfg.codebook.shared_codeword); });

        section(root, "delay_grid", [&](ObjectReader &r)
                {
                    r.read("t_min", cfg.delay_grid.t_min);
                    r.read("t_max", cfg.delay_grid.t_max);
                    r.read("coarse_step", cfg.delay_grid.coarse_step);
                    r.read("refinement_iterations", cfg.delay_grid.refinement_iterations); });

        section(root, "solver", [&](ObjectReader &r)
                {
                    r.read("max_iterations", cfg.solver.max_iterations);
                    r.read("initial_damping", cfg.solver.initial_damping);
                    r.read("step_tolerance", cfg.solver.step_tolerance);
                    r.read("gradient_tolerance", cfg.solver.gradient_tolerance); });

        root.read("seed", cfg.seed);
        root.read("trials", cfg.trials);
        root.read("threads", cfg.threads);

        section(root, "sweep", [&](ObjectReader &r)
                {
                    SweepSpec sw;
                    if (const json *a = r.find("axis"))
                    {
                        if (!a->is_string() || (*a != "x" && *a != "y"))
                            throw key_error(r.path("axis"), "expected \"x\" or \"y\"");
                        sw.axis = (*a == "x") ? SweepAxis::x : SweepAxis::y;
                    }
                    r.read("from", sw.from);
                    r.read("to", sw.to);
                    r.read("step", sw.step);
                    if (const json *s = r.find("sigma_e"))
                    {
                        if (!s->is_array())
                            throw key_error(r.path("sigma_e"), "expected an array of numbers");
                        sw.sigma_e.clear();
                        for (const auto &e : *s)
                            sw.sigma_e.push_back(ObjectReader::convert<double>(e, r.path("sigma_e")));
                    }
                    cfg.sweep = sw; });

        root.finish();
        cfg.validate();
        return cfg;
    }

    ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("Cannot open config file " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        try
        {
            return parse_config(ss.str());
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(path.string() + ": " + e.what());
        }
    }

    std::string dump_config(const ScenarioConfig &c)
    {
        json j;
        j["irs"] = {{"rows", c.irs.n_rows}, {"cols", c.irs.n_cols}, {"row_spacing", c.irs.row_spacing}, {"col_spacing", c.irs.col_spacing}};
        j["rus"] = {{"count", c.rus.count}, {"rows", c.rus.rows}, {"cols", c.rus.cols}};
        if (c.rus.placement)
        {
            json arr = json::array();
            for (const auto &[r, col] : *c.rus.placement)
                arr.push_back({r, col});
            j["rus"]["placement"] = arr;
        }
        j["rf"] = {{"center_frequency", c.rf.center_frequency},
                   {"subband_count", c.rf.subband_count},
                   {"subband_width", c.rf.subband_width},
                   {"pathloss_constant", c.rf.pathloss_constant},
                   {"pathloss_exponent", c.rf.pathloss_exponent},
                   {"noise_power", c.rf.noise_power}};
        j["ap_position"] = {c.ap_position.x, c.ap_position.y, c.ap_position.z};
        j["ue_position"] = {c.ue_position.x, c.ue_position.y, c.ue_position.z};
        j["sigma_e"] = c.sigma_e;
        j["codebook"] = {{"oversampling_v", c.codebook.oversampling_v},
                         {"oversampling_h", c.codebook.oversampling_h},
                         {"shared_codeword", c.codebook.shared_codeword}};
        const DelayGrid g = c.effective_delay_grid();
        j["delay_grid"] = {{"t_min", g.t_min}, {"t_max", g.t_max}, {"coarse_step", g.coarse_step}, {"refinement_iterations", g.refinement_iterations}};
        j["solver"] = {{"max_iterations", c.solver.max_iterations},
                       {"initial_damping", c.solver.initial_damping},
                       {"step_tolerance", c.solver.step_tolerance},
                       {"gradient_tolerance", c.solver.gradient_tolerance}};
        j["seed"] = c.seed;
        j["trials"] = c.trials;
        j["threads"] = c.threads;
        if (c.sweep)
            j["sweep"] = {{"axis", c.sweep->axis == SweepAxis::x ? "x" : "y"},
                          {"from", c.sweep->from},
                          {"to", c.sweep->to},
                          {"step", c.sweep->step},
                          {"sigma_e", c.sweep->sigma_e}};
        return j.dump(2) + "\n";
    }

    const std::vector<std::string> &result_columns()
    {
        static const std::vector<std::string> cols{"ue_x", "ue_y", "ue_z", "sigma_e", "trials", "snr_upper_db",
                                                   "snr_proposed_db", "snr_noopt_db", "mean_pos_err_m", "failure_rate"};
        return cols;
    }

    void write_results(std::span<const ResultRow> rows, std::ostream &out)
    {
        const auto &cols = result_columns();
        for (std::size_t i = 0; i < cols.size(); ++i)
            out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto &r : rows)
        {
            out << format_double(r.ue_x) << ',' << format_double(r.ue_y) << ',' << format_double(r.ue_z) << ','
                << format_double(r.sigma_e) << ',' << r.trials << ',' << format_double(r.snr_upper_db) << ','
                << format_double(r.snr_proposed_db) << ',' << format_double(r.snr_noopt_db) << ','
                << format_double(r.mean_pos_err_m) << ',' << format_double(r.failure_rate) << '\n';
        }
    }

    void write_results(std::span<const ResultRow> rows, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("Cannot open " + path.string() + " for writing");
        write_results(rows, out);
        out.flush();
        if (!out)
            throw std::runtime_error("Failed writing results to " + path.string());
    }

    std::vector<ResultRow> read_results(std::istream &in)
    {
        const auto &cols = result_columns();
        std::string line;
        if (!std::getline(in, line))
            throw std::invalid_argument("results: missing header row");
        {
            std::string expected;
            for (std::size_t i = 0; i < cols.size(); ++i)
                expected += (i ? "," : "") + cols[i];
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line != expected)
                throw std::invalid_argument("results: unexpected header '" + line + "'");
        }

        std::vector<ResultRow> rows;
        while (std::getline(in, line))
        {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            for (std::string cell; std::getline(ss, cell, ',');)
                f.push_back(cell);
            if (f.size() != cols.size())
                throw std::invalid_argument("results: expected " + std::to_string(cols.size()) + " fields, got " +
                                            std::to_string(f.size()));
            ResultRow r;
            r.ue_x = parse_double(f[0], cols[0]);
            r.ue_y = parse_double(f[1], cols[1]);
            r.ue_z = parse_double(f[2], cols[2]);
            r.sigma_e = parse_double(f[3], cols[3]);
            r.trials = std::size_t(parse_double(f[4], cols[4]));
            r.snr_upper_db = parse_double(f[5], cols[5]);
            r.snr_proposed_db = parse_double(f[6], cols[6]);
            r.snr_noopt_db = parse_double(f[7], cols[7]);
            r.mean_pos_err_m = parse_double(f[8], cols[8]);
            r.failure_rate = parse_double(f[9], cols[9]);
            rows.push_back(r);
        }
        return rows;
    }

    std::vector<ResultRow> read_results(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("Cannot open results file " + path.string());
        return read_results(in);
    }

    std::string trial_to_json(const TrialResult &t)
    {
        auto pt = [](const Point3 &p) { return json::array({p.x, p.y, p.z}); };
        json j;
        j["true_position"] = pt(t.true_position);
        j["estimated_position"] = t.estimated_position ? pt(*t.estimated_position) : json(nullptr);
        j["position_error_m"] = t.position_error ? json(*t.position_error) : json(nullptr);
        j["acquisition_failed"] = t.acquisition_failed;
        j["snr_proposed_db"] = t.snr_proposed_db;
        j["snr_upper_db"] = t.snr_upper_db;
        j["snr_noopt_db"] = t.snr_noopt_db;
        json rus = json::array();
        for (const auto &m : t.rus)
            rus.push_back({{"codeword_index", m.codeword_index},
                           {"delay_s", m.delay},
                           {"range_m", m.range ? json(*m.range) : json(nullptr)},
                           {"valid", m.range.has_value()}});
        j["rus"] = rus;
        return j.dump(2);
    }

} // namespace irssim
