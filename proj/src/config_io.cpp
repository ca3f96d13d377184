// SPDX-License-Identifier: Apache-2.0
//
// jpta-sim: wideband joint phase-time array beamforming simulator
// Copyright (C) 2026 The jpta-sim Authors
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

#include "jpta/config_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jpta {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

namespace {

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string &key, const std::string &value)
{
    char *end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
        throw std::invalid_argument("invalid number for " + key + ": '" + value + "'");
    return v;
}

std::uint64_t to_unsigned(const std::string &key, const std::string &value)
{
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("invalid nonnegative integer for " + key + ": '" + value + "'");
    return std::strtoull(value.c_str(), nullptr, 10);
}

} // namespace

ScenarioFile parse_scenario(const std::string &text)
{
    ScenarioFile out;
    SystemConfig &c = out.config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "carrier_frequency_hz") c.carrier_frequency_hz = to_double(key, value);
        else if (key == "bandwidth_hz") c.bandwidth_hz = to_double(key, value);
        else if (key == "num_antennas") c.num_antennas = to_unsigned(key, value);
        else if (key == "num_subbands") c.num_subbands = to_unsigned(key, value);
        else if (key == "num_ttds") c.num_ttds = to_unsigned(key, value);
        else if (key == "transmit_power_dbm") c.transmit_power_w = dbm_to_watt(to_double(key, value));
        else if (key == "noise_psd_dbm_hz") c.noise_psd_w_per_hz = dbm_to_watt(to_double(key, value));
        else if (key == "max_delay_ns") c.max_delay_s = to_double(key, value) * 1e-9;
        else if (key == "ttd_grid_points") c.ttd_grid_points = to_unsigned(key, value);
        else if (key == "num_nf_users") c.num_nf_users = to_unsigned(key, value);
        else if (key == "num_ff_users") c.num_ff_users = to_unsigned(key, value);
        else if (key == "ao_max_iters") c.ao_max_iters = to_unsigned(key, value);
        else if (key == "ao_tolerance") c.ao_tolerance = to_double(key, value);
        else if (key == "penalty_init") c.penalty_init = to_double(key, value);
        else if (key == "seed") out.seed = to_unsigned(key, value);
        else
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    validate(c);
    return out;
}

ScenarioFile load_scenario(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_scenario(const ScenarioFile &file)
{
    const SystemConfig &c = file.config;
    std::ostringstream os;
    os.precision(17);
    os << "carrier_frequency_hz = " << c.carrier_frequency_hz << '\n'
       << "bandwidth_hz = " << c.bandwidth_hz << '\n'
       << "num_antennas = " << c.num_antennas << '\n'
       << "num_subbands = " << c.num_subbands << '\n'
       << "num_ttds = " << c.num_ttds << '\n'
       << "transmit_power_dbm = " << watt_to_dbm(c.transmit_power_w) << '\n'
       << "noise_psd_dbm_hz = " << watt_to_dbm(c.noise_psd_w_per_hz) << '\n'
       << "max_delay_ns = " << c.max_delay_s * 1e9 << '\n'
       << "ttd_grid_points = " << c.ttd_grid_points << '\n'
       << "num_nf_users = " << c.num_nf_users << '\n'
       << "num_ff_users = " << c.num_ff_users << '\n'
       << "ao_max_iters = " << c.ao_max_iters << '\n'
       << "ao_tolerance = " << c.ao_tolerance << '\n'
       << "penalty_init = " << c.penalty_init << '\n'
       << "seed = " << file.seed << '\n';
    return os.str();
}

} // namespace jpta
