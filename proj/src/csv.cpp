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

#include "jpta/serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace jpta {

namespace {

constexpr const char *kBatchHeader = "seed,scenario,arch,utility,user,rate_bps,log_rate,se,ee,runtime_s,status";

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string &line, std::size_t expected)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    // The last column (status) may itself contain commas.
    while (out.size() + 1 < expected) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos)
            break;
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    out.push_back(line.substr(start));
    if (out.size() != expected)
        throw std::invalid_argument("CSV row has " + std::to_string(out.size()) + " fields, expected " +
                                    std::to_string(expected));
    return out;
}

double parse_double(const std::string &s)
{
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("invalid number in CSV: '" + s + "'");
    return v;
}

unsigned long long parse_unsigned(const std::string &s)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("invalid integer in CSV: '" + s + "'");
    return std::strtoull(s.c_str(), nullptr, 10);
}

void write_row(std::ostringstream &os, const BatchRow &r)
{
    os << r.seed << ',' << r.scenario << ',' << to_string(r.arch) << ',' << to_string(r.utility) << ',' << r.user
       << ',' << fmt(r.rate_bps) << ',' << fmt(r.log_rate) << ',' << fmt(r.se) << ',' << fmt(r.ee) << ','
       << fmt(r.runtime_s) << ',' << r.status << '\n';
}

BatchRow read_row(const std::vector<std::string> &f, std::size_t offset)
{
    BatchRow r;
    r.seed = parse_unsigned(f[offset + 0]);
    r.scenario = parse_unsigned(f[offset + 1]);
    r.arch = parse_architecture(f[offset + 2]);
    r.utility = parse_utility_kind(f[offset + 3]);
    r.user = parse_unsigned(f[offset + 4]);
    r.rate_bps = parse_double(f[offset + 5]);
    r.log_rate = parse_double(f[offset + 6]);
    r.se = parse_double(f[offset + 7]);
    r.ee = parse_double(f[offset + 8]);
    r.runtime_s = parse_double(f[offset + 9]);
    r.status = f[offset + 10];
    return r;
}

template <class RowFn>
void for_each_data_line(const std::string &text, const std::string &header, RowFn fn)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::invalid_argument("unexpected CSV header, expected: " + header);
    while (std::getline(in, line))
        if (!line.empty())
            fn(line);
}

} // namespace

std::string batch_to_csv(const BatchResult &batch)
{
    std::ostringstream os;
    os << kBatchHeader << '\n';
    for (const auto &r : batch.rows)
        write_row(os, r);
    return os.str();
}

BatchResult batch_from_csv(const std::string &text)
{
    BatchResult out;
    for_each_data_line(text, kBatchHeader, [&](const std::string &line) { out.rows.push_back(read_row(split(line, 11), 0)); });
    return out;
}

std::string sweep_to_csv(const SweepTable &table)
{
    std::ostringstream os;
    os << to_string(table.parameter) << ',' << kBatchHeader << '\n';
    for (const auto &[value, batch] : table.entries)
        for (const auto &r : batch.rows) {
            os << fmt(value) << ',';
            write_row(os, r);
        }
    return os.str();
}

SweepTable sweep_from_csv(const std::string &text)
{
    SweepTable table;
    const auto first_comma = text.find(',');
    if (first_comma == std::string::npos)
        throw std::invalid_argument("empty sweep CSV");
    table.parameter = parse_sweep_parameter(text.substr(0, first_comma));
    const std::string header = std::string(to_string(table.parameter)) + "," + kBatchHeader;
    for_each_data_line(text, header, [&](const std::string &line) {
        const auto f = split(line, 12);
        const double value = parse_double(f[0]);
        if (table.entries.empty() || table.entries.back().first != value)
            table.entries.emplace_back(value, BatchResult{});
        table.entries.back().second.rows.push_back(read_row(f, 1));
    });
    return table;
}

std::string gain_map_to_csv(const std::vector<GainSample> &samples)
{
    std::ostringstream os;
    os << "angle_deg,range_m,f_hz,gain\n";
    for (const auto &s : samples)
        os << fmt(s.angle_deg) << ',' << fmt(s.range_m) << ',' << fmt(s.f_hz) << ',' << fmt(s.gain) << '\n';
    return os.str();
}

std::vector<GainSample> gain_map_from_csv(const std::string &text)
{
    std::vector<GainSample> out;
    for_each_data_line(text, "angle_deg,range_m,f_hz,gain", [&](const std::string &line) {
        const auto f = split(line, 4);
        out.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
    });
    return out;
}

} // namespace jpta
