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

#include "jpta/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace jpta {

std::uint64_t scenario_seed(std::uint64_t batch_seed, std::size_t scenario)
{
    // splitmix64 finalizer
    std::uint64_t z = batch_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(scenario) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<BatchRow> solve_scenario(const SystemConfig &cfg, const BatchOptions &opts, std::size_t index)
{
    std::vector<BatchRow> rows;
    const std::size_t K = cfg.num_users();
    const AoOptions ao = default_ao_options(cfg);

    ChannelSet channels;
    std::string setup_error;
    try {
        channels = synthesize_channels(sample_users(scenario_seed(opts.seed, index), cfg), cfg);
    } catch (const std::exception &e) {
        setup_error = e.what();
    }

    for (Architecture arch : opts.archs)
        for (UtilityKind kind : opts.kinds) {
            BatchRow base;
            base.seed = opts.seed;
            base.scenario = index;
            base.arch = arch;
            base.utility = kind;

            std::vector<double> rates(K, 0.0);
            double runtime = 0.0;
            std::string status = setup_error.empty() ? "ok" : "error: " + setup_error;
            if (setup_error.empty()) {
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    rates = solve(arch, channels, cfg, kind, ao).rates;
                } catch (const std::exception &e) {
                    status = std::string("error: ") + e.what();
                    std::fill(rates.begin(), rates.end(), 0.0);
                }
                runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            }

            double sum = 0.0;
            for (double r : rates)
                sum += r;
            const double se = sum / cfg.bandwidth_hz;
            const double ee = energy_efficiency(se, arch, cfg, opts.power_model);
            for (std::size_t k = 0; k < K; ++k) {
                BatchRow row = base;
                row.user = k;
                row.rate_bps = rates[k];
                row.log_rate = rates[k] > 0.0 ? std::log(rates[k]) : kNegInf;
                row.se = se;
                row.ee = ee;
                row.runtime_s = opts.record_runtime ? runtime : 0.0;
                row.status = status;
                rows.push_back(std::move(row));
            }
        }
    return rows;
}

} // namespace

BatchResult run_batch(const SystemConfig &cfg, const BatchOptions &opts)
{
    validate(cfg);
    if (opts.scenarios == 0)
        throw std::invalid_argument("run_batch needs at least one scenario");
    if (opts.archs.empty() || opts.kinds.empty())
        throw std::invalid_argument("run_batch needs at least one architecture and utility");

    std::vector<std::vector<BatchRow>> per_scenario(opts.scenarios);
    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, opts.scenarios));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < opts.scenarios; i = next++)
            per_scenario[i] = solve_scenario(cfg, opts, i);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    BatchResult out;
    for (auto &rows : per_scenario)
        for (auto &row : rows)
            out.rows.push_back(std::move(row));
    return out;
}

std::vector<ScenarioSummary> summarize(const BatchResult &batch)
{
    std::vector<ScenarioSummary> out;
    for (const auto &row : batch.rows) {
        const bool same = !out.empty() && out.back().scenario == row.scenario && out.back().arch == row.arch &&
                          out.back().utility == row.utility;
        if (!same) {
            ScenarioSummary s;
            s.scenario = row.scenario;
            s.arch = row.arch;
            s.utility = row.utility;
            s.min_rate_bps = std::numeric_limits<double>::infinity();
            s.se = row.se;
            s.ee = row.ee;
            s.runtime_s = row.runtime_s;
            s.ok = row.status == "ok";
            out.push_back(s);
        }
        ScenarioSummary &s = out.back();
        s.sum_rate_bps += row.rate_bps;
        s.log_utility += row.log_rate;
        s.min_rate_bps = std::min(s.min_rate_bps, row.rate_bps);
    }
    return out;
}

namespace {

template <class Field>
double batch_mean(const BatchResult &batch, Architecture arch, UtilityKind kind, Field field)
{
    double total = 0.0;
    std::size_t n = 0;
    for (const auto &s : summarize(batch))
        if (s.ok && s.arch == arch && s.utility == kind) {
            total += field(s);
            ++n;
        }
    if (n == 0)
        throw std::invalid_argument("no successful scenarios for the requested architecture and utility");
    return total / static_cast<double>(n);
}

} // namespace

double mean_log_utility(const BatchResult &batch, Architecture arch, UtilityKind kind)
{
    return batch_mean(batch, arch, kind, [](const ScenarioSummary &s) { return s.log_utility; });
}

double mean_sum_rate(const BatchResult &batch, Architecture arch, UtilityKind kind)
{
    return batch_mean(batch, arch, kind, [](const ScenarioSummary &s) { return s.sum_rate_bps; });
}

double spectral_efficiency(const BatchResult &batch, Architecture arch, UtilityKind kind)
{
    return batch_mean(batch, arch, kind, [](const ScenarioSummary &s) { return s.se; });
}

double mean_energy_efficiency(const BatchResult &batch, Architecture arch, UtilityKind kind)
{
    return batch_mean(batch, arch, kind, [](const ScenarioSummary &s) { return s.ee; });
}

const char *to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::num_ttds: return "num_ttds";
    case SweepParameter::max_delay_s: return "max_delay_s";
    case SweepParameter::bandwidth_hz: return "bandwidth_hz";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string &s)
{
    if (s == "num_ttds") return SweepParameter::num_ttds;
    if (s == "max_delay_s") return SweepParameter::max_delay_s;
    if (s == "bandwidth_hz") return SweepParameter::bandwidth_hz;
    throw std::invalid_argument("unknown sweep parameter: " + s);
}

SystemConfig with_parameter(const SystemConfig &cfg, SweepParameter p, double value)
{
    SystemConfig out = cfg;
    switch (p) {
    case SweepParameter::num_ttds:
        if (value < 0.0)
            throw std::invalid_argument("num_ttds must be nonnegative");
        out.num_ttds = static_cast<std::size_t>(std::llround(value));
        break;
    case SweepParameter::max_delay_s:
        out.max_delay_s = value;
        break;
    case SweepParameter::bandwidth_hz:
        out.bandwidth_hz = value;
        break;
    }
    validate(out);
    return out;
}

SweepTable sweep(SweepParameter parameter, const std::vector<double> &values, const SystemConfig &base,
                 const BatchOptions &opts)
{
    if (values.empty())
        throw std::invalid_argument("sweep needs at least one value");
    SweepTable table;
    table.parameter = parameter;
    for (double v : values)
        table.entries.emplace_back(v, run_batch(with_parameter(base, parameter, v), opts));
    return table;
}

} // namespace jpta
