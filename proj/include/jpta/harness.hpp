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

#ifndef JPTA_HARNESS_HPP
#define JPTA_HARNESS_HPP

#include "jpta/arrays.hpp"
#include "jpta/baselines.hpp"
#include "jpta/optimizer.hpp"
#include "jpta/scenario.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jpta {

// Component power draw in watts.
struct PowerModel {
    double p_baseband_w = 0.3;
    double p_rfchain_w = 0.2;
    double p_ps_w = 0.03;
    double p_ttd_w = 0.1;
};

// Total consumption of an architecture, transmit power included.
//   fd:   P_t + P_BB + N P_RF
//   pa:   P_t + P_BB + P_RF + N P_PS
//   jpta: P_t + P_BB + P_RF + N_T P_TTD + N P_PS
double architecture_power_w(Architecture arch, const SystemConfig &cfg, const PowerModel &pm);

// SE divided by the architecture's power consumption.
double energy_efficiency(double se_bps_hz, Architecture arch, const SystemConfig &cfg, const PowerModel &pm);

// ---------------------------------------------------------------------------
// Gain maps
// ---------------------------------------------------------------------------

enum class SubbandSelector { one, all, averaged };
enum class SteeringMode {
    per_subband, // response evaluated at each subband frequency
    carrier      // response fixed at the carrier, isolates the beamformer's own frequency dependence
};

struct GainMapSpec {
    double angle_min_deg = 0.5, angle_max_deg = 179.5, angle_step_deg = 0.5;
    double range_min_m = 1.0, range_max_m = 20.0, range_step_m = 0.5;
    SubbandSelector selector = SubbandSelector::all;
    std::size_t subband = 0; // used with SubbandSelector::one
    SteeringMode steering = SteeringMode::per_subband;
};

struct GainSample {
    double angle_deg = 0.0;
    double range_m = 0.0;
    double f_hz = 0.0;
    double gain = 0.0;
};

// |a^H w_m|^2 over the grid. Each point uses the near- or far-field
// response according to its range. In averaged mode one row is emitted
// per (point, user), averaging over that user's subbands, with f_hz the
// mean of their frequencies.
std::vector<GainSample> gain_map(const std::vector<CVec> &weights, const Assignment &assignment,
                                 const std::vector<double> &freqs_hz, const SystemConfig &cfg,
                                 const GainMapSpec &spec);

// ---------------------------------------------------------------------------
// Batch experiments
// ---------------------------------------------------------------------------

struct BatchRow {
    std::uint64_t seed = 0;
    std::size_t scenario = 0;
    Architecture arch = Architecture::jpta;
    UtilityKind utility = UtilityKind::log;
    std::size_t user = 0;
    double rate_bps = 0.0;
    double log_rate = 0.0;
    double se = 0.0;
    double ee = 0.0;
    double runtime_s = 0.0;
    std::string status = "ok";

    bool operator==(const BatchRow &) const = default;
};

struct BatchResult {
    std::vector<BatchRow> rows;

    bool operator==(const BatchResult &) const = default;
};

struct BatchOptions {
    std::size_t scenarios = 50;
    std::uint64_t seed = 1;
    std::vector<Architecture> archs{Architecture::jpta};
    std::vector<UtilityKind> kinds{UtilityKind::log};
    bool record_runtime = true;
    unsigned threads = 0; // 0: hardware concurrency
    PowerModel power_model;
};

// Seed of scenario i within a batch.
std::uint64_t scenario_seed(std::uint64_t batch_seed, std::size_t scenario);

// Solves every scenario for every (architecture, utility) pair. Solver
// failures become rows with a non-"ok" status. Rows are ordered by
// (scenario, architecture, utility, user) regardless of thread timing.
BatchResult run_batch(const SystemConfig &cfg, const BatchOptions &opts);

// One entry per solved (scenario, arch, utility).
struct ScenarioSummary {
    std::size_t scenario = 0;
    Architecture arch = Architecture::jpta;
    UtilityKind utility = UtilityKind::log;
    double sum_rate_bps = 0.0;
    double log_utility = 0.0;
    double min_rate_bps = 0.0;
    double se = 0.0;
    double ee = 0.0;
    double runtime_s = 0.0;
    bool ok = true;
};

std::vector<ScenarioSummary> summarize(const BatchResult &batch);

// Batch means over successful scenarios matching arch and utility.
double mean_log_utility(const BatchResult &batch, Architecture arch, UtilityKind kind);
double mean_sum_rate(const BatchResult &batch, Architecture arch, UtilityKind kind);
double spectral_efficiency(const BatchResult &batch, Architecture arch, UtilityKind kind);
double mean_energy_efficiency(const BatchResult &batch, Architecture arch, UtilityKind kind);

// Empirical CDF: sorted rates with fractions i / n.
std::vector<std::pair<double, double>> rate_cdf(std::vector<double> rates);
// Pools every per-user rate of the matching rows.
std::vector<std::pair<double, double>> rate_cdf(const BatchResult &batch, Architecture arch, UtilityKind kind);

enum class SweepParameter { num_ttds, max_delay_s, bandwidth_hz };

const char *to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string &s);

// Returns a copy of cfg with the parameter set (num_ttds is rounded).
SystemConfig with_parameter(const SystemConfig &cfg, SweepParameter p, double value);

struct SweepTable {
    SweepParameter parameter = SweepParameter::num_ttds;
    std::vector<std::pair<double, BatchResult>> entries;
};

// One batch per value with the same batch seed, so every value sees the
// same user placements.
SweepTable sweep(SweepParameter parameter, const std::vector<double> &values, const SystemConfig &base,
                 const BatchOptions &opts);

} // namespace jpta

#endif
