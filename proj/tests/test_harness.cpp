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
#include "jpta/harness.hpp"
#include "jpta/serialization.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace jpta;
using jpta::test::rel_diff;

TEST(architecture_power, hand_wattages)
{
    SystemConfig cfg;
    const PowerModel pm;
    EXPECT_LE(rel_diff(architecture_power_w(Architecture::fd, cfg, pm), 23.1), 1e-12);
    EXPECT_LE(rel_diff(architecture_power_w(Architecture::pa, cfg, pm), 12.42), 1e-12);
    EXPECT_LE(rel_diff(architecture_power_w(Architecture::jpta, cfg, pm), 14.02), 1e-12);
}

TEST(energy_efficiency, decreasing_in_ttd_count)
{
    SystemConfig cfg;
    double prev = 1e300;
    for (std::size_t nt : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        cfg.num_ttds = nt;
        const double ee = energy_efficiency(10.0, Architecture::jpta, cfg, PowerModel{});
        EXPECT_LT(ee, prev);
        prev = ee;
    }
}

TEST(rate_cdf, hand_cases)
{
    const auto one = rate_cdf(std::vector<double>{4.0});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], std::make_pair(4.0, 1.0));
    const auto three = rate_cdf(std::vector<double>{3.0, 1.0, 2.0});
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three[0].first, 1.0);
    EXPECT_DOUBLE_EQ(three[0].second, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(three[1].second, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(three[2].second, 1.0);
}

TEST(rate_cdf, monotone_in_both_coordinates)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1e9);
    std::vector<double> r(500);
    for (auto &x : r)
        x = u(rng);
    const auto cdf = rate_cdf(r);
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        EXPECT_GE(cdf[i].first, cdf[i - 1].first);
        EXPECT_GT(cdf[i].second, cdf[i - 1].second);
    }
}

TEST(gain_map, fd_peak_at_user)
{
    SystemConfig cfg;
    const auto users = std::vector<UserPosition>{make_user(kPi / 3.0, 2.0, cfg), make_user(2.0, 10.0, cfg)};
    const auto ch = synthesize_channels(users, cfg);
    Assignment a(16, 1);
    a[0] = 0;
    const auto fd = fd_beamformer(a, ch);
    GainMapSpec spec;
    spec.angle_min_deg = spec.angle_max_deg = 60.0;
    spec.range_min_m = spec.range_max_m = 2.0;
    spec.selector = SubbandSelector::one;
    spec.subband = 0;
    const auto g = gain_map(fd.w, a, ch.subband_frequencies_hz, cfg, spec);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_LE(rel_diff(g[0].gain, 64.0), 1e-9);
}

TEST(gain_map, grid_shape_and_errors)
{
    SystemConfig cfg;
    const auto ch = synthesize_channels(sample_users(2, cfg), cfg);
    Assignment a(16, 0);
    a[3] = 1;
    const auto w = ideal_beamformer(a, ch);
    GainMapSpec spec;
    spec.angle_step_deg = 10.0;
    spec.range_step_m = 5.0;
    const auto all = gain_map(w, a, ch.subband_frequencies_hz, cfg, spec);
    // angles 0.5, 10.5, ..., 170.5 and ranges 1, 6, 11, 16
    EXPECT_EQ(all.size(), 18u * 4u * 16u);
    spec.selector = SubbandSelector::averaged;
    EXPECT_EQ(gain_map(w, a, ch.subband_frequencies_hz, cfg, spec).size(), 18u * 4u * 2u);
    spec.range_step_m = 0.0;
    EXPECT_THROW(gain_map(w, a, ch.subband_frequencies_hz, cfg, spec), std::invalid_argument);
}

TEST(gain_map, pa_map_identical_for_every_subband_with_carrier_steering)
{
    SystemConfig cfg;
    const auto ch = synthesize_channels(sample_users(3, cfg), cfg);
    Assignment a(16, 0);
    for (std::size_t m = 8; m < 16; ++m)
        a[m] = 1;
    const auto w = pa_weights(pa_beamformer(ideal_beamformer(a, ch)), 16);
    GainMapSpec spec;
    spec.angle_step_deg = 15.0;
    spec.range_step_m = 4.0;
    spec.steering = SteeringMode::carrier;
    const auto g = gain_map(w, a, ch.subband_frequencies_hz, cfg, spec);
    for (std::size_t i = 0; i < g.size(); i += 16)
        for (std::size_t m = 1; m < 16; ++m)
            EXPECT_EQ(g[i + m].gain, g[i].gain);
}

TEST(run_batch, shape_determinism_and_threads)
{
    SystemConfig cfg;
    BatchOptions opts;
    opts.scenarios = 3;
    opts.seed = 77;
    opts.archs = {Architecture::pa, Architecture::jpta};
    opts.kinds = {UtilityKind::sum, UtilityKind::log};
    opts.record_runtime = false;
    opts.threads = 1;
    const auto a = run_batch(cfg, opts);
    EXPECT_EQ(a.rows.size(), 3u * 2u * 2u * 2u);
    opts.threads = 3;
    const auto b = run_batch(cfg, opts);
    EXPECT_EQ(a, b);
    EXPECT_EQ(batch_to_csv(a), batch_to_csv(b));
    for (const auto &r : a.rows)
        EXPECT_EQ(r.status, "ok");
}

TEST(run_batch, config_errors_abort)
{
    SystemConfig cfg;
    cfg.transmit_power_w = 0.0;
    BatchOptions opts;
    opts.scenarios = 1;
    EXPECT_THROW(run_batch(cfg, opts), std::invalid_argument);
    opts.scenarios = 0;
    EXPECT_THROW(run_batch(SystemConfig{}, opts), std::invalid_argument);
}

TEST(run_batch, summary_means)
{
    SystemConfig cfg;
    BatchOptions opts;
    opts.scenarios = 2;
    opts.archs = {Architecture::fd};
    opts.kinds = {UtilityKind::sum};
    const auto batch = run_batch(cfg, opts);
    const auto s = summarize(batch);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_GT(s[0].runtime_s, 0.0);
    const double se = (s[0].sum_rate_bps + s[1].sum_rate_bps) / 2.0 / cfg.bandwidth_hz;
    EXPECT_LE(rel_diff(spectral_efficiency(batch, Architecture::fd, UtilityKind::sum), se), 1e-12);
    EXPECT_THROW(spectral_efficiency(batch, Architecture::pa, UtilityKind::sum), std::invalid_argument);
}

TEST(sweep, singleton_equals_run_batch_and_shares_placements)
{
    SystemConfig cfg;
    BatchOptions opts;
    opts.scenarios = 2;
    opts.record_runtime = false;
    const auto table = sweep(SweepParameter::num_ttds, {16.0}, cfg, opts);
    ASSERT_EQ(table.entries.size(), 1u);
    EXPECT_EQ(table.entries[0].second, run_batch(cfg, opts));
    EXPECT_THROW(with_parameter(cfg, SweepParameter::num_ttds, 5.0), std::invalid_argument);
    EXPECT_EQ(with_parameter(cfg, SweepParameter::num_ttds, 0.0).num_ttds, 0u);
    EXPECT_THROW(sweep(SweepParameter::num_ttds, {}, cfg, opts), std::invalid_argument);
}

TEST(serialization, batch_csv_round_trip)
{
    BatchResult b;
    BatchRow r;
    r.seed = 3;
    r.scenario = 1;
    r.arch = Architecture::pa;
    r.utility = UtilityKind::sum;
    r.user = 2;
    r.rate_bps = 1.2345678901234567e9;
    r.log_rate = kNegInf;
    r.se = 0.1;
    r.ee = 1.0 / 3.0;
    r.runtime_s = 0.25;
    r.status = "error: user 1, starved";
    b.rows.push_back(r);
    r.status = "ok";
    r.log_rate = std::log(r.rate_bps);
    b.rows.push_back(r);
    EXPECT_EQ(batch_from_csv(batch_to_csv(b)), b);
    EXPECT_THROW(batch_from_csv("nope\n"), std::invalid_argument);
}

TEST(serialization, sweep_and_gain_map_round_trip)
{
    SweepTable t;
    t.parameter = SweepParameter::max_delay_s;
    BatchRow r;
    r.rate_bps = 7.0;
    t.entries.push_back({5e-9, BatchResult{{r}}});
    t.entries.push_back({5e-11, BatchResult{{r, r}}});
    const auto back = sweep_from_csv(sweep_to_csv(t));
    EXPECT_EQ(back.parameter, t.parameter);
    ASSERT_EQ(back.entries.size(), 2u);
    EXPECT_EQ(back.entries[1].first, 5e-11);
    EXPECT_EQ(back.entries[1].second, t.entries[1].second);

    const std::vector<GainSample> g{{0.5, 1.0, 95e9, 63.999999999}, {1.0, 1.5, 1.0e11, 0.0}};
    const auto gb = gain_map_from_csv(gain_map_to_csv(g));
    ASSERT_EQ(gb.size(), 2u);
    EXPECT_EQ(gb[0].gain, g[0].gain);
    EXPECT_EQ(gb[1].f_hz, g[1].f_hz);
}

TEST(serialization, solution_json_round_trip)
{
    SystemConfig cfg;
    const auto ch = synthesize_channels(sample_users(4, cfg), cfg);
    for (auto arch : {Architecture::fd, Architecture::pa, Architecture::jpta}) {
        const auto s = solve(arch, ch, cfg, UtilityKind::log, default_ao_options(cfg));
        const auto back = solution_from_json(solution_to_json(s, UtilityKind::log));
        EXPECT_EQ(back.arch, arch);
        EXPECT_EQ(back.plan.assignment, s.plan.assignment);
        EXPECT_EQ(back.plan.power_w, s.plan.power_w);
        EXPECT_EQ(back.rates, s.rates);
        EXPECT_EQ(back.trace.size(), s.trace.size());
        if (arch == Architecture::jpta) {
            EXPECT_EQ(back.jpta.ps.phases, s.jpta.ps.phases);
            for (std::size_t i = 0; i < s.jpta.ttd.delays_s.size(); ++i)
                EXPECT_LE(rel_diff(back.jpta.ttd.delays_s[i], s.jpta.ttd.delays_s[i]), 1e-15);
        }
        if (arch == Architecture::pa)
            EXPECT_EQ(back.pa.phases, s.pa.phases);
        if (arch == Architecture::fd)
            EXPECT_EQ(back.fd.w, s.fd.w);
    }
    EXPECT_THROW(solution_from_json("{}"), std::invalid_argument);
    EXPECT_THROW(beamformer_from_json("{\"phases\": [[0]], \"delays_ns\": []}"), std::invalid_argument);
}
