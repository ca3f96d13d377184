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

#include "jpta/optimizer.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace jpta;
using jpta::test::rel_diff;

namespace {

RealMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    RealMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = u(rng);
    return out;
}

double assignment_utility(const Assignment &a, const RealMatrix &rate_coeff, UtilityKind kind)
{
    std::vector<double> rates(rate_coeff.cols(), 0.0);
    for (std::size_t m = 0; m < a.size(); ++m)
        rates[a[m]] += rate_coeff(m, a[m]);
    return utility(rates, kind);
}

double enumerate_best(const RealMatrix &rate_coeff, UtilityKind kind)
{
    const std::size_t M = rate_coeff.rows(), K = rate_coeff.cols();
    std::size_t total = 1;
    for (std::size_t m = 0; m < M; ++m)
        total *= K;
    double best = kNegInf;
    for (std::size_t code = 0; code < total; ++code) {
        Assignment a(M);
        std::size_t c = code;
        for (std::size_t m = 0; m < M; ++m, c /= K)
            a[m] = c % K;
        best = std::max(best, assignment_utility(a, rate_coeff, kind));
    }
    return best;
}

} // namespace

// ---------------------------------------------------------------------------
// allocation
// ---------------------------------------------------------------------------

TEST(project_rows_to_simplex, feasible_and_idempotent)
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        RealMatrix b = random_matrix(rng, 4, 1 + t % 5, -2.0, 2.0);
        project_rows_to_simplex(b);
        for (std::size_t m = 0; m < b.rows(); ++m) {
            double s = 0.0;
            for (std::size_t k = 0; k < b.cols(); ++k) {
                EXPECT_GE(b(m, k), 0.0);
                s += b(m, k);
            }
            EXPECT_NEAR(s, 1.0, 1e-12);
        }
        RealMatrix again = b;
        project_rows_to_simplex(again);
        for (std::size_t i = 0; i < b.data().size(); ++i)
            EXPECT_NEAR(again.data()[i], b.data()[i], 1e-15);
    }
}

TEST(project_rows_to_simplex, is_nearest_point)
{
    // Any other simplex point is at least as far from the input.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const RealMatrix y = random_matrix(rng, 1, 3, -1.0, 2.0);
        RealMatrix p = y;
        project_rows_to_simplex(p);
        double dp = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            dp += (p(0, k) - y(0, k)) * (p(0, k) - y(0, k));
        for (int s = 0; s < 200; ++s) {
            double a = u(rng), b = u(rng);
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            const double q[3] = {a, b, 1.0 - a - b};
            double dq = 0.0;
            for (std::size_t k = 0; k < 3; ++k)
                dq += (q[k] - y(0, k)) * (q[k] - y(0, k));
            EXPECT_LE(dp, dq + 1e-12);
        }
    }
}

TEST(relaxed_allocation_step, single_user_unchanged)
{
    const RealMatrix b(3, 1, 1.0);
    std::mt19937_64 rng(3);
    const auto r = relaxed_allocation_step(b, random_matrix(rng, 3, 1, 1e8, 1e9), UtilityKind::log, 1.0, ScaOptions{});
    EXPECT_EQ(r.relaxed, b);
}

TEST(relaxed_allocation_step, binary_point_is_fixed_under_large_penalty)
{
    std::mt19937_64 rng(4);
    const RealMatrix rc = random_matrix(rng, 4, 3, 1e8, 1e9);
    const RealMatrix b = one_hot({0, 2, 1, 1}, 3);
    const auto r = relaxed_allocation_step(b, rc, UtilityKind::sum, 1e12, ScaOptions{});
    EXPECT_EQ(r.relaxed, b);
}

TEST(relaxed_allocation_step, surrogate_nondecreasing)
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t M = 2 + t % 6, K = 2 + t % 3;
        const RealMatrix rc = random_matrix(rng, M, K, 1e8, 1e9);
        RealMatrix b = random_matrix(rng, M, K, 0.0, 1.0);
        project_rows_to_simplex(b);
        const auto kind = t % 2 ? UtilityKind::sum : UtilityKind::log;
        const auto r = relaxed_allocation_step(b, rc, kind, 1e8 * (t % 4), ScaOptions{});
        ASSERT_FALSE(r.surrogate_trace.empty());
        for (std::size_t i = 1; i < r.surrogate_trace.size(); ++i)
            EXPECT_GE(r.surrogate_trace[i], r.surrogate_trace[i - 1] - 1e-9 * std::abs(r.surrogate_trace[i - 1]));
    }
}

TEST(round_allocation, argmax_and_ties)
{
    RealMatrix b(3, 2);
    b(0, 0) = 0.1;
    b(0, 1) = 0.9;
    b(1, 0) = 0.5;
    b(1, 1) = 0.5;
    b(2, 0) = 1.0;
    b(2, 1) = 0.0;
    EXPECT_EQ(round_allocation(b), (Assignment{1, 0, 0}));
    const Assignment a{1, 0, 2, 2};
    EXPECT_EQ(round_allocation(one_hot(a, 3)), a);
}

TEST(penalty_violation, zero_at_vertices)
{
    EXPECT_EQ(penalty_violation(one_hot({0, 1, 1}, 2)), 0.0);
    EXPECT_NEAR(penalty_violation(RealMatrix(1, 2, 0.5)), 0.5, 1e-15);
}

TEST(solve_subband_allocation, two_by_two_sum_matches_enumeration)
{
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        const RealMatrix rc = random_matrix(rng, 2, 2, 1e8, 1e9);
        const auto a = solve_subband_allocation(rc, UtilityKind::sum, ScaOptions{});
        EXPECT_NEAR(assignment_utility(a, rc, UtilityKind::sum), enumerate_best(rc, UtilityKind::sum), 1e-6);
        for (std::size_t m = 0; m < 2; ++m)
            EXPECT_EQ(a[m], rc(m, 0) >= rc(m, 1) ? 0u : 1u);
    }
}

TEST(solve_subband_allocation, log_close_to_enumeration)
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        const RealMatrix rc = random_matrix(rng, 4, 3, 1e8, 1e9);
        const auto a = solve_subband_allocation(rc, UtilityKind::log, ScaOptions{});
        const double best = enumerate_best(rc, UtilityKind::log);
        EXPECT_LE(std::abs(assignment_utility(a, rc, UtilityKind::log) - best), 0.01 * std::abs(best));
    }
}

TEST(greedy_allocation, single_user_takes_everything)
{
    SystemConfig cfg = jpta::test::small_config(8, 5, 2, 1);
    std::mt19937_64 rng(8);
    const auto a = greedy_allocation(random_matrix(rng, 5, 1, 0.0, 1.0), std::vector<double>(5, 2.0),
                                     UtilityKind::log, cfg);
    EXPECT_EQ(a, Assignment(5, 0));
}

TEST(greedy_allocation, log_serves_everyone)
{
    SystemConfig cfg = jpta::test::small_config(8, 6, 2, 4);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        const auto a = greedy_allocation(random_matrix(rng, 6, 4, 0.1, 10.0), std::vector<double>(6, 1.0),
                                         UtilityKind::log, cfg);
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_NE(std::find(a.begin(), a.end(), k), a.end());
    }
}

// ---------------------------------------------------------------------------
// beamforming
// ---------------------------------------------------------------------------

TEST(ideal_beamformer, real_positive_channel)
{
    ChannelSet ch;
    ch.h = {{CVec(16, cplx(0.3, 0.0))}};
    ch.subband_frequencies_hz = {100e9};
    const auto w = ideal_beamformer({0}, ch);
    for (const auto &x : w[0])
        EXPECT_NEAR(std::abs(x - cplx(0.25, 0.0)), 0.0, 1e-15);
}

TEST(ideal_beamformer, achieves_array_gain_n)
{
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
        CVec a(32);
        std::uniform_real_distribution<double> u(-kPi, kPi);
        for (auto &x : a)
            x = std::polar(1.0, u(rng));
        ChannelSet ch;
        ch.h = {{a}};
        const auto w = ideal_beamformer({0}, ch);
        EXPECT_LE(rel_diff(array_gain(a, w[0]), 32.0), 1e-12);
    }
}

TEST(ps_update, single_tone_aligns_with_target)
{
    std::mt19937_64 rng(12);
    SystemConfig cfg = jpta::test::small_config(16, 1, 4, 1);
    const std::vector<CVec> w{jpta::test::random_unit_modulus(rng, 16)};
    const TtdBank ttd{{0.0, 0.0, 0.0, 0.0}};
    const auto ps = ps_update(w, ttd, {100e9}, cfg);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_NEAR(std::abs(std::polar(1.0, ps.phases[i][j]) - w[0][i * 4 + j] * 4.0), 0.0, 1e-12);
}

TEST(ps_update, minimal_residual_against_random_search)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-kPi, kPi), tau(0.0, 5e-9);
    SystemConfig cfg = jpta::test::small_config(8, 4, 2, 1);
    const auto f = subband_frequencies(cfg);
    for (int t = 0; t < 20; ++t) {
        std::vector<CVec> w;
        for (std::size_t m = 0; m < 4; ++m)
            w.push_back(jpta::test::random_unit_modulus(rng, 8));
        JptaBeamformer bf;
        bf.ttd.delays_s = {tau(rng), tau(rng)};
        bf.ps = ps_update(w, bf.ttd, f, cfg);
        const double best = fit_residual(w, bf, f);
        for (int s = 0; s < 300; ++s) {
            JptaBeamformer other = bf;
            for (auto &row : other.ps.phases)
                for (auto &p : row)
                    p = u(rng);
            EXPECT_LE(best, fit_residual(w, other, f) + 1e-12);
        }
    }
}

TEST(ps_update, zero_target_gives_zero_phase)
{
    SystemConfig cfg = jpta::test::small_config(4, 1, 2, 1);
    const auto ps = ps_update({CVec(4, 0.0)}, TtdBank{{0.0, 0.0}}, {100e9}, cfg);
    for (const auto &row : ps.phases)
        for (double p : row)
            EXPECT_EQ(p, 0.0);
}

TEST(ttd_update, aligned_single_tone_picks_zero)
{
    std::mt19937_64 rng(14);
    SystemConfig cfg = jpta::test::small_config(16, 1, 4, 1);
    const std::vector<CVec> w{jpta::test::random_unit_modulus(rng, 16)};
    const auto ps = ps_update(w, TtdBank{{0.0, 0.0, 0.0, 0.0}}, {100e9}, cfg);
    const auto ttd = ttd_update(w, ps, {100e9}, cfg);
    for (double t : ttd.delays_s)
        EXPECT_EQ(t, 0.0);
}

TEST(ttd_update, matches_independent_grid_evaluation)
{
    std::mt19937_64 rng(15);
    SystemConfig cfg = jpta::test::small_config(8, 4, 2, 1);
    cfg.ttd_grid_points = 101;
    const auto f = subband_frequencies(cfg);
    const auto grid = delay_grid(cfg);
    ASSERT_EQ(grid.size(), 101u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_DOUBLE_EQ(grid.back(), cfg.max_delay_s);
    for (int t = 0; t < 20; ++t) {
        std::vector<CVec> w;
        for (std::size_t m = 0; m < 4; ++m)
            w.push_back(jpta::test::random_unit_modulus(rng, 8));
        JptaBeamformer bf;
        bf.ttd.delays_s = {0.0, 0.0};
        bf.ps = ps_update(w, bf.ttd, f, cfg);
        bf.ttd = ttd_update(w, bf.ps, f, cfg);
        const double got = fit_objective(w, bf, f);
        // every single-delay change on the grid is no better
        for (std::size_t i = 0; i < 2; ++i)
            for (double g : grid) {
                JptaBeamformer other = bf;
                other.ttd.delays_s[i] = g;
                EXPECT_LE(fit_objective(w, other, f), got + 1e-12);
            }
    }
}

TEST(fit_beamformer, objective_nondecreasing)
{
    std::mt19937_64 rng(16);
    SystemConfig cfg = jpta::test::small_config(16, 8, 4, 2);
    cfg.ttd_grid_points = 200;
    const auto f = subband_frequencies(cfg);
    for (int t = 0; t < 20; ++t) {
        std::vector<CVec> w;
        for (std::size_t m = 0; m < 8; ++m)
            w.push_back(jpta::test::random_unit_modulus(rng, 16));
        const auto fit = fit_beamformer(w, f, cfg, make_flat_beamformer(cfg), 30, 1e-9);
        for (std::size_t i = 1; i < fit.objective_trace.size(); ++i)
            EXPECT_GE(fit.objective_trace[i], fit.objective_trace[i - 1]);
        EXPECT_NO_THROW(check_beamformer(fit.bf, cfg));
    }
}

TEST(fit_beamformer, exact_fit_with_one_shifter_per_delay)
{
    std::mt19937_64 rng(17);
    SystemConfig cfg = jpta::test::small_config(16, 1, 16, 1);
    const auto f = subband_frequencies(cfg);
    const std::vector<CVec> w{jpta::test::random_unit_modulus(rng, 16)};
    const auto fit = fit_beamformer(w, f, cfg, initial_beamformer(w, f, cfg), 10, 1e-12);
    EXPECT_LE(fit_residual(w, fit.bf, f), 1e-10);
}

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

TEST(waterfill, symmetric_and_hand_cases)
{
    const auto eq = waterfill({1.0, 1.0}, 4.0);
    EXPECT_NEAR(eq.power_w[0], 2.0, 1e-12);
    EXPECT_NEAR(eq.power_w[1], 2.0, 1e-12);
    const auto hand = waterfill({1.0, 0.5}, 3.0);
    EXPECT_NEAR(hand.power_w[0], 2.0, 1e-12);
    EXPECT_NEAR(hand.power_w[1], 1.0, 1e-12);
    EXPECT_NEAR(hand.water_level, 3.0, 1e-12);
}

TEST(waterfill, degenerate_is_uniform)
{
    const auto r = waterfill({0.0, 0.0, 0.0}, 3.0);
    EXPECT_TRUE(r.degenerate);
    for (double p : r.power_w)
        EXPECT_DOUBLE_EQ(p, 1.0);
}

TEST(waterfill, inactive_weak_subband)
{
    const auto r = waterfill({10.0, 0.01}, 1.0);
    EXPECT_NEAR(r.power_w[0], 1.0, 1e-12);
    EXPECT_EQ(r.power_w[1], 0.0);
}

TEST(waterfill, dense_level_grid_oracle)
{
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int t = 0; t < 30; ++t) {
        std::vector<double> d(3);
        for (auto &x : d)
            x = u(rng);
        const double P = 2.0;
        const auto r = waterfill(d, P);
        // scan water levels and keep the one that spends P most closely
        double best_mu = 0.0, best_gap = 1e300;
        const double hi = 1.0 / *std::min_element(d.begin(), d.end()) + P;
        for (int i = 0; i <= 200000; ++i) {
            const double mu = hi * i / 200000.0;
            double s = 0.0;
            for (double x : d)
                s += std::max(0.0, mu - 1.0 / x);
            if (std::abs(s - P) < best_gap) {
                best_gap = std::abs(s - P);
                best_mu = mu;
            }
        }
        EXPECT_NEAR(r.water_level, best_mu, 2.0 * hi / 200000.0);
    }
}

TEST(power_log_utility, single_user_equals_waterfill)
{
    std::mt19937_64 rng(19);
    SystemConfig cfg = jpta::test::small_config(8, 4, 2, 1);
    const RealMatrix cnr = random_matrix(rng, 4, 1, 0.05, 3.0);
    const Assignment a(4, 0);
    const auto p = power_log_utility(a, cnr, cfg);
    const auto w = waterfill_sum_rate(a, cnr, cfg);
    for (std::size_t m = 0; m < 4; ++m)
        EXPECT_NEAR(p[m], w.power_w[m], 1e-9 * cfg.transmit_power_w);
}

TEST(power_log_utility, symmetric_users_split_evenly)
{
    SystemConfig cfg = jpta::test::small_config(8, 2, 2, 2);
    const RealMatrix cnr(2, 2, 0.7);
    const auto p = power_log_utility({0, 1}, cnr, cfg);
    EXPECT_NEAR(p[0], cfg.transmit_power_w / 2.0, 1e-9);
    EXPECT_NEAR(p[1], cfg.transmit_power_w / 2.0, 1e-9);
}

TEST(power_log_utility, one_dimensional_grid_oracle)
{
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    SystemConfig cfg = jpta::test::small_config(8, 2, 2, 2);
    const double P = cfg.transmit_power_w;
    for (int t = 0; t < 20; ++t) {
        RealMatrix cnr(2, 2, 0.0);
        cnr(0, 0) = u(rng);
        cnr(1, 1) = u(rng);
        auto obj = [&](double p0) {
            return std::log(std::log2(1.0 + p0 * cnr(0, 0))) + std::log(std::log2(1.0 + (P - p0) * cnr(1, 1)));
        };
        double best = kNegInf;
        for (int i = 1; i < 100000; ++i)
            best = std::max(best, obj(P * i / 100000.0));
        const auto p = power_log_utility({0, 1}, cnr, cfg);
        EXPECT_NEAR(p[0] + p[1], P, 1e-9 * P);
        EXPECT_GE(obj(p[0]), best - 1e-9);
        EXPECT_LE(log_power_stationarity({0, 1}, cnr, p, cfg), 1e-6);
    }
}

TEST(power_log_utility, starved_user_is_named)
{
    SystemConfig cfg = jpta::test::small_config(8, 2, 2, 2);
    RealMatrix cnr(2, 2, 1.0);
    try {
        power_log_utility({0, 0}, cnr, cfg);
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("user 1"), std::string::npos) << e.what();
    }
}

// ---------------------------------------------------------------------------
// alternating optimization
// ---------------------------------------------------------------------------

TEST(alternating_optimize, single_user_matched_filter_bound)
{
    SystemConfig cfg = jpta::test::small_config(16, 1, 16, 1);
    const auto user = make_user(1.2, 3.0, cfg);
    const auto ch = synthesize_channels({user}, cfg);
    const auto s = alternating_optimize(ch, cfg, UtilityKind::log, default_ao_options(cfg));
    const double beta = path_gain(3.0, cfg.carrier_frequency_hz, cfg);
    const double expect = cfg.bandwidth_hz * std::log2(1.0 + cfg.transmit_power_w * 16.0 * beta * beta / cfg.noise_power_w());
    EXPECT_LE(rel_diff(s.rates[0], expect), 1e-6);
    const auto a = array_response(user, cfg.carrier_frequency_hz, cfg);
    EXPECT_LE(rel_diff(array_gain(a, effective_beamformer(s.bf, cfg.carrier_frequency_hz)), 16.0), 1e-6);
}

TEST(alternating_optimize, monotone_trace_and_feasible_plan)
{
    std::mt19937_64 rng(21);
    SystemConfig cfg;
    cfg.ttd_grid_points = 400;
    for (int t = 0; t < 4; ++t) {
        const auto ch = synthesize_channels(sample_users(rng(), cfg), cfg);
        for (auto kind : {UtilityKind::sum, UtilityKind::log}) {
            const auto s = alternating_optimize(ch, cfg, kind, default_ao_options(cfg));
            for (std::size_t i = 1; i < s.utility_trace.size(); ++i)
                EXPECT_GE(s.utility_trace[i], s.utility_trace[i - 1]);
            EXPECT_NO_THROW(check_plan(s.plan, 2, cfg));
            EXPECT_NO_THROW(check_beamformer(s.bf, cfg));
            EXPECT_LE(s.iteration, cfg.ao_max_iters);
            EXPECT_LE(rel_diff(utility(s.rates, kind), s.utility_trace.back()), 1e-12);
        }
    }
}

TEST(alternating_optimize, trace_callback_and_penalty_growth)
{
    SystemConfig cfg;
    const auto ch = synthesize_channels(sample_users(5, cfg), cfg);
    auto opts = default_ao_options(cfg);
    std::vector<TraceRecord> seen;
    opts.on_trace = [&](const TraceRecord &r) { seen.push_back(r); };
    const auto s = alternating_optimize(ch, cfg, UtilityKind::log, opts);
    ASSERT_EQ(seen.size(), s.trace.size());
    for (std::size_t i = 1; i < seen.size(); ++i) {
        EXPECT_EQ(seen[i].iter, i);
        EXPECT_NEAR(seen[i].penalty / seen[i - 1].penalty, 5.0, 1e-12);
    }
}

TEST(alternating_optimize, rejects_zero_ttds)
{
    SystemConfig cfg;
    cfg.num_ttds = 0;
    const auto ch = synthesize_channels(sample_users(5, cfg), cfg);
    EXPECT_THROW(alternating_optimize(ch, cfg, UtilityKind::log, default_ao_options(cfg)), std::invalid_argument);
}
