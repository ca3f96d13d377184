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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jpta {

namespace {

void check_ideal(const std::vector<CVec> &ideal_w, const std::vector<double> &freqs_hz, const SystemConfig &cfg)
{
    if (cfg.num_ttds == 0)
        throw std::invalid_argument("beamformer fit requires at least one TTD");
    if (ideal_w.size() != freqs_hz.size())
        throw std::invalid_argument("one ideal beamformer per subband frequency required");
    for (const auto &w : ideal_w)
        if (w.size() != cfg.num_antennas)
            throw std::invalid_argument("ideal beamformer length does not match num_antennas");
}

// exp(+j 2 pi f_m tau) for every grid delay (outer) and subband (inner).
std::vector<CVec> grid_phasors(const std::vector<double> &grid, const std::vector<double> &freqs_hz)
{
    std::vector<CVec> e(grid.size(), CVec(freqs_hz.size()));
    for (std::size_t t = 0; t < grid.size(); ++t)
        for (std::size_t m = 0; m < freqs_hz.size(); ++m)
            e[t][m] = std::polar(1.0, 2.0 * kPi * freqs_hz[m] * grid[t]);
    return e;
}

// Index of the largest value; values within a relative 1e-12 of the
// maximum count as ties and resolve to the smallest index.
std::size_t first_argmax(const std::vector<double> &v, double scale)
{
    const double best = *std::max_element(v.begin(), v.end());
    const double slack = 1e-12 * std::max(scale, 1e-300);
    for (std::size_t t = 0; t < v.size(); ++t)
        if (v[t] >= best - slack)
            return t;
    return 0;
}

} // namespace

std::vector<CVec> ideal_beamformer(const Assignment &assignment, const ChannelSet &channels)
{
    if (assignment.size() != channels.num_subbands())
        throw std::invalid_argument("assignment length does not match the number of subbands");
    const std::size_t N = channels.num_antennas();
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    std::vector<CVec> w(assignment.size(), CVec(N));
    for (std::size_t m = 0; m < assignment.size(); ++m) {
        const CVec &h = channels.at(m, assignment[m]);
        for (std::size_t n = 0; n < N; ++n)
            w[m][n] = std::polar(scale, std::arg(h[n]));
    }
    return w;
}

std::vector<double> delay_grid(const SystemConfig &cfg)
{
    if (cfg.ttd_grid_points < 2)
        throw std::invalid_argument("ttd_grid_points must be at least 2");
    std::vector<double> grid(cfg.ttd_grid_points);
    const double last = static_cast<double>(cfg.ttd_grid_points - 1);
    for (std::size_t t = 0; t < grid.size(); ++t)
        grid[t] = cfg.max_delay_s * static_cast<double>(t) / last;
    grid.back() = cfg.max_delay_s;
    return grid;
}

PhaseShifterBank ps_update(const std::vector<CVec> &ideal_w, const TtdBank &ttd, const std::vector<double> &freqs_hz,
                           const SystemConfig &cfg)
{
    check_ideal(ideal_w, freqs_hz, cfg);
    const std::size_t NT = cfg.num_ttds, sub = cfg.subarray_size();
    PhaseShifterBank ps;
    ps.phases.assign(NT, std::vector<double>(sub, 0.0));
    for (std::size_t i = 0; i < NT; ++i) {
        CVec rot(freqs_hz.size());
        for (std::size_t m = 0; m < freqs_hz.size(); ++m)
            rot[m] = std::polar(1.0, 2.0 * kPi * freqs_hz[m] * ttd.delays_s.at(i));
        for (std::size_t j = 0; j < sub; ++j) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < freqs_hz.size(); ++m)
                s += ideal_w[m][i * sub + j] * rot[m];
            ps.phases[i][j] = std::abs(s) > 0.0 ? std::arg(s) : 0.0;
        }
    }
    return ps;
}

TtdBank ttd_update(const std::vector<CVec> &ideal_w, const PhaseShifterBank &ps, const std::vector<double> &freqs_hz,
                   const SystemConfig &cfg)
{
    check_ideal(ideal_w, freqs_hz, cfg);
    const std::size_t NT = cfg.num_ttds, sub = cfg.subarray_size(), M = freqs_hz.size();
    const std::vector<double> grid = delay_grid(cfg);
    const std::vector<CVec> e = grid_phasors(grid, freqs_hz);

    TtdBank ttd;
    ttd.delays_s.resize(NT);
    std::vector<double> value(grid.size());
    for (std::size_t i = 0; i < NT; ++i) {
        // c_m = w~_{m,i}^H phi_i, objective(tau) = sum_m Re{c_m exp(-j 2 pi f_m tau)}
        CVec c(M, 0.0);
        double scale = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            for (std::size_t j = 0; j < sub; ++j)
                c[m] += std::conj(ideal_w[m][i * sub + j]) * std::polar(1.0, ps.phases.at(i).at(j));
            scale += std::abs(c[m]);
        }
        for (std::size_t t = 0; t < grid.size(); ++t) {
            double v = 0.0;
            for (std::size_t m = 0; m < M; ++m)
                v += (c[m] * std::conj(e[t][m])).real();
            value[t] = v;
        }
        ttd.delays_s[i] = grid[first_argmax(value, scale)];
    }
    return ttd;
}

double fit_objective(const std::vector<CVec> &ideal_w, const JptaBeamformer &bf, const std::vector<double> &freqs_hz)
{
    const std::size_t NT = bf.ps.num_ttds(), sub = bf.ps.subarray_size();
    double total = 0.0;
    for (std::size_t i = 0; i < NT; ++i)
        for (std::size_t m = 0; m < freqs_hz.size(); ++m) {
            const cplx rot = std::polar(1.0, -2.0 * kPi * freqs_hz[m] * bf.ttd.delays_s[i]);
            cplx s = 0.0;
            for (std::size_t j = 0; j < sub; ++j)
                s += std::conj(ideal_w[m][i * sub + j]) * std::polar(1.0, bf.ps.phases[i][j]);
            total += (s * rot).real();
        }
    return total;
}

double fit_residual(const std::vector<CVec> &ideal_w, const JptaBeamformer &bf, const std::vector<double> &freqs_hz)
{
    double r = 0.0;
    for (std::size_t m = 0; m < freqs_hz.size(); ++m) {
        const CVec w = effective_beamformer(bf, freqs_hz[m]);
        for (std::size_t n = 0; n < w.size(); ++n)
            r += std::norm(ideal_w[m][n] - w[n]);
    }
    return r;
}

JptaBeamformer initial_beamformer(const std::vector<CVec> &ideal_w, const std::vector<double> &freqs_hz,
                                  const SystemConfig &cfg)
{
    check_ideal(ideal_w, freqs_hz, cfg);
    const std::size_t NT = cfg.num_ttds, sub = cfg.subarray_size(), M = freqs_hz.size();
    const std::vector<double> grid = delay_grid(cfg);
    const std::vector<CVec> e = grid_phasors(grid, freqs_hz);

    JptaBeamformer bf;
    bf.ttd.delays_s.resize(NT);
    std::vector<double> value(grid.size());
    for (std::size_t i = 0; i < NT; ++i) {
        // With the phase shifters optimized out, subarray i contributes
        // sum_j |sum_m w~_{m,i}[j] exp(j 2 pi f_m tau)|.
        for (std::size_t t = 0; t < grid.size(); ++t) {
            double v = 0.0;
            for (std::size_t j = 0; j < sub; ++j) {
                cplx s = 0.0;
                for (std::size_t m = 0; m < M; ++m)
                    s += ideal_w[m][i * sub + j] * e[t][m];
                v += std::abs(s);
            }
            value[t] = v;
        }
        bf.ttd.delays_s[i] = grid[first_argmax(value, value.front() + 1.0)];
    }
    bf.ps = ps_update(ideal_w, bf.ttd, freqs_hz, cfg);
    return bf;
}

FitResult fit_beamformer(const std::vector<CVec> &ideal_w, const std::vector<double> &freqs_hz,
                         const SystemConfig &cfg, const JptaBeamformer &init, std::size_t max_rounds, double tol)
{
    check_ideal(ideal_w, freqs_hz, cfg);
    FitResult out;
    out.bf = init;
    double current = fit_objective(ideal_w, out.bf, freqs_hz);
    out.objective_trace.push_back(current);

    for (std::size_t r = 0; r < max_rounds; ++r) {
        JptaBeamformer next = out.bf;
        next.ps = ps_update(ideal_w, next.ttd, freqs_hz, cfg);
        const double after_ps = fit_objective(ideal_w, next, freqs_hz);
        JptaBeamformer trial = next;
        trial.ttd = ttd_update(ideal_w, next.ps, freqs_hz, cfg);
        // Keep the previous delays if they beat every grid point (possible
        // only when the starting delays were off the grid).
        const double after_ttd = fit_objective(ideal_w, trial, freqs_hz);
        if (after_ttd >= after_ps)
            next = std::move(trial);
        const double value = std::max(after_ps, after_ttd);
        if (value < current)
            break; // rounding-level regression at a fixed point

        out.bf = std::move(next);
        out.rounds = r + 1;
        out.objective_trace.push_back(value);
        const double gain = value - current;
        current = value;
        if (gain <= tol * std::abs(value))
            break;
    }
    return out;
}

} // namespace jpta
