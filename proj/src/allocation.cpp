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
#include <limits>
#include <numeric>
#include <stdexcept>

namespace jpta {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 80;

void check_simplex_rows(const RealMatrix &b)
{
    for (std::size_t m = 0; m < b.rows(); ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < b.cols(); ++k) {
            if (!(b(m, k) >= -1e-9 && b(m, k) <= 1.0 + 1e-9))
                throw std::invalid_argument("relaxed allocation entry outside [0, 1]");
            s += b(m, k);
        }
        if (std::abs(s - 1.0) > 1e-6)
            throw std::invalid_argument("relaxed allocation row is not on the simplex");
    }
}

std::vector<double> relaxed_rates(const RealMatrix &b, const RealMatrix &c)
{
    std::vector<double> r(b.cols(), 0.0);
    for (std::size_t m = 0; m < b.rows(); ++m)
        for (std::size_t k = 0; k < b.cols(); ++k)
            r[k] += b(m, k) * c(m, k);
    return r;
}

// Utility plus the linearized penalty rho * Omega(b, b_lin).
double surrogate(const RealMatrix &b, const RealMatrix &b_lin, const RealMatrix &c, UtilityKind kind, double rho)
{
    const double u = utility(relaxed_rates(b, c), kind);
    if (u == kNegInf)
        return kNegInf;
    double omega = 0.0;
    for (std::size_t m = 0; m < b.rows(); ++m)
        for (std::size_t k = 0; k < b.cols(); ++k) {
            const double bl = b_lin(m, k);
            omega += bl * bl + 2.0 * bl * (b(m, k) - bl) - b(m, k);
        }
    return u + rho * omega;
}

RealMatrix surrogate_gradient(const RealMatrix &b, const RealMatrix &b_lin, const RealMatrix &c, UtilityKind kind,
                              double rho)
{
    const std::vector<double> r = relaxed_rates(b, c);
    RealMatrix g(b.rows(), b.cols());
    for (std::size_t m = 0; m < b.rows(); ++m)
        for (std::size_t k = 0; k < b.cols(); ++k) {
            const double dF = kind == UtilityKind::sum ? 1.0 : 1.0 / r[k];
            g(m, k) = dF * c(m, k) + rho * (2.0 * b_lin(m, k) - 1.0);
        }
    return g;
}

} // namespace

void project_rows_to_simplex(RealMatrix &b)
{
    const std::size_t cols = b.cols();
    std::vector<double> u(cols);
    for (std::size_t m = 0; m < b.rows(); ++m) {
        for (std::size_t k = 0; k < cols; ++k)
            u[k] = b(m, k);
        std::sort(u.begin(), u.end(), std::greater<>());
        double cumsum = 0.0, theta = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            cumsum += u[j];
            const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
            if (u[j] - t > 0.0)
                theta = t;
        }
        for (std::size_t k = 0; k < cols; ++k)
            b(m, k) = std::max(b(m, k) - theta, 0.0);
    }
}

double penalty_violation(const RealMatrix &relaxed)
{
    double v = 0.0;
    for (double x : relaxed.data())
        v += x - x * x;
    return std::max(v, 0.0);
}

RealMatrix one_hot(const Assignment &assignment, std::size_t num_users)
{
    RealMatrix b(assignment.size(), num_users, 0.0);
    for (std::size_t m = 0; m < assignment.size(); ++m)
        b(m, assignment[m]) = 1.0;
    return b;
}

ScaStepResult relaxed_allocation_step(const RealMatrix &relaxed, const RealMatrix &rate_coeff, UtilityKind kind,
                                      double rho, const ScaOptions &opts)
{
    if (relaxed.rows() != rate_coeff.rows() || relaxed.cols() != rate_coeff.cols())
        throw std::invalid_argument("relaxed allocation and rate table shapes differ");
    check_simplex_rows(relaxed);

    ScaStepResult out;
    out.relaxed = relaxed;
    const RealMatrix &b_lin = relaxed;
    RealMatrix &b = out.relaxed;
    if (b.cols() <= 1) {
        out.surrogate_trace.push_back(surrogate(b, b_lin, rate_coeff, kind, rho));
        return out;
    }

    double f = surrogate(b, b_lin, rate_coeff, kind, rho);
    out.surrogate_trace.push_back(f);
    if (f == kNegInf)
        return out; // starved user at the linearization point, nothing to ascend from

    double step = 0.0;
    for (std::size_t it = 0; it < opts.inner_max_steps; ++it) {
        const RealMatrix g = surrogate_gradient(b, b_lin, rate_coeff, kind, rho);
        double gmax = 0.0;
        for (double x : g.data())
            gmax = std::max(gmax, std::abs(x));
        if (gmax == 0.0)
            break;
        step = step == 0.0 ? opts.inner_step / gmax : 2.0 * step;

        bool accepted = false, converged = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt, step *= 0.5) {
            RealMatrix trial = b;
            for (std::size_t m = 0; m < b.rows(); ++m)
                for (std::size_t k = 0; k < b.cols(); ++k)
                    trial(m, k) += step * g(m, k);
            project_rows_to_simplex(trial);

            double move = 0.0, slope = 0.0;
            for (std::size_t i = 0; i < trial.data().size(); ++i) {
                const double d = trial.data()[i] - b.data()[i];
                move = std::max(move, std::abs(d));
                slope += g.data()[i] * d;
            }
            if (move < opts.inner_tol) {
                converged = true;
                break;
            }
            const double f_trial = surrogate(trial, b_lin, rate_coeff, kind, rho);
            if (f_trial >= f + kArmijo * slope && f_trial >= f) {
                b = std::move(trial);
                f = f_trial;
                accepted = true;
                break;
            }
        }
        if (!accepted || converged)
            break;
        out.surrogate_trace.push_back(f);
    }
    return out;
}

RealMatrix sca_allocate(RealMatrix relaxed, const RealMatrix &rate_coeff, UtilityKind kind, double rho,
                        const ScaOptions &opts)
{
    for (std::size_t l = 0; l < opts.max_iters; ++l) {
        ScaStepResult step = relaxed_allocation_step(relaxed, rate_coeff, kind, rho, opts);
        double move = 0.0;
        for (std::size_t i = 0; i < relaxed.data().size(); ++i)
            move = std::max(move, std::abs(step.relaxed.data()[i] - relaxed.data()[i]));
        relaxed = std::move(step.relaxed);
        if (move < opts.inner_tol)
            break;
    }
    return relaxed;
}

Assignment round_allocation(const RealMatrix &relaxed)
{
    Assignment a(relaxed.rows(), 0);
    for (std::size_t m = 0; m < relaxed.rows(); ++m) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < relaxed.cols(); ++k)
            if (relaxed(m, k) > relaxed(m, best))
                best = k;
        a[m] = best;
    }
    return a;
}

namespace {

double assignment_value(const Assignment &a, const RealMatrix &rate_coeff, UtilityKind kind)
{
    std::vector<double> rates(rate_coeff.cols(), 0.0);
    for (std::size_t m = 0; m < a.size(); ++m)
        rates[a[m]] += rate_coeff(m, a[m]);
    return utility(rates, kind);
}

} // namespace

Assignment improve_assignment(Assignment a, const RealMatrix &rate_coeff, UtilityKind kind)
{
    double value = assignment_value(a, rate_coeff, kind);
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t m = 0; m < a.size(); ++m)
            for (std::size_t k = 0; k < rate_coeff.cols(); ++k) {
                if (k == a[m])
                    continue;
                const std::size_t old = a[m];
                a[m] = k;
                const double v = assignment_value(a, rate_coeff, kind);
                if (v > value + 1e-12 * std::abs(value) || (!std::isfinite(value) && std::isfinite(v))) {
                    value = v;
                    moved = true;
                } else {
                    a[m] = old;
                }
            }
        for (std::size_t m = 0; m < a.size(); ++m)
            for (std::size_t n = m + 1; n < a.size(); ++n) {
                if (a[m] == a[n])
                    continue;
                std::swap(a[m], a[n]);
                const double v = assignment_value(a, rate_coeff, kind);
                if (v > value + 1e-12 * std::abs(value)) {
                    value = v;
                    moved = true;
                } else {
                    std::swap(a[m], a[n]);
                }
            }
    }
    return a;
}

Assignment solve_subband_allocation(const RealMatrix &rate_coeff, UtilityKind kind, const ScaOptions &opts)
{
    RealMatrix relaxed(rate_coeff.rows(), rate_coeff.cols(), 1.0 / static_cast<double>(rate_coeff.cols()));
    double rho = opts.penalty_init;
    for (int stage = 0; stage < 200; ++stage) {
        relaxed = sca_allocate(std::move(relaxed), rate_coeff, kind, rho, opts);
        if (penalty_violation(relaxed) < 1e-9)
            break;
        rho *= opts.penalty_growth;
    }
    return improve_assignment(round_allocation(relaxed), rate_coeff, kind);
}

Assignment greedy_allocation(const RealMatrix &cnr, const std::vector<double> &power_w, UtilityKind kind,
                             const SystemConfig &cfg)
{
    const std::size_t M = cnr.rows(), K = cnr.cols();
    const RealMatrix c = rate_coefficients(power_w, cnr, cfg);
    Assignment a(M, 0);

    if (kind == UtilityKind::sum || K == 1) {
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t k = 1; k < K; ++k)
                if (c(m, k) > c(m, a[m]))
                    a[m] = k;
        return a;
    }

    std::vector<bool> taken(M, false);
    std::vector<double> rate(K, 0.0);

    // Weakest user (lowest best-subband rate) picks first.
    std::vector<double> best_rate(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < M; ++m)
            best_rate[k] = std::max(best_rate[k], c(m, k));
    std::vector<std::size_t> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return best_rate[x] < best_rate[y]; });
    for (std::size_t k : order) {
        std::size_t pick = M;
        for (std::size_t m = 0; m < M; ++m)
            if (!taken[m] && (pick == M || c(m, k) > c(pick, k)))
                pick = m;
        if (pick == M)
            break; // fewer subbands than users
        taken[pick] = true;
        a[pick] = k;
        rate[k] += c(pick, k);
    }

    for (std::size_t round = 0; round < M; ++round) {
        double best_gain = -std::numeric_limits<double>::infinity();
        std::size_t bm = M, bk = 0;
        for (std::size_t m = 0; m < M; ++m) {
            if (taken[m])
                continue;
            for (std::size_t k = 0; k < K; ++k) {
                const double gain = rate[k] > 0.0 ? std::log1p(c(m, k) / rate[k])
                                                  : std::numeric_limits<double>::infinity();
                if (gain > best_gain) {
                    best_gain = gain;
                    bm = m;
                    bk = k;
                }
            }
        }
        if (bm == M)
            break;
        taken[bm] = true;
        a[bm] = bk;
        rate[bk] += c(bm, bk);
    }
    return a;
}

} // namespace jpta
