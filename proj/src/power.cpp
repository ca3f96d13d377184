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
#include <stdexcept>
#include <string>

namespace jpta {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double total_fill(const std::vector<double> &cnr, double level)
{
    double s = 0.0;
    for (double d : cnr)
        if (d > 0.0)
            s += std::max(level - 1.0 / d, 0.0);
    return s;
}

// Power and rate-sum (in log2 units) of one user's water-filling at a level.
struct UserFill {
    double power = 0.0;
    double bits = 0.0;
};

UserFill fill_at(const std::vector<double> &cnr, double level)
{
    UserFill f;
    for (double d : cnr) {
        if (d <= 0.0)
            continue;
        const double p = level - 1.0 / d;
        if (p > 0.0) {
            f.power += p;
            f.bits += std::log2(level * d);
        }
    }
    return f;
}

// Smallest level at which the user has positive power.
double floor_level(const std::vector<double> &cnr)
{
    double best = std::numeric_limits<double>::infinity();
    for (double d : cnr)
        if (d > 0.0)
            best = std::min(best, 1.0 / d);
    return best;
}

// Level mu with mu * bits(mu) = target. mu * bits(mu) is continuous and
// strictly increasing above floor_level.
double level_for_target(const std::vector<double> &cnr, double target)
{
    double lo = floor_level(cnr);
    double hi = lo * 2.0;
    while (hi * fill_at(cnr, hi).bits < target)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * fill_at(cnr, mid).bits < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi)
            break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

PowerResult waterfill(const std::vector<double> &cnr, double p_total)
{
    if (!(p_total > 0.0))
        throw std::invalid_argument("total power must be positive");
    PowerResult out;
    const std::size_t M = cnr.size();
    out.power_w.assign(M, 0.0);
    if (M == 0)
        return out;

    double max_inv = 0.0;
    bool any = false;
    for (double d : cnr) {
        if (d < 0.0 || std::isnan(d))
            throw std::invalid_argument("CNR values must be nonnegative");
        if (d > 0.0) {
            any = true;
            max_inv = std::max(max_inv, 1.0 / d);
        }
    }
    if (!any) {
        out.degenerate = true;
        out.power_w.assign(M, p_total / static_cast<double>(M));
        return out;
    }

    double lo = 0.0, hi = max_inv + p_total;
    for (int it = 0; it < 400 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total_fill(cnr, mid) < p_total ? lo : hi) = mid;
    }
    double level = 0.5 * (lo + hi);

    // Refine on the identified active set so the budget is met exactly.
    for (int pass = 0; pass < 4; ++pass) {
        double inv_sum = 0.0;
        std::size_t active = 0;
        for (double d : cnr)
            if (d > 0.0 && level - 1.0 / d > 0.0) {
                inv_sum += 1.0 / d;
                ++active;
            }
        if (active == 0)
            break;
        const double exact = (p_total + inv_sum) / static_cast<double>(active);
        if (exact == level)
            break;
        level = exact;
    }

    out.water_level = level;
    for (std::size_t m = 0; m < M; ++m)
        if (cnr[m] > 0.0)
            out.power_w[m] = std::max(level - 1.0 / cnr[m], 0.0);
    return out;
}

std::vector<double> assigned_cnr(const Assignment &assignment, const RealMatrix &cnr)
{
    std::vector<double> d(assignment.size());
    for (std::size_t m = 0; m < assignment.size(); ++m)
        d[m] = cnr(m, assignment[m]);
    return d;
}

PowerResult waterfill_sum_rate(const Assignment &assignment, const RealMatrix &cnr, const SystemConfig &cfg)
{
    return waterfill(assigned_cnr(assignment, cnr), cfg.transmit_power_w);
}

std::vector<double> power_log_utility(const Assignment &assignment, const RealMatrix &cnr, const SystemConfig &cfg)
{
    const std::size_t M = assignment.size(), K = cnr.cols();
    std::vector<std::vector<double>> per_user(K);
    std::vector<std::vector<std::size_t>> index(K);
    for (std::size_t m = 0; m < M; ++m) {
        per_user.at(assignment[m]).push_back(cnr(m, assignment[m]));
        index[assignment[m]].push_back(m);
    }
    for (std::size_t k = 0; k < K; ++k) {
        const bool usable = std::any_of(per_user[k].begin(), per_user[k].end(), [](double d) { return d > 0.0; });
        if (!usable)
            throw std::invalid_argument("log-utility power allocation: user " + std::to_string(k) +
                                        " has no subband with positive CNR");
    }

    // At the optimum mu_k * bits_k(mu_k) is the same for every user. Search
    // that common target so the user powers exhaust the budget.
    auto total_power = [&](double target, std::vector<double> *levels) {
        double p = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double level = level_for_target(per_user[k], target);
            if (levels)
                (*levels)[k] = level;
            p += fill_at(per_user[k], level).power;
        }
        return p;
    };

    const double budget = cfg.transmit_power_w;
    double lo = 1e-300, hi = 1.0;
    while (total_power(hi, nullptr) < budget)
        hi *= 2.0;
    lo = hi;
    while (total_power(lo, nullptr) > budget && lo > 1e-300)
        lo *= 0.5;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total_power(mid, nullptr) < budget ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * hi)
            break;
    }
    std::vector<double> levels(K);
    total_power(0.5 * (lo + hi), &levels);

    std::vector<double> power(M, 0.0);
    double used = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t idx = 0; idx < index[k].size(); ++idx) {
            const double d = per_user[k][idx];
            const double p = d > 0.0 ? std::max(levels[k] - 1.0 / d, 0.0) : 0.0;
            power[index[k][idx]] = p;
            used += p;
        }
    // Remove bisection residue so the budget holds with equality.
    if (used > 0.0)
        for (double &p : power)
            p *= budget / used;
    return power;
}

double log_power_stationarity(const Assignment &assignment, const RealMatrix &cnr, const std::vector<double> &power_w,
                              const SystemConfig &cfg)
{
    const std::vector<double> rates = user_rates(assignment, power_w, cnr, cfg);
    const double bw = cfg.subband_bandwidth_hz();
    const std::size_t M = assignment.size();
    std::vector<double> grad(M);
    double active_sum = 0.0;
    std::size_t active = 0;
    for (std::size_t m = 0; m < M; ++m) {
        const double d = cnr(m, assignment[m]);
        grad[m] = bw * d / (kLn2 * (1.0 + power_w[m] * d) * rates[assignment[m]]);
        if (power_w[m] > 0.0) {
            active_sum += grad[m];
            ++active;
        }
    }
    if (active == 0)
        return std::numeric_limits<double>::infinity();
    const double lambda = active_sum / static_cast<double>(active);
    double err = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        if (power_w[m] > 0.0)
            err = std::max(err, std::abs(grad[m] - lambda));
        else
            err = std::max(err, grad[m] - lambda);
    }
    return err / lambda;
}

} // namespace jpta
