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

#ifndef JPTA_AO_CORE_HPP
#define JPTA_AO_CORE_HPP

// Shared alternating-optimization loop. A stage supplies the beamformer
// representation of one architecture:
//
//   using Beamformer = ...;
//   Beamformer design(const Assignment &, const Beamformer *previous, double &fit_residual);
//   std::vector<CVec> weights(const Beamformer &) const;          // per subband
//   RealMatrix allocation_cnr(const Beamformer &) const;         // CNR seen by SCA

#include "jpta/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jpta::detail {

template <class Beamformer>
struct AoOutcome {
    AllocationPlan plan;
    Beamformer bf;
    double penalty = 0.0;
    std::size_t iterations = 0;
    std::vector<double> utility_trace;
    std::vector<TraceRecord> trace;
    std::vector<double> rates;
};

// Matched-filter CNR ||h||^2 / sigma^2, the best any beamformer can reach.
inline RealMatrix matched_filter_cnr(const ChannelSet &channels, double noise_power_w)
{
    RealMatrix d(channels.num_subbands(), channels.num_users());
    for (std::size_t m = 0; m < d.rows(); ++m)
        for (std::size_t k = 0; k < d.cols(); ++k) {
            double e = 0.0;
            for (const auto &x : channels.at(m, k))
                e += std::norm(x);
            d(m, k) = e / noise_power_w;
        }
    return d;
}

inline double plan_utility(const Assignment &a, const std::vector<double> &p, const RealMatrix &cnr,
                           const SystemConfig &cfg, UtilityKind kind)
{
    return utility(user_rates(a, p, cnr, cfg), kind);
}

inline std::vector<double> power_step(const Assignment &a, const RealMatrix &cnr, const SystemConfig &cfg,
                                      UtilityKind kind)
{
    if (kind == UtilityKind::sum)
        return waterfill_sum_rate(a, cnr, cfg).power_w;
    return power_log_utility(a, cnr, cfg);
}

template <class Stage>
AoOutcome<typename Stage::Beamformer> run_alternating(const ChannelSet &channels, const SystemConfig &cfg,
                                                      UtilityKind kind, const AoOptions &opts, Stage &stage)
{
    using Beamformer = typename Stage::Beamformer;
    const std::size_t M = channels.num_subbands(), K = channels.num_users();
    if (M != cfg.num_subbands)
        throw std::invalid_argument("channel set and configuration disagree on the subband count");
    if (kind == UtilityKind::log && M < K)
        throw std::invalid_argument("log utility needs at least as many subbands as users");
    const double noise = cfg.noise_power_w();

    AoOutcome<Beamformer> out;
    AllocationPlan &plan = out.plan;
    plan.power_w.assign(M, cfg.transmit_power_w / static_cast<double>(M));
    plan.assignment = greedy_allocation(matched_filter_cnr(channels, noise), plan.power_w, kind, cfg);

    double fit = 0.0;
    out.bf = stage.design(plan.assignment, nullptr, fit);
    RealMatrix cnr = cnr_matrix(channels, stage.weights(out.bf), noise);
    double current = plan_utility(plan.assignment, plan.power_w, cnr, cfg, kind);

    plan.relaxed = one_hot(plan.assignment, K);
    double rho = opts.sca.penalty_init;
    auto record = [&](std::size_t iter, double violation) {
        TraceRecord r{iter, current, rho, violation, fit};
        out.trace.push_back(r);
        out.utility_trace.push_back(current);
        if (opts.on_trace)
            opts.on_trace(r);
    };
    record(0, penalty_violation(plan.relaxed));

    for (std::size_t l = 1; l <= cfg.ao_max_iters; ++l) {
        const double previous = current;

        // Subband allocation with beamformers and power fixed.
        {
            const RealMatrix alloc_cnr = stage.allocation_cnr(out.bf);
            const RealMatrix coeff = rate_coefficients(plan.power_w, alloc_cnr, cfg);
            plan.relaxed = sca_allocate(std::move(plan.relaxed), coeff, kind, rho, opts.sca);
            const Assignment candidate = improve_assignment(round_allocation(plan.relaxed), coeff, kind);
            if (candidate != plan.assignment &&
                plan_utility(candidate, plan.power_w, alloc_cnr, cfg, kind) >
                    plan_utility(plan.assignment, plan.power_w, alloc_cnr, cfg, kind))
                plan.assignment = candidate;
        }

        // Analog beamforming; the previous beamformer is kept if the new fit
        // lowers the utility.
        {
            double cand_fit = 0.0;
            Beamformer candidate = stage.design(plan.assignment, &out.bf, cand_fit);
            const RealMatrix cand_cnr = cnr_matrix(channels, stage.weights(candidate), noise);
            const RealMatrix old_cnr = cnr_matrix(channels, stage.weights(out.bf), noise);
            if (plan_utility(plan.assignment, plan.power_w, cand_cnr, cfg, kind) >=
                plan_utility(plan.assignment, plan.power_w, old_cnr, cfg, kind)) {
                out.bf = std::move(candidate);
                fit = cand_fit;
            }
        }

        // Power allocation.
        cnr = cnr_matrix(channels, stage.weights(out.bf), noise);
        const double before_power = plan_utility(plan.assignment, plan.power_w, cnr, cfg, kind);
        std::vector<double> power = power_step(plan.assignment, cnr, cfg, kind);
        if (plan_utility(plan.assignment, power, cnr, cfg, kind) >= before_power)
            plan.power_w = std::move(power);
        current = plan_utility(plan.assignment, plan.power_w, cnr, cfg, kind);

        rho *= opts.sca.penalty_growth;
        const double violation = penalty_violation(plan.relaxed);
        out.iterations = l;
        record(l, violation);

        const double change = std::abs(current - previous);
        if (violation < cfg.ao_tolerance && std::isfinite(current) &&
            change <= cfg.ao_tolerance * std::abs(previous))
            break;
    }

    out.penalty = rho;
    out.rates = user_rates(plan.assignment, plan.power_w, cnr, cfg);
    return out;
}

} // namespace jpta::detail

#endif
