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

#include "ao_core.hpp"

#include <stdexcept>

namespace jpta {

namespace {

class JptaStage {
public:
    using Beamformer = JptaBeamformer;

    JptaStage(const ChannelSet &channels, const SystemConfig &cfg, const AoOptions &opts)
        : channels_(channels), cfg_(cfg), opts_(opts) {}

    JptaBeamformer design(const Assignment &assignment, const JptaBeamformer *, double &residual)
    {
        const std::vector<CVec> ideal_w = ideal_beamformer(assignment, channels_);
        const auto &f = channels_.subband_frequencies_hz;
        FitResult fit = fit_beamformer(ideal_w, f, cfg_, initial_beamformer(ideal_w, f, cfg_), opts_.fit_max_rounds,
                                       opts_.fit_tol);
        residual = fit_residual(ideal_w, fit.bf, f);
        return std::move(fit.bf);
    }

    std::vector<CVec> weights(const JptaBeamformer &bf) const
    {
        return effective_weights(bf, channels_.subband_frequencies_hz);
    }

    RealMatrix allocation_cnr(const JptaBeamformer &bf) const
    {
        return cnr_matrix(channels_, weights(bf), cfg_.noise_power_w());
    }

private:
    const ChannelSet &channels_;
    const SystemConfig &cfg_;
    const AoOptions &opts_;
};

} // namespace

AoOptions default_ao_options(const SystemConfig &cfg)
{
    AoOptions opts;
    opts.sca.penalty_init = cfg.penalty_init;
    opts.fit_tol = cfg.ao_tolerance;
    return opts;
}

SolverState alternating_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind,
                                 const AoOptions &opts)
{
    validate(cfg);
    if (cfg.num_ttds == 0)
        throw std::invalid_argument("alternating_optimize requires num_ttds >= 1; use pa_optimize for N_T = 0");
    JptaStage stage(channels, cfg, opts);
    auto res = detail::run_alternating(channels, cfg, kind, opts, stage);

    SolverState s;
    s.plan = std::move(res.plan);
    s.bf = std::move(res.bf);
    s.ideal_w = ideal_beamformer(s.plan.assignment, channels);
    s.penalty = res.penalty;
    s.iteration = res.iterations;
    s.utility_trace = std::move(res.utility_trace);
    s.trace = std::move(res.trace);
    s.rates = std::move(res.rates);
    return s;
}

} // namespace jpta
