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

#include "jpta/baselines.hpp"

#include "ao_core.hpp"

#include <cmath>
#include <stdexcept>

namespace jpta {

CVec PaBeamformer::weights() const
{
    const double scale = 1.0 / std::sqrt(static_cast<double>(phases.size()));
    CVec w(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n)
        w[n] = std::polar(scale, phases[n]);
    return w;
}

FdBeamformer fd_beamformer(const Assignment &assignment, const ChannelSet &channels)
{
    if (assignment.size() != channels.num_subbands())
        throw std::invalid_argument("assignment length does not match the number of subbands");
    FdBeamformer bf;
    bf.w.reserve(assignment.size());
    for (std::size_t m = 0; m < assignment.size(); ++m) {
        const CVec &h = channels.at(m, assignment[m]);
        double e = 0.0;
        for (const auto &x : h)
            e += std::norm(x);
        if (!(e > 0.0))
            throw std::invalid_argument("fd_beamformer: zero channel on subband " + std::to_string(m));
        const double inv = 1.0 / std::sqrt(e);
        CVec w(h.size());
        for (std::size_t n = 0; n < h.size(); ++n)
            w[n] = h[n] * inv;
        bf.w.push_back(std::move(w));
    }
    return bf;
}

PaBeamformer pa_beamformer(const std::vector<CVec> &ideal_w)
{
    if (ideal_w.empty())
        throw std::invalid_argument("pa_beamformer needs at least one subband");
    const std::size_t N = ideal_w.front().size();
    PaBeamformer bf;
    bf.phases.assign(N, 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        cplx s = 0.0;
        for (const auto &w : ideal_w)
            s += w.at(n);
        bf.phases[n] = std::abs(s) > 0.0 ? std::arg(s) : 0.0;
    }
    return bf;
}

std::vector<CVec> pa_weights(const PaBeamformer &bf, std::size_t num_subbands)
{
    return std::vector<CVec>(num_subbands, bf.weights());
}

namespace {

class FdStage {
public:
    using Beamformer = FdBeamformer;

    FdStage(const ChannelSet &channels, const SystemConfig &cfg)
        : channels_(channels), mf_(detail::matched_filter_cnr(channels, cfg.noise_power_w())) {}

    FdBeamformer design(const Assignment &a, const FdBeamformer *, double &residual)
    {
        residual = 0.0;
        return fd_beamformer(a, channels_);
    }
    std::vector<CVec> weights(const FdBeamformer &bf) const { return bf.w; }
    // The digital beam follows the allocation, so every candidate user is
    // evaluated at its matched-filter CNR.
    RealMatrix allocation_cnr(const FdBeamformer &) const { return mf_; }

private:
    const ChannelSet &channels_;
    RealMatrix mf_;
};

class PaStage {
public:
    using Beamformer = PaBeamformer;

    PaStage(const ChannelSet &channels, const SystemConfig &cfg) : channels_(channels), cfg_(cfg) {}

    PaBeamformer design(const Assignment &a, const PaBeamformer *, double &residual)
    {
        const std::vector<CVec> ideal = ideal_beamformer(a, channels_);
        PaBeamformer bf = pa_beamformer(ideal);
        const CVec w = bf.weights();
        residual = 0.0;
        for (const auto &wm : ideal)
            for (std::size_t n = 0; n < w.size(); ++n)
                residual += std::norm(wm[n] - w[n]);
        return bf;
    }
    std::vector<CVec> weights(const PaBeamformer &bf) const { return pa_weights(bf, channels_.num_subbands()); }
    RealMatrix allocation_cnr(const PaBeamformer &bf) const
    {
        return cnr_matrix(channels_, weights(bf), cfg_.noise_power_w());
    }

private:
    const ChannelSet &channels_;
    const SystemConfig &cfg_;
};

} // namespace

FdSolution fd_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind, const AoOptions &opts)
{
    validate(cfg);
    FdStage stage(channels, cfg);
    auto res = detail::run_alternating(channels, cfg, kind, opts, stage);
    return FdSolution{std::move(res.plan), std::move(res.bf), std::move(res.rates), std::move(res.utility_trace),
                      std::move(res.trace)};
}

PaSolution pa_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind, const AoOptions &opts)
{
    validate(cfg);
    PaStage stage(channels, cfg);
    auto res = detail::run_alternating(channels, cfg, kind, opts, stage);
    return PaSolution{std::move(res.plan), std::move(res.bf), std::move(res.rates), std::move(res.utility_trace),
                      std::move(res.trace)};
}

Solution solve(Architecture arch, const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind,
               const AoOptions &opts)
{
    Solution s;
    s.arch = arch;
    if (arch == Architecture::jpta && cfg.num_ttds == 0)
        arch = Architecture::pa;
    switch (arch) {
    case Architecture::fd: {
        FdSolution r = fd_optimize(channels, cfg, kind, opts);
        s.plan = std::move(r.plan);
        s.weights = r.bf.w;
        s.fd = std::move(r.bf);
        s.rates = std::move(r.rates);
        s.utility_trace = std::move(r.utility_trace);
        s.trace = std::move(r.trace);
        break;
    }
    case Architecture::pa: {
        PaSolution r = pa_optimize(channels, cfg, kind, opts);
        s.plan = std::move(r.plan);
        s.weights = pa_weights(r.bf, channels.num_subbands());
        s.pa = std::move(r.bf);
        s.rates = std::move(r.rates);
        s.utility_trace = std::move(r.utility_trace);
        s.trace = std::move(r.trace);
        break;
    }
    case Architecture::jpta: {
        SolverState r = alternating_optimize(channels, cfg, kind, opts);
        s.plan = std::move(r.plan);
        s.weights = effective_weights(r.bf, channels.subband_frequencies_hz);
        s.jpta = std::move(r.bf);
        s.rates = std::move(r.rates);
        s.utility_trace = std::move(r.utility_trace);
        s.trace = std::move(r.trace);
        break;
    }
    }
    return s;
}

} // namespace jpta
