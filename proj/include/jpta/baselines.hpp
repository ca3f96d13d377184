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

#ifndef JPTA_BASELINES_HPP
#define JPTA_BASELINES_HPP

#include "jpta/arrays.hpp"
#include "jpta/optimizer.hpp"

#include <vector>

namespace jpta {

// Fully digital: an unconstrained unit-norm beamformer per subband.
struct FdBeamformer {
    std::vector<CVec> w;
};

// Phased array: one frequency-flat vector exp(j phase_n) / sqrt(N).
struct PaBeamformer {
    std::vector<double> phases;

    CVec weights() const;
};

// Matched filter h / ||h|| toward the assigned user on every subband.
FdBeamformer fd_beamformer(const Assignment &assignment, const ChannelSet &channels);

// Phase of sum_m w_m[n]: the phase-shifter update with every delay removed
// and a single subarray spanning the aperture.
PaBeamformer pa_beamformer(const std::vector<CVec> &ideal_w);

// PA weights replicated over the subbands.
std::vector<CVec> pa_weights(const PaBeamformer &bf, std::size_t num_subbands);

struct FdSolution {
    AllocationPlan plan;
    FdBeamformer bf;
    std::vector<double> rates;
    std::vector<double> utility_trace;
    std::vector<TraceRecord> trace;
};

struct PaSolution {
    AllocationPlan plan;
    PaBeamformer bf;
    std::vector<double> rates;
    std::vector<double> utility_trace;
    std::vector<TraceRecord> trace;
};

FdSolution fd_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind, const AoOptions &opts);
PaSolution pa_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind, const AoOptions &opts);

// Architecture-independent view of a solved scenario.
struct Solution {
    Architecture arch = Architecture::jpta;
    AllocationPlan plan;
    std::vector<CVec> weights; // effective beamformer per subband
    std::vector<double> rates;
    std::vector<double> utility_trace;
    std::vector<TraceRecord> trace;
    // Only one of these is populated, matching arch.
    JptaBeamformer jpta;
    PaBeamformer pa;
    FdBeamformer fd;
};

// Dispatches to fd_optimize, pa_optimize or alternating_optimize.
// Architecture::jpta with num_ttds == 0 falls back to the phased array.
Solution solve(Architecture arch, const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind,
               const AoOptions &opts);

} // namespace jpta

#endif
