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

#ifndef JPTA_SERIALIZATION_HPP
#define JPTA_SERIALIZATION_HPP

#include "jpta/baselines.hpp"
#include "jpta/harness.hpp"

#include <string>
#include <vector>

namespace jpta {

// Beamformer record {"phases": [[rad]], "delays_ns": [..]}.
std::string beamformer_to_json(const JptaBeamformer &bf);
JptaBeamformer beamformer_from_json(const std::string &text);

// Full solution: architecture tag, beamformer, plan, rates and trace.
std::string solution_to_json(const Solution &s, UtilityKind kind);
Solution solution_from_json(const std::string &text);

// One JSON object per line: iter, utility, penalty, constraint_violation, fit_residual.
std::string trace_record_to_json(const TraceRecord &r);

// seed,scenario,arch,utility,user,rate_bps,log_rate,se,ee,runtime_s,status
std::string batch_to_csv(const BatchResult &batch);
BatchResult batch_from_csv(const std::string &text);

// Batch columns preceded by the swept value.
std::string sweep_to_csv(const SweepTable &table);
SweepTable sweep_from_csv(const std::string &text);

// angle_deg,range_m,f_hz,gain
std::string gain_map_to_csv(const std::vector<GainSample> &samples);
std::vector<GainSample> gain_map_from_csv(const std::string &text);

} // namespace jpta

#endif
