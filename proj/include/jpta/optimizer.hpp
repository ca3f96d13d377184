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

#ifndef JPTA_OPTIMIZER_HPP
#define JPTA_OPTIMIZER_HPP

#include "jpta/arrays.hpp"
#include "jpta/scenario.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace jpta {

// ---------------------------------------------------------------------------
// Subband allocation
// ---------------------------------------------------------------------------

struct ScaOptions {
    std::size_t max_iters = 30;          // SCA rounds per call of sca_allocate
    double inner_step = 1.0;             // initial step, in units of 1 / max|gradient|
    double inner_tol = 1e-10;            // stop when a projected step moves less than this
    std::size_t inner_max_steps = 500;   // projected-gradient cap per round
    double penalty_growth = 5.0;
    double penalty_init = 1e-5;
};

struct ScaStepResult {
    RealMatrix relaxed;
    // Surrogate objective after every accepted projected-gradient step,
    // starting with the value at the linearization point.
    std::vector<double> surrogate_trace;
};

// Row-wise Euclidean projection onto the probability simplex.
void project_rows_to_simplex(RealMatrix &b);

// Sum over entries of (b - b^2); zero exactly at binary points.
double penalty_violation(const RealMatrix &relaxed);

RealMatrix one_hot(const Assignment &assignment, std::size_t num_users);

// One SCA round: linearize the binarity penalty at `relaxed` and maximize
// sum_k F(R_k) + rho * Omega over the per-subband simplices by projected
// gradient ascent with Armijo backtracking. rate_coeff(m, k) is the rate
// user k would obtain on subband m.
ScaStepResult relaxed_allocation_step(const RealMatrix &relaxed, const RealMatrix &rate_coeff, UtilityKind kind,
                                      double rho, const ScaOptions &opts);

// Up to opts.max_iters SCA rounds at a fixed penalty.
RealMatrix sca_allocate(RealMatrix relaxed, const RealMatrix &rate_coeff, UtilityKind kind, double rho,
                        const ScaOptions &opts);

// argmax per row, ties to the lowest user index.
Assignment round_allocation(const RealMatrix &relaxed);

// Single-subband moves and pairwise swaps while the utility improves. Also hands a subband
// to any user left without one under the log utility.
Assignment improve_assignment(Assignment a, const RealMatrix &rate_coeff, UtilityKind kind);

// SCA with penalty continuation (rho grows by penalty_growth) from the
// uniform relaxed point until the allocation is binary, then rounded and
// polished by improve_assignment.
Assignment solve_subband_allocation(const RealMatrix &rate_coeff, UtilityKind kind, const ScaOptions &opts);

// Sum: per-subband argmax of the rate. Log: every user first receives its
// best remaining subband (weakest user first), remaining subbands then go
// by largest marginal log-utility gain.
Assignment greedy_allocation(const RealMatrix &cnr, const std::vector<double> &power_w, UtilityKind kind,
                             const SystemConfig &cfg);

// ---------------------------------------------------------------------------
// Analog beamforming
// ---------------------------------------------------------------------------

// Per-subband phase-conjugate beamformer toward the assigned user,
// entries exp(j angle(h)) / sqrt(N).
std::vector<CVec> ideal_beamformer(const Assignment &assignment, const ChannelSet &channels);

// Closed-form phase-shifter update for fixed delays.
PhaseShifterBank ps_update(const std::vector<CVec> &ideal_w, const TtdBank &ttd, const std::vector<double> &freqs_hz,
                           const SystemConfig &cfg);

// Grid search of every delay over {0, tau_max / (I_T - 1), ..., tau_max}
// for fixed phase shifters, ties to the smallest delay.
TtdBank ttd_update(const std::vector<CVec> &ideal_w, const PhaseShifterBank &ps, const std::vector<double> &freqs_hz,
                   const SystemConfig &cfg);

// Delay grid used by ttd_update.
std::vector<double> delay_grid(const SystemConfig &cfg);

// sum_i sum_m Re{ w~_{m,i}^H phi_i exp(-j 2 pi f_m tau_i) }
double fit_objective(const std::vector<CVec> &ideal_w, const JptaBeamformer &bf, const std::vector<double> &freqs_hz);

// sum_m || w_m - Phi T_m ||^2
double fit_residual(const std::vector<CVec> &ideal_w, const JptaBeamformer &bf, const std::vector<double> &freqs_hz);

// Starting point for the block coordinate descent: each delay is chosen
// on the grid with the phase shifters optimized out, then the phase
// shifters are set by ps_update.
JptaBeamformer initial_beamformer(const std::vector<CVec> &ideal_w, const std::vector<double> &freqs_hz,
                                  const SystemConfig &cfg);

struct FitResult {
    JptaBeamformer bf;
    std::vector<double> objective_trace; // starts with the objective of the initial point
    std::size_t rounds = 0;
};

// Alternates ps_update and ttd_update from `init` until the fractional
// objective increase drops below tol or max_rounds is reached.
FitResult fit_beamformer(const std::vector<CVec> &ideal_w, const std::vector<double> &freqs_hz,
                         const SystemConfig &cfg, const JptaBeamformer &init, std::size_t max_rounds, double tol);

// ---------------------------------------------------------------------------
// Power allocation
// ---------------------------------------------------------------------------

struct PowerResult {
    std::vector<double> power_w;
    double water_level = 0.0;
    bool degenerate = false; // every CNR was zero, uniform power returned
};

// Water-filling over the given per-subband CNRs with total power p_total.
PowerResult waterfill(const std::vector<double> &cnr, double p_total);

// CNR of the assigned user on every subband.
std::vector<double> assigned_cnr(const Assignment &assignment, const RealMatrix &cnr);

PowerResult waterfill_sum_rate(const Assignment &assignment, const RealMatrix &cnr, const SystemConfig &cfg);

// Maximizes sum_k ln R_k subject to the power budget. Each user gets a
// water-filling allocation over its own subbands; user budgets are set so
// that R_k'(P_k) / R_k(P_k) is common to all users.
// Throws std::invalid_argument naming the user if some user owns no
// subband with positive CNR.
std::vector<double> power_log_utility(const Assignment &assignment, const RealMatrix &cnr, const SystemConfig &cfg);

// Relative first-order stationarity error of a log-utility power vector:
// max deviation of the active partial derivatives from their common value
// (and excess of inactive ones), divided by that value.
double log_power_stationarity(const Assignment &assignment, const RealMatrix &cnr, const std::vector<double> &power_w,
                              const SystemConfig &cfg);

// ---------------------------------------------------------------------------
// Alternating optimization
// ---------------------------------------------------------------------------

struct TraceRecord {
    std::size_t iter = 0;
    double utility = 0.0;
    double penalty = 0.0;
    double constraint_violation = 0.0;
    double fit_residual = 0.0;
};

struct AoOptions {
    ScaOptions sca;
    std::size_t fit_max_rounds = 30;
    double fit_tol = 1e-5;
    // Called after every outer iteration (and once for the start point).
    std::function<void(const TraceRecord &)> on_trace;
};

// Options with the penalty and tolerance knobs taken from cfg.
AoOptions default_ao_options(const SystemConfig &cfg);

struct SolverState {
    AllocationPlan plan;
    JptaBeamformer bf;
    std::vector<CVec> ideal_w;
    double penalty = 0.0;
    std::size_t iteration = 0;
    std::vector<double> utility_trace; // [0] is the start point
    std::vector<TraceRecord> trace;
    std::vector<double> rates;
};

// Three-step alternating optimization for the JPTA: subband allocation by
// SCA, analog beamformer fit, power allocation. Requires num_ttds >= 1.
SolverState alternating_optimize(const ChannelSet &channels, const SystemConfig &cfg, UtilityKind kind,
                                 const AoOptions &opts);

} // namespace jpta

#endif
