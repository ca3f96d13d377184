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

#ifndef JPTA_ARRAYS_HPP
#define JPTA_ARRAYS_HPP

#include "jpta/scenario.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace jpta {

// Dense row-major real matrix, used for [subband][user] tables.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<double> &data() const { return data_; }

    bool operator==(const RealMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// phases[i][j]: phase of element j in the subarray behind TTD i. The
// effective matrix entry is exp(j phase) / sqrt(N).
struct PhaseShifterBank {
    std::vector<std::vector<double>> phases;

    std::size_t num_ttds() const { return phases.size(); }
    std::size_t subarray_size() const { return phases.empty() ? 0 : phases.front().size(); }
};

struct TtdBank {
    std::vector<double> delays_s;
};

struct JptaBeamformer {
    PhaseShifterBank ps;
    TtdBank ttd;

    std::size_t num_antennas() const { return ps.num_ttds() * ps.subarray_size(); }
};

// Zero phases and zero delays, sized from the configuration (N_T >= 1).
JptaBeamformer make_flat_beamformer(const SystemConfig &cfg);

// Throws std::invalid_argument if shapes disagree with cfg or a delay lies
// outside [0, max_delay_s].
void check_beamformer(const JptaBeamformer &bf, const SystemConfig &cfg);

// assignment[m] is the 0-based user served on subband m.
using Assignment = std::vector<std::size_t>;

struct AllocationPlan {
    Assignment assignment;
    std::vector<double> power_w;
    // Relaxed allocation from the last SCA round, rows on the simplex.
    // Empty when the plan was not produced by SCA.
    RealMatrix relaxed;
};

// Throws std::invalid_argument if the plan violates the subband, power or
// relaxation constraints.
void check_plan(const AllocationPlan &plan, std::size_t num_users, const SystemConfig &cfg);

enum class UtilityKind { sum, log };
enum class Architecture { fd, pa, jpta };

const char *to_string(UtilityKind kind);
const char *to_string(Architecture arch);
UtilityKind parse_utility_kind(const std::string &s);
Architecture parse_architecture(const std::string &s);

// exp(-j 2 pi f tau_i) for each TTD.
CVec ttd_phase_vector(const TtdBank &ttd, double f_hz);

// w(f) = Phi T(f), length N, unit norm.
CVec effective_beamformer(const JptaBeamformer &bf, double f_hz);

// One effective beamformer per subband frequency.
std::vector<CVec> effective_weights(const JptaBeamformer &bf, const std::vector<double> &freqs_hz);

// |a^H w|^2
double array_gain(const CVec &a, const CVec &w);

// |h^H w|^2 / sigma^2 for a single channel vector.
double effective_cnr(const CVec &h, const CVec &w, double noise_power_w);

// delta[m][k] with the per-subband weights applied to every user.
RealMatrix cnr_matrix(const ChannelSet &channels, const std::vector<CVec> &weights, double noise_power_w);

// (B/M) log2(1 + p_m delta[m][k]) for every subband/user pair.
RealMatrix rate_coefficients(const std::vector<double> &power_w, const RealMatrix &cnr, const SystemConfig &cfg);

// Per-user rates in bits/s for a plan under a CNR table.
std::vector<double> user_rates(const Assignment &assignment, const std::vector<double> &power_w,
                               const RealMatrix &cnr, const SystemConfig &cfg);

double user_rate(std::size_t k, const AllocationPlan &plan, const ChannelSet &channels,
                 const std::vector<CVec> &weights, const SystemConfig &cfg);
double user_rate(std::size_t k, const AllocationPlan &plan, const ChannelSet &channels,
                 const JptaBeamformer &bf, const SystemConfig &cfg);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum of identity or natural log of the rates; a zero rate under the log
// utility yields -inf.
double utility(const std::vector<double> &rates, UtilityKind kind);

} // namespace jpta

#endif
