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

#ifndef JPTA_SCENARIO_HPP
#define JPTA_SCENARIO_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace jpta {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

// All parameters in SI units. Defaults reproduce the reference system:
// 100 GHz carrier, 10 GHz bandwidth, 64 antennas, 16 subbands, 16 TTDs,
// 40 dBm transmit power, -174 dBm/Hz noise, 5 ns maximum delay.
struct SystemConfig {
    double carrier_frequency_hz = 100e9;
    double bandwidth_hz = 10e9;
    std::size_t num_antennas = 64;
    std::size_t num_subbands = 16;
    std::size_t num_ttds = 16;
    double transmit_power_w = 10.0;
    double noise_psd_w_per_hz = 3.9810717055349565e-21; // -174 dBm/Hz
    double max_delay_s = 5e-9;
    std::size_t ttd_grid_points = 2000;
    std::size_t num_nf_users = 1;
    std::size_t num_ff_users = 1;
    std::size_t ao_max_iters = 30;
    double ao_tolerance = 1e-5;
    double penalty_init = 1e-5;
    double speed_of_light_m_s = 299792458.0;

    std::size_t num_users() const { return num_nf_users + num_ff_users; }
    std::size_t subarray_size() const { return num_ttds == 0 ? num_antennas : num_antennas / num_ttds; }
    double subband_bandwidth_hz() const { return bandwidth_hz / static_cast<double>(num_subbands); }
    double noise_power_w() const { return noise_psd_w_per_hz * subband_bandwidth_hz(); }
    double element_spacing_m() const { return speed_of_light_m_s / (2.0 * carrier_frequency_hz); }
    double wavelength_m() const { return speed_of_light_m_s / carrier_frequency_hz; }
};

// Throws std::invalid_argument naming the first violated constraint.
void validate(const SystemConfig &cfg);

enum class FieldRegion { near, far };

struct UserPosition {
    double angle_rad = kPi / 2.0;
    double range_m = 1.0;
    FieldRegion field = FieldRegion::near;
};

// Builds a user with the field tag implied by the Rayleigh distance of cfg.
UserPosition make_user(double angle_rad, double range_m, const SystemConfig &cfg);

// Throws if the field tag disagrees with the Rayleigh-distance classification.
void check_field_tag(const UserPosition &user, const SystemConfig &cfg);

// Channel vectors indexed [subband][user], each of length N.
struct ChannelSet {
    std::vector<std::vector<CVec>> h;
    std::vector<double> subband_frequencies_hz;

    std::size_t num_subbands() const { return h.size(); }
    std::size_t num_users() const { return h.empty() ? 0 : h.front().size(); }
    std::size_t num_antennas() const { return h.empty() || h.front().empty() ? 0 : h.front().front().size(); }
    const CVec &at(std::size_t m, std::size_t k) const { return h.at(m).at(k); }
};

std::vector<double> subband_frequencies(const SystemConfig &cfg);

// 2 D^2 / lambda with aperture D = (N - 1) d.
double rayleigh_distance(const SystemConfig &cfg);

// x_n * d for 1-based element index n, x_n = n - (N + 1) / 2.
double element_offset(std::size_t n, const SystemConfig &cfg);

// Approximate distance from element n (1-based) to the user: spherical
// (second order) for near-field users, planar for far-field users.
double propagation_distance(const UserPosition &user, std::size_t n, const SystemConfig &cfg);

// Exact Euclidean distance ||u_k - c_n||, used as a geometric reference.
double exact_distance(const UserPosition &user, std::size_t n, const SystemConfig &cfg);

// Unit-modulus response, entry n = exp(-j 2 pi f (r_n - r) / c).
CVec array_response(const UserPosition &user, double f_hz, const SystemConfig &cfg);

// Line-of-sight free-space gain c / (4 pi f r).
double path_gain(double range_m, double f_hz, const SystemConfig &cfg);

ChannelSet synthesize_channels(const std::vector<UserPosition> &users, const SystemConfig &cfg);

// Users drawn from the 0.5 degree / 0.5 m placement grid. The first
// num_nf_users lie inside the Rayleigh distance, the rest beyond it.
std::vector<UserPosition> sample_users(std::uint64_t seed, const SystemConfig &cfg);

} // namespace jpta

#endif
