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

#include "jpta/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace jpta {

void validate(const SystemConfig &cfg)
{
    if (cfg.num_antennas == 0)
        throw std::invalid_argument("num_antennas must be positive");
    if (cfg.num_subbands == 0)
        throw std::invalid_argument("num_subbands must be positive");
    if (cfg.num_ttds > 0 && cfg.num_antennas % cfg.num_ttds != 0)
        throw std::invalid_argument("num_antennas (" + std::to_string(cfg.num_antennas) +
                                    ") must be divisible by num_ttds (" + std::to_string(cfg.num_ttds) + ")");
    if (!(cfg.bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be positive");
    if (!(cfg.carrier_frequency_hz > cfg.bandwidth_hz / 2.0))
        throw std::invalid_argument("carrier_frequency_hz must exceed half the bandwidth");
    if (!(cfg.max_delay_s >= 0.0))
        throw std::invalid_argument("max_delay_s must be nonnegative");
    if (!(cfg.transmit_power_w > 0.0))
        throw std::invalid_argument("transmit_power_w must be positive");
    if (!(cfg.noise_psd_w_per_hz > 0.0))
        throw std::invalid_argument("noise_psd_w_per_hz must be positive");
    if (cfg.ttd_grid_points < 2)
        throw std::invalid_argument("ttd_grid_points must be at least 2");
    if (cfg.num_users() == 0)
        throw std::invalid_argument("at least one user is required");
    if (cfg.num_subbands < cfg.num_users())
        throw std::invalid_argument("num_subbands must be at least the number of users");
    if (!(cfg.ao_tolerance > 0.0) || !(cfg.penalty_init > 0.0))
        throw std::invalid_argument("ao_tolerance and penalty_init must be positive");
    if (!(cfg.speed_of_light_m_s > 0.0))
        throw std::invalid_argument("speed_of_light_m_s must be positive");
}

std::vector<double> subband_frequencies(const SystemConfig &cfg)
{
    const double m_count = static_cast<double>(cfg.num_subbands);
    std::vector<double> f(cfg.num_subbands);
    for (std::size_t m = 1; m <= cfg.num_subbands; ++m)
        f[m - 1] = cfg.carrier_frequency_hz +
                   cfg.bandwidth_hz * (2.0 * static_cast<double>(m) - 1.0 - m_count) / (2.0 * m_count);
    return f;
}

double rayleigh_distance(const SystemConfig &cfg)
{
    if (cfg.num_antennas < 2)
        throw std::invalid_argument("rayleigh_distance requires at least two antennas");
    const double aperture = static_cast<double>(cfg.num_antennas - 1) * cfg.element_spacing_m();
    return 2.0 * aperture * aperture / cfg.wavelength_m();
}

UserPosition make_user(double angle_rad, double range_m, const SystemConfig &cfg)
{
    UserPosition u;
    u.angle_rad = angle_rad;
    u.range_m = range_m;
    u.field = range_m <= rayleigh_distance(cfg) ? FieldRegion::near : FieldRegion::far;
    return u;
}

void check_field_tag(const UserPosition &user, const SystemConfig &cfg)
{
    if (!(user.range_m > 0.0))
        throw std::invalid_argument("user range must be positive");
    if (!(user.angle_rad > 0.0 && user.angle_rad < kPi))
        throw std::invalid_argument("user angle must lie in (0, pi)");
    const bool near = user.range_m <= rayleigh_distance(cfg);
    if (near != (user.field == FieldRegion::near))
        throw std::invalid_argument("field tag inconsistent with Rayleigh distance at range " +
                                    std::to_string(user.range_m) + " m");
}

double element_offset(std::size_t n, const SystemConfig &cfg)
{
    if (n < 1 || n > cfg.num_antennas)
        throw std::out_of_range("element index " + std::to_string(n) + " outside [1, " +
                                std::to_string(cfg.num_antennas) + "]");
    const double x = static_cast<double>(n) - (static_cast<double>(cfg.num_antennas) + 1.0) / 2.0;
    return x * cfg.element_spacing_m();
}

double propagation_distance(const UserPosition &user, std::size_t n, const SystemConfig &cfg)
{
    const double xd = element_offset(n, cfg);
    const double c = std::cos(user.angle_rad);
    double r = user.range_m - xd * c;
    if (user.field == FieldRegion::near) {
        const double s = std::sin(user.angle_rad);
        r += xd * xd * s * s / (2.0 * user.range_m);
    }
    return r;
}

double exact_distance(const UserPosition &user, std::size_t n, const SystemConfig &cfg)
{
    const double xd = element_offset(n, cfg);
    const double ux = user.range_m * std::cos(user.angle_rad);
    const double uy = user.range_m * std::sin(user.angle_rad);
    return std::hypot(ux - xd, uy);
}

CVec array_response(const UserPosition &user, double f_hz, const SystemConfig &cfg)
{
    if (!(f_hz > 0.0))
        throw std::invalid_argument("frequency must be positive");
    const double k = 2.0 * kPi * f_hz / cfg.speed_of_light_m_s;
    CVec a(cfg.num_antennas);
    for (std::size_t n = 1; n <= cfg.num_antennas; ++n)
        a[n - 1] = std::polar(1.0, -k * (propagation_distance(user, n, cfg) - user.range_m));
    return a;
}

double path_gain(double range_m, double f_hz, const SystemConfig &cfg)
{
    return cfg.speed_of_light_m_s / (4.0 * kPi * f_hz * range_m);
}

ChannelSet synthesize_channels(const std::vector<UserPosition> &users, const SystemConfig &cfg)
{
    if (users.empty())
        throw std::invalid_argument("synthesize_channels requires at least one user");
    for (const auto &u : users)
        if (!(u.range_m > 0.0))
            throw std::invalid_argument("user range must be positive");

    ChannelSet out;
    out.subband_frequencies_hz = subband_frequencies(cfg);
    out.h.resize(cfg.num_subbands);
    for (std::size_t m = 0; m < cfg.num_subbands; ++m) {
        const double f = out.subband_frequencies_hz[m];
        out.h[m].reserve(users.size());
        for (const auto &u : users) {
            const cplx gain = std::polar(path_gain(u.range_m, f, cfg),
                                         -2.0 * kPi * f * u.range_m / cfg.speed_of_light_m_s);
            CVec a = array_response(u, f, cfg);
            for (auto &x : a)
                x *= gain;
            out.h[m].push_back(std::move(a));
        }
    }
    return out;
}

std::vector<UserPosition> sample_users(std::uint64_t seed, const SystemConfig &cfg)
{
    if (cfg.num_users() == 0)
        throw std::invalid_argument("sample_users requires at least one user");

    // Angle grid excludes the endfire directions 0 and 180 degrees.
    constexpr int kAngleSteps = 359; // 0.5 .. 179.5 degrees
    const double r_ray = rayleigh_distance(cfg);

    std::vector<double> near_ranges, far_ranges;
    for (int i = 2; i <= 40; ++i) { // 1.0 .. 20.0 m
        const double r = 0.5 * i;
        (r <= r_ray ? near_ranges : far_ranges).push_back(r);
    }
    if (cfg.num_nf_users > 0 && near_ranges.empty())
        throw std::invalid_argument("placement grid has no near-field ranges for this configuration");
    if (cfg.num_ff_users > 0 && far_ranges.empty())
        throw std::invalid_argument("placement grid has no far-field ranges for this configuration");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> angle_dist(1, kAngleSteps);
    std::vector<UserPosition> users;
    users.reserve(cfg.num_users());
    auto draw = [&](const std::vector<double> &ranges, FieldRegion field) {
        std::uniform_int_distribution<std::size_t> range_dist(0, ranges.size() - 1);
        UserPosition u;
        u.angle_rad = 0.5 * angle_dist(rng) * kPi / 180.0;
        u.range_m = ranges[range_dist(rng)];
        u.field = field;
        users.push_back(u);
    };
    for (std::size_t k = 0; k < cfg.num_nf_users; ++k)
        draw(near_ranges, FieldRegion::near);
    for (std::size_t k = 0; k < cfg.num_ff_users; ++k)
        draw(far_ranges, FieldRegion::far);
    return users;
}

} // namespace jpta
