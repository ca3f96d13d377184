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

#include "jpta/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jpta {

double architecture_power_w(Architecture arch, const SystemConfig &cfg, const PowerModel &pm)
{
    const double N = static_cast<double>(cfg.num_antennas);
    const double base = cfg.transmit_power_w + pm.p_baseband_w;
    switch (arch) {
    case Architecture::fd:
        return base + N * pm.p_rfchain_w;
    case Architecture::pa:
        return base + pm.p_rfchain_w + N * pm.p_ps_w;
    case Architecture::jpta:
        return base + pm.p_rfchain_w + static_cast<double>(cfg.num_ttds) * pm.p_ttd_w + N * pm.p_ps_w;
    }
    throw std::invalid_argument("unknown architecture");
}

double energy_efficiency(double se_bps_hz, Architecture arch, const SystemConfig &cfg, const PowerModel &pm)
{
    return se_bps_hz / architecture_power_w(arch, cfg, pm);
}

namespace {

std::vector<double> grid(double lo, double hi, double step, const char *what)
{
    if (!(step > 0.0) || !(hi >= lo))
        throw std::invalid_argument(std::string("empty ") + what + " grid");
    std::vector<double> g;
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i)
        g.push_back(lo + step * static_cast<double>(i));
    return g;
}

} // namespace

std::vector<GainSample> gain_map(const std::vector<CVec> &weights, const Assignment &assignment,
                                 const std::vector<double> &freqs_hz, const SystemConfig &cfg,
                                 const GainMapSpec &spec)
{
    if (weights.size() != freqs_hz.size() || assignment.size() != freqs_hz.size())
        throw std::invalid_argument("gain_map: weights, assignment and frequencies must have one entry per subband");
    const std::vector<double> angles = grid(spec.angle_min_deg, spec.angle_max_deg, spec.angle_step_deg, "angle");
    const std::vector<double> ranges = grid(spec.range_min_m, spec.range_max_m, spec.range_step_m, "range");
    if (spec.selector == SubbandSelector::one && spec.subband >= freqs_hz.size())
        throw std::invalid_argument("gain_map: subband index out of range");

    std::size_t num_users = 0;
    for (std::size_t k : assignment)
        num_users = std::max(num_users, k + 1);

    std::vector<GainSample> out;
    for (double a_deg : angles)
        for (double r : ranges) {
            const UserPosition pos = make_user(a_deg * kPi / 180.0, r, cfg);
            auto gain_at = [&](std::size_t m) {
                const double f = spec.steering == SteeringMode::carrier ? cfg.carrier_frequency_hz : freqs_hz[m];
                return array_gain(array_response(pos, f, cfg), weights[m]);
            };
            switch (spec.selector) {
            case SubbandSelector::one:
                out.push_back({a_deg, r, freqs_hz[spec.subband], gain_at(spec.subband)});
                break;
            case SubbandSelector::all:
                for (std::size_t m = 0; m < freqs_hz.size(); ++m)
                    out.push_back({a_deg, r, freqs_hz[m], gain_at(m)});
                break;
            case SubbandSelector::averaged:
                for (std::size_t k = 0; k < num_users; ++k) {
                    double g = 0.0, f = 0.0;
                    std::size_t count = 0;
                    for (std::size_t m = 0; m < freqs_hz.size(); ++m)
                        if (assignment[m] == k) {
                            g += gain_at(m);
                            f += freqs_hz[m];
                            ++count;
                        }
                    if (count > 0)
                        out.push_back({a_deg, r, f / static_cast<double>(count), g / static_cast<double>(count)});
                }
                break;
            }
        }
    return out;
}

std::vector<std::pair<double, double>> rate_cdf(std::vector<double> rates)
{
    std::stable_sort(rates.begin(), rates.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(rates.size());
    const double n = static_cast<double>(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i)
        cdf.emplace_back(rates[i], static_cast<double>(i + 1) / n);
    return cdf;
}

std::vector<std::pair<double, double>> rate_cdf(const BatchResult &batch, Architecture arch, UtilityKind kind)
{
    std::vector<double> rates;
    for (const auto &row : batch.rows)
        if (row.arch == arch && row.utility == kind && row.status == "ok")
            rates.push_back(row.rate_bps);
    return rate_cdf(std::move(rates));
}

} // namespace jpta
