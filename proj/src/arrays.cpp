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

#include "jpta/arrays.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jpta {

JptaBeamformer make_flat_beamformer(const SystemConfig &cfg)
{
    if (cfg.num_ttds == 0)
        throw std::invalid_argument("a JPTA beamformer needs at least one TTD");
    JptaBeamformer bf;
    bf.ps.phases.assign(cfg.num_ttds, std::vector<double>(cfg.subarray_size(), 0.0));
    bf.ttd.delays_s.assign(cfg.num_ttds, 0.0);
    return bf;
}

void check_beamformer(const JptaBeamformer &bf, const SystemConfig &cfg)
{
    if (bf.ps.num_ttds() != cfg.num_ttds || bf.ttd.delays_s.size() != cfg.num_ttds)
        throw std::invalid_argument("beamformer TTD count does not match configuration");
    for (const auto &row : bf.ps.phases)
        if (row.size() != cfg.subarray_size())
            throw std::invalid_argument("phase-shifter subarray size does not match configuration");
    for (double tau : bf.ttd.delays_s)
        if (!(tau >= 0.0 && tau <= cfg.max_delay_s))
            throw std::invalid_argument("TTD delay outside [0, max_delay]");
}

void check_plan(const AllocationPlan &plan, std::size_t num_users, const SystemConfig &cfg)
{
    if (plan.assignment.size() != cfg.num_subbands || plan.power_w.size() != cfg.num_subbands)
        throw std::invalid_argument("plan size does not match the number of subbands");
    double total = 0.0;
    for (std::size_t m = 0; m < cfg.num_subbands; ++m) {
        if (plan.assignment[m] >= num_users)
            throw std::invalid_argument("subband " + std::to_string(m) + " assigned to unknown user");
        if (!(plan.power_w[m] >= 0.0))
            throw std::invalid_argument("negative power on subband " + std::to_string(m));
        total += plan.power_w[m];
    }
    if (total > cfg.transmit_power_w + 1e-9)
        throw std::invalid_argument("power budget exceeded");
    if (plan.relaxed.rows() > 0) {
        if (plan.relaxed.rows() != cfg.num_subbands || plan.relaxed.cols() != num_users)
            throw std::invalid_argument("relaxed allocation has wrong shape");
        for (std::size_t m = 0; m < plan.relaxed.rows(); ++m) {
            double s = 0.0;
            for (std::size_t k = 0; k < plan.relaxed.cols(); ++k) {
                const double b = plan.relaxed(m, k);
                if (b < -1e-12 || b > 1.0 + 1e-12)
                    throw std::invalid_argument("relaxed allocation entry outside [0, 1]");
                s += b;
            }
            if (std::abs(s - 1.0) > 1e-9)
                throw std::invalid_argument("relaxed allocation row does not sum to one");
        }
    }
}

const char *to_string(UtilityKind kind) { return kind == UtilityKind::sum ? "sum" : "log"; }

const char *to_string(Architecture arch)
{
    switch (arch) {
    case Architecture::fd: return "fd";
    case Architecture::pa: return "pa";
    case Architecture::jpta: return "jpta";
    }
    return "?";
}

UtilityKind parse_utility_kind(const std::string &s)
{
    if (s == "sum") return UtilityKind::sum;
    if (s == "log") return UtilityKind::log;
    throw std::invalid_argument("unknown utility kind: " + s);
}

Architecture parse_architecture(const std::string &s)
{
    if (s == "fd") return Architecture::fd;
    if (s == "pa") return Architecture::pa;
    if (s == "jpta") return Architecture::jpta;
    throw std::invalid_argument("unknown architecture: " + s);
}

CVec ttd_phase_vector(const TtdBank &ttd, double f_hz)
{
    if (!(f_hz > 0.0))
        throw std::invalid_argument("frequency must be positive");
    CVec t(ttd.delays_s.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = std::polar(1.0, -2.0 * kPi * f_hz * ttd.delays_s[i]);
    return t;
}

CVec effective_beamformer(const JptaBeamformer &bf, double f_hz)
{
    if (bf.ttd.delays_s.size() != bf.ps.num_ttds())
        throw std::invalid_argument("phase-shifter and TTD banks disagree on the TTD count");
    const CVec t = ttd_phase_vector(bf.ttd, f_hz);
    const std::size_t sub = bf.ps.subarray_size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(bf.num_antennas()));
    CVec w(bf.num_antennas());
    for (std::size_t i = 0; i < bf.ps.num_ttds(); ++i)
        for (std::size_t j = 0; j < sub; ++j)
            w[i * sub + j] = scale * std::polar(1.0, bf.ps.phases[i][j]) * t[i];
    return w;
}

std::vector<CVec> effective_weights(const JptaBeamformer &bf, const std::vector<double> &freqs_hz)
{
    std::vector<CVec> out;
    out.reserve(freqs_hz.size());
    for (double f : freqs_hz)
        out.push_back(effective_beamformer(bf, f));
    return out;
}

double array_gain(const CVec &a, const CVec &w)
{
    if (a.size() != w.size())
        throw std::invalid_argument("array_gain: length mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(w.size()) + ")");
    cplx s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        s += std::conj(a[n]) * w[n];
    return std::norm(s);
}

double effective_cnr(const CVec &h, const CVec &w, double noise_power_w)
{
    return array_gain(h, w) / noise_power_w;
}

RealMatrix cnr_matrix(const ChannelSet &channels, const std::vector<CVec> &weights, double noise_power_w)
{
    if (weights.size() != channels.num_subbands())
        throw std::invalid_argument("cnr_matrix: one weight vector per subband required");
    RealMatrix d(channels.num_subbands(), channels.num_users());
    for (std::size_t m = 0; m < d.rows(); ++m)
        for (std::size_t k = 0; k < d.cols(); ++k)
            d(m, k) = effective_cnr(channels.at(m, k), weights[m], noise_power_w);
    return d;
}

RealMatrix rate_coefficients(const std::vector<double> &power_w, const RealMatrix &cnr, const SystemConfig &cfg)
{
    const double bw = cfg.subband_bandwidth_hz();
    RealMatrix c(cnr.rows(), cnr.cols());
    for (std::size_t m = 0; m < c.rows(); ++m)
        for (std::size_t k = 0; k < c.cols(); ++k)
            c(m, k) = bw * std::log2(1.0 + power_w[m] * cnr(m, k));
    return c;
}

std::vector<double> user_rates(const Assignment &assignment, const std::vector<double> &power_w,
                               const RealMatrix &cnr, const SystemConfig &cfg)
{
    const double bw = cfg.subband_bandwidth_hz();
    std::vector<double> rates(cnr.cols(), 0.0);
    for (std::size_t m = 0; m < assignment.size(); ++m) {
        const std::size_t k = assignment[m];
        rates.at(k) += bw * std::log2(1.0 + power_w[m] * cnr(m, k));
    }
    return rates;
}

double user_rate(std::size_t k, const AllocationPlan &plan, const ChannelSet &channels,
                 const std::vector<CVec> &weights, const SystemConfig &cfg)
{
    const double bw = cfg.subband_bandwidth_hz();
    const double noise = cfg.noise_power_w();
    double r = 0.0;
    for (std::size_t m = 0; m < plan.assignment.size(); ++m)
        if (plan.assignment[m] == k)
            r += bw * std::log2(1.0 + plan.power_w[m] * effective_cnr(channels.at(m, k), weights.at(m), noise));
    return r;
}

double user_rate(std::size_t k, const AllocationPlan &plan, const ChannelSet &channels,
                 const JptaBeamformer &bf, const SystemConfig &cfg)
{
    return user_rate(k, plan, channels, effective_weights(bf, channels.subband_frequencies_hz), cfg);
}

double utility(const std::vector<double> &rates, UtilityKind kind)
{
    double u = 0.0;
    for (double r : rates) {
        if (kind == UtilityKind::sum) {
            u += r;
        } else {
            if (!(r > 0.0))
                return kNegInf;
            u += std::log(r);
        }
    }
    return u;
}

} // namespace jpta
