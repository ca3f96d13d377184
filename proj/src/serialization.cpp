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

#include "jpta/serialization.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace jpta {

using nlohmann::json;

namespace {

json beamformer_json(const JptaBeamformer &bf)
{
    json delays = json::array();
    for (double t : bf.ttd.delays_s)
        delays.push_back(t * 1e9);
    return json{{"phases", bf.ps.phases}, {"delays_ns", delays}};
}

JptaBeamformer beamformer_from(const json &j)
{
    JptaBeamformer bf;
    bf.ps.phases = j.at("phases").get<std::vector<std::vector<double>>>();
    for (double t : j.at("delays_ns").get<std::vector<double>>())
        bf.ttd.delays_s.push_back(t * 1e-9);
    if (bf.ps.phases.size() != bf.ttd.delays_s.size())
        throw std::invalid_argument("beamformer record: phases and delays_ns disagree on the TTD count");
    return bf;
}

double number_or_neg_inf(const json &j) { return j.is_null() ? kNegInf : j.get<double>(); }

json trace_json(const TraceRecord &r)
{
    return json{{"iter", r.iter},
                {"utility", r.utility},
                {"penalty", r.penalty},
                {"constraint_violation", r.constraint_violation},
                {"fit_residual", r.fit_residual}};
}

} // namespace

std::string beamformer_to_json(const JptaBeamformer &bf) { return beamformer_json(bf).dump(); }

JptaBeamformer beamformer_from_json(const std::string &text)
{
    try {
        return beamformer_from(json::parse(text));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed beamformer record: ") + e.what());
    }
}

std::string trace_record_to_json(const TraceRecord &r) { return trace_json(r).dump(); }

std::string solution_to_json(const Solution &s, UtilityKind kind)
{
    json j;
    j["architecture"] = to_string(s.arch);
    j["utility"] = to_string(kind);
    switch (s.arch) {
    case Architecture::jpta:
        j["beamformer"] = beamformer_json(s.jpta);
        break;
    case Architecture::pa:
        j["beamformer"] = json{{"phases", json::array({s.pa.phases})}, {"delays_ns", json::array()}};
        break;
    case Architecture::fd: {
        json w = json::array();
        for (const auto &wm : s.fd.w) {
            json v = json::array();
            for (const auto &x : wm)
                v.push_back({x.real(), x.imag()});
            w.push_back(v);
        }
        j["beamformer"] = json{{"weights", w}};
        break;
    }
    }
    j["plan"] = json{{"assignment", s.plan.assignment}, {"power_w", s.plan.power_w}};
    j["rates_bps"] = s.rates;
    json trace = json::array();
    for (const auto &r : s.trace)
        trace.push_back(trace_json(r));
    j["trace"] = trace;
    return j.dump(2);
}

Solution solution_from_json(const std::string &text)
{
    try {
        const json j = json::parse(text);
        Solution s;
        s.arch = parse_architecture(j.at("architecture").get<std::string>());
        const json &bf = j.at("beamformer");
        switch (s.arch) {
        case Architecture::jpta:
            s.jpta = beamformer_from(bf);
            break;
        case Architecture::pa: {
            const auto rows = bf.at("phases").get<std::vector<std::vector<double>>>();
            if (rows.size() != 1)
                throw std::invalid_argument("PA record must hold exactly one phase row");
            s.pa.phases = rows.front();
            break;
        }
        case Architecture::fd:
            for (const auto &wm : bf.at("weights")) {
                CVec v;
                for (const auto &x : wm)
                    v.emplace_back(x.at(0).get<double>(), x.at(1).get<double>());
                s.fd.w.push_back(std::move(v));
            }
            break;
        }
        s.plan.assignment = j.at("plan").at("assignment").get<Assignment>();
        s.plan.power_w = j.at("plan").at("power_w").get<std::vector<double>>();
        s.rates = j.at("rates_bps").get<std::vector<double>>();
        for (const auto &r : j.at("trace")) {
            TraceRecord t;
            t.iter = r.at("iter").get<std::size_t>();
            t.utility = number_or_neg_inf(r.at("utility"));
            t.penalty = r.at("penalty").get<double>();
            t.constraint_violation = r.at("constraint_violation").get<double>();
            t.fit_residual = r.at("fit_residual").get<double>();
            s.trace.push_back(t);
            s.utility_trace.push_back(t.utility);
        }
        return s;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed solution record: ") + e.what());
    }
}

} // namespace jpta
