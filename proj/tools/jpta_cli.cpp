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

#include "jpta/config_io.hpp"
#include "jpta/harness.hpp"
#include "jpta/serialization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

using namespace jpta;

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
};

ScenarioFile load(const CommonArgs &a)
{
    ScenarioFile f = a.config_path.empty() ? ScenarioFile{} : load_scenario(a.config_path);
    if (a.seed)
        f.seed = *a.seed;
    return f;
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    os << text;
    if (!text.empty() && text.back() != '\n')
        os << '\n';
}

int fail(const std::string &kind, const std::string &message)
{
    std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
    return kind == "usage" ? 2 : 1;
}

std::vector<Architecture> parse_archs(const std::vector<std::string> &names)
{
    std::vector<Architecture> out;
    for (const auto &n : names)
        out.push_back(parse_architecture(n));
    return out;
}

std::vector<UtilityKind> parse_kinds(const std::vector<std::string> &names)
{
    std::vector<UtilityKind> out;
    for (const auto &n : names)
        out.push_back(parse_utility_kind(n));
    return out;
}

Solution solve_one(const ScenarioFile &f, Architecture arch, UtilityKind kind)
{
    const ChannelSet channels = synthesize_channels(sample_users(f.seed, f.config), f.config);
    return solve(arch, channels, f.config, kind, default_ao_options(f.config));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Wideband joint phase-time array beamforming simulator"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string arch_name = "jpta";
    std::string utility_name = "log";
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", common.config_path, "scenario file (key = value)");
        sub->add_option("--seed", common.seed, "placement seed, overrides the file");
        sub->add_option("--out", common.out, "output path, stdout when omitted");
    };

    auto *opt = app.add_subcommand("optimize", "solve one scenario, write the solution as JSON");
    add_common(opt);
    opt->add_option("--arch", arch_name)->check(CLI::IsMember({"fd", "pa", "jpta"}));
    opt->add_option("--utility", utility_name)->check(CLI::IsMember({"sum", "log"}));
    std::string trace_path;
    opt->add_option("--trace", trace_path, "write one JSON trace record per line here");

    auto *gm = app.add_subcommand("gain-map", "solve one scenario, write |a^H w|^2 over an angle-range grid");
    add_common(gm);
    gm->add_option("--arch", arch_name)->check(CLI::IsMember({"fd", "pa", "jpta"}));
    gm->add_option("--utility", utility_name)->check(CLI::IsMember({"sum", "log"}));
    std::string selector = "all", steering = "subband";
    GainMapSpec spec;
    gm->add_option("--subbands", selector)->check(CLI::IsMember({"one", "all", "averaged"}));
    gm->add_option("--subband", spec.subband, "subband index for --subbands one");
    gm->add_option("--steering", steering)->check(CLI::IsMember({"subband", "carrier"}));
    gm->add_option("--angle-step", spec.angle_step_deg);
    gm->add_option("--range-step", spec.range_step_m);

    BatchOptions bopts;
    std::vector<std::string> batch_archs{"jpta"}, batch_utils{"log"};
    bool no_timing = false;
    auto add_batch = [&](CLI::App *sub) {
        add_common(sub);
        sub->add_option("--arch", batch_archs, "one or more of fd, pa, jpta")->check(CLI::IsMember({"fd", "pa", "jpta"}));
        sub->add_option("--utility", batch_utils, "one or more of sum, log")->check(CLI::IsMember({"sum", "log"}));
        sub->add_option("--scenarios", bopts.scenarios)->check(CLI::PositiveNumber);
        sub->add_option("--threads", bopts.threads, "worker threads, 0 for all cores");
        sub->add_flag("--no-timing", no_timing, "write runtime_s as 0 so output is reproducible byte for byte");
    };
    auto *batch = app.add_subcommand("batch", "solve many seeded scenarios, write per-user rows as CSV");
    add_batch(batch);

    auto *sw = app.add_subcommand("sweep", "repeat a batch over values of one parameter");
    add_batch(sw);
    std::string param_name;
    std::vector<double> values;
    sw->add_option("--param", param_name, "num_ttds, max_delay_s or bandwidth_hz")
        ->required()
        ->check(CLI::IsMember({"num_ttds", "max_delay_s", "bandwidth_hz"}));
    sw->add_option("--values", values, "comma separated values")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what());
    }

    try {
        const ScenarioFile f = load(common);
        if (*opt || *gm) {
            const Architecture arch = parse_architecture(arch_name);
            const UtilityKind kind = parse_utility_kind(utility_name);
            const Solution s = solve_one(f, arch, kind);
            if (*opt) {
                emit(solution_to_json(s, kind), common.out);
                if (!trace_path.empty()) {
                    std::string lines;
                    for (const auto &r : s.trace)
                        lines += trace_record_to_json(r) + "\n";
                    emit(lines, trace_path);
                }
            } else {
                spec.selector = selector == "one" ? SubbandSelector::one
                                : selector == "all" ? SubbandSelector::all
                                                    : SubbandSelector::averaged;
                spec.steering = steering == "carrier" ? SteeringMode::carrier : SteeringMode::per_subband;
                emit(gain_map_to_csv(gain_map(s.weights, s.plan.assignment, subband_frequencies(f.config), f.config,
                                              spec)),
                     common.out);
            }
            return 0;
        }

        bopts.seed = f.seed;
        bopts.archs = parse_archs(batch_archs);
        bopts.kinds = parse_kinds(batch_utils);
        bopts.record_runtime = !no_timing;
        if (*batch) {
            emit(batch_to_csv(run_batch(f.config, bopts)), common.out);
        } else {
            emit(sweep_to_csv(sweep(parse_sweep_parameter(param_name), values, f.config, bopts)), common.out);
        }
        return 0;
    } catch (const std::invalid_argument &e) {
        return fail("invalid_argument", e.what());
    } catch (const std::exception &e) {
        return fail("runtime", e.what());
    }
}
