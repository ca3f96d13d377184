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

#ifndef JPTA_CONFIG_IO_HPP
#define JPTA_CONFIG_IO_HPP

#include "jpta/scenario.hpp"

#include <cstdint>
#include <string>

namespace jpta {

// Contents of a scenario file. Keys not present keep their defaults.
struct ScenarioFile {
    SystemConfig config;
    std::uint64_t seed = 1;
};

// Parses "key = value" lines; '#' starts a comment. Power and delay keys
// are given in dBm, dBm/Hz and ns and converted to SI here.
// Throws std::invalid_argument on unknown keys or malformed values.
ScenarioFile parse_scenario(const std::string &text);
ScenarioFile load_scenario(const std::string &path);

// Inverse of parse_scenario, writes every key.
std::string format_scenario(const ScenarioFile &file);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

} // namespace jpta

#endif
