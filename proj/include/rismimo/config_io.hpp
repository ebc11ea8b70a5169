// SPDX-License-Identifier: Apache-2.0
//
// rismimo: channel statistics of RIS-assisted massive MIMO links
// Copyright (C) 2026 The rismimo contributors
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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rismimo/scenario.hpp"

namespace rismimo
{
    // Raised for malformed configuration text (syntax, unknown keys, wrong types).
    class ConfigError : public std::invalid_argument
    {
    public:
        explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
    };

    /// Parses a scenario from JSON text. Missing keys keep their defaults; unknown keys are
    /// errors. The schema is documented in README.md.
    ScenarioConfig config_from_json(const std::string &text);

    // Full JSON form of a config (every key present); round-trips through config_from_json.
    std::string config_to_json(const ScenarioConfig &config);

    /// "3deg" -> 0.05236, "0.1rad" -> 0.1, "0.1" -> 0.1 (radians when no unit is given).
    double parse_angle(const std::string &text);

    // "30dB" -> 1000, "2.5" -> 2.5.
    double parse_gain(const std::string &text);

    /// Grid of (M, N) points from "16,32,64" (M = N) or "8x16,32x32".
    std::vector<std::pair<Index, Index>> parse_grid(const std::string &text);

} // namespace rismimo
