// SPDX-License-Identifier: Apache-2.0
//
// haplink - secrecy outage analysis for HAP-relayed FSO/THz/Ka-band networks
// Copyright (C) 2026 The haplink authors
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


#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haplink/config.hpp"
#include "haplink/montecarlo.hpp"
#include "haplink/secrecy.hpp"

namespace haplink::runner {

struct Scenario {
    std::vector<secrecy::HapLinks> links;
    // Some HAP hit the alpha/beta cap.
    bool saturated = false;
};

Scenario build_scenario(const ScenarioConfig& c);

montecarlo::FirstHop parse_variant(std::string_view variant);
double first_hop_sop(std::string_view variant, double p_fso, double p_thz);

struct HapRow {
    double p_fso = 0;
    double p_thz = 0;
    double p_first_hop = 0;
    double p_ka = 0;
    double p_e2e = 0;
};

struct SweepRow {
    double axis_value = 0;
    std::vector<HapRow> haps;
    // Index of the HAP with the lowest analytic end-to-end SOP.
    std::size_t best = 0;
    double p_total_analytic = 0;
    bool has_analytic = false;
    std::optional<montecarlo::BinomialEstimate> mc;
    std::vector<std::string> flags;
    bool failed = false;
};

struct SweepResult {
    std::string label;
    std::string axis;
    std::string variant = "hybrid";
    std::vector<SweepRow> rows;

    bool all_failed() const;
};

// Rows follow the sweep order; a failing point becomes a flagged row.
SweepResult run_sweep(const ScenarioConfig& c, const std::string& variant);

struct Series {
    std::string label;
    std::string variant;
    ScenarioConfig config;
};

// One series per configured variant.
std::vector<Series> config_series(const ScenarioConfig& c, const std::string& label);

std::vector<std::string> preset_names();
// Series for a figure preset, derived from `base`.
std::vector<Series> preset_series(std::string_view name, const ScenarioConfig& base);

} // namespace haplink::runner
