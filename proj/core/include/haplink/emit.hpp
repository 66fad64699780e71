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

#include <string>
#include <vector>

#include "haplink/sweep.hpp"

namespace haplink::runner {

std::string csv_text(const SweepResult& r, bool per_hap);
void write_csv(const SweepResult& r, const std::string& path, bool per_hap);

// Log-scale SOP against the swept axis: analytic lines, MC markers with 95 % bars.
std::string svg_text(const std::vector<SweepResult>& series, const std::string& title);
void write_svg(const std::vector<SweepResult>& series, const std::string& title, const std::string& path);

} // namespace haplink::runner
