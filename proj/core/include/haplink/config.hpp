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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace haplink::runner {

struct SweepSpec {
    std::string axis;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
    bool operator==(const SweepSpec&) const = default;
};

// "axis=start:stop:step"
SweepSpec parse_sweep(std::string_view text);
std::string format_sweep(const SweepSpec& s);

struct ScenarioConfig {
    // [link]
    double rate_bps_hz = 3.0;
    int detection_r = 2;
    double eta = 1.0;
    double rho_h = 2.0 / 3.0;
    double upsilon_db = 150.0;
    // Upsilon_U = Upsilon + offset
    double upsilon_u_offset_db = 0.0;
    double upsilon_e1_db = 130.0;
    double upsilon_e2_db = 130.0;

    // [constellation]
    int n_haps = 1;
    double altitude_km = 19.0;
    // Optional per-HAP override; when set its length must equal n_haps.
    std::vector<double> altitudes_km;
    double ground_altitude_km = 0.01;
    double zenith_deg = 30.0;
    double access_zenith_deg = 30.0;

    // [fso]
    double lambda_fso_nm = 1550.0;
    double fso_gain_tx = 1e12;
    double fso_gain_rx = 1e12;
    double w0_cm = 2.0;
    double fso_w_z_m = 15.0;
    double fso_aperture_radius_m = 0.25;

    // [thz]
    double lambda_thz_mm = 1.5;
    double thz_gain_tx = 1e5;
    double thz_gain_rx = 1e5;
    double thz_w_z_m = 15.0;
    double thz_aperture_radius_m = 1.0;
    double kappa_a_per_km = 4.4e-3;
    double thz_rain_theta = 1.6;
    double thz_rain_nu = 0.68;
    double thz_cloud_m = 0.66;

    // [pointing]
    double sigma_s_m = 10.0;

    // [weather]
    double cloud_thickness_km = 5.0;
    double cloud_liquid_water_g_m3 = 0.064;
    double cloud_concentration_cm3 = 0.025;
    double fog_thickness_km = 0.3;
    double fog_liquid_water_g_m3 = 0.064;
    double fog_concentration_cm3 = 0.025;
    double rain_thickness_km = 1.0;
    double rain_rate_mm_hr = 0.0;

    // [turbulence]
    double wind_rms_mps = 21.0;
    double c0_m23 = 1.7e-14;

    // [ka]
    int ka_m_s = 19;
    double ka_omega_s = 1.29;
    double ka_b = 0.158;
    double lambda_ka_mm = 15.0;
    double ka_gain_tx = 1e4;
    double ka_gain_rx = 1.0;
    double ka_rain_db = 0.0;
    double ka_cloud_db = 0.0;

    // [mc]
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool shared_turbulence = false;

    // [run]
    std::string mode = "analytic";
    std::string sweep;
    // Any of "hybrid", "thz-only", "fso-only"; one curve each.
    std::vector<std::string> variants{"hybrid"};

    bool operator==(const ScenarioConfig&) const = default;

    std::vector<double> hap_altitudes_km() const;
    double upsilon_u_db() const { return upsilon_db + upsilon_u_offset_db; }
};

// Throws ConfigError listing every problem.
void validate(const ScenarioConfig& c);

ScenarioConfig parse_config(std::string_view toml_text, std::string_view source = "<string>");
ScenarioConfig load_config(const std::string& path);
std::string emit_config(const ScenarioConfig& c);

// Sets a numeric field by its key ("upsilon_db" or "link.upsilon_db").
void set_numeric(ScenarioConfig& c, std::string_view key, double value);
double get_numeric(const ScenarioConfig& c, std::string_view key);
std::vector<std::string> numeric_keys();

} // namespace haplink::runner
