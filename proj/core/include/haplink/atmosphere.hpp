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

namespace haplink::atmosphere {

struct LinkGeometry {
    double h_ground_km = 0.0;
    double h_platform_km = 0.0;
    double zenith_deg = 0.0;
    double slant_km = 0.0;

    static LinkGeometry make(double h_ground_km, double h_platform_km, double zenith_deg);
    double sec_zenith() const;
};

double slant_distance_km(double h_ground_km, double h_platform_km, double zenith_deg);
double effective_layer_length_km(double thickness_km, double zenith_deg);

double visibility_km(double liquid_water_K, double concentration_Q);
double kim_q(double visibility_km);
double geometric_scattering_sigma(double visibility_km, double lambda_nm);

struct MieCoefficients {
    double p1, p2, p3, p4;
};
MieCoefficients mie_coefficients(double lambda_um);
double mie_tau(double h_ground_km, double lambda_um);

double rain_attenuation_fso_db_per_km(double rain_rate_mm_hr);
double free_space_path_gain(double lambda_m, double distance_m, double gain_tx, double gain_rx);

struct ScatteringLayer {
    double thickness_km = 0.0;
    double liquid_water_K = 0.064;   // g/m^3
    double concentration_Q = 0.025;  // cm^-3
};

struct WeatherLayers {
    ScatteringLayer cloud{5.0};
    ScatteringLayer fog{0.3};
    double rain_thickness_km = 1.0;
    double rain_rate_mm_hr = 0.0;
    double thz_rain_theta = 1.6;
    double thz_rain_nu = 0.68;
    double thz_cloud_M = 0.66;
    double ka_rain_delta_db = 0.0;
    double ka_cloud_delta_db = 0.0;

    void validate() const;
};

struct FsoPathBudget {
    double cloud = 1.0;
    double fog = 1.0;
    double mie = 1.0;
    double rain = 1.0;
    double free_space = 1.0;

    double total() const { return cloud * fog * mie * rain * free_space; }
};

FsoPathBudget fso_path_budget(const LinkGeometry& geometry, const WeatherLayers& weather, double lambda_m,
                              double gain_tx, double gain_rx);
double fso_total_path_gain(const LinkGeometry& geometry, const WeatherLayers& weather, double lambda_m,
                           double gain_tx, double gain_rx);

struct ThzAttenuations {
    double rain = 1.0;
    double cloud = 1.0;
    double absorption = 1.0;

    double product() const { return rain * cloud * absorption; }
};

ThzAttenuations thz_attenuations(const WeatherLayers& weather, const LinkGeometry& geometry,
                                 double kappa_a_per_km);

// Combined linear factor of the direct Ka-band rain and cloud attenuations.
double ka_weather_factor(const WeatherLayers& weather);

struct TurbulenceProfile {
    double wind_rms_mps = 21.0;
    double c0 = 1.7e-14;
    double beam_waist_tx_m = 0.02;
    double wavelength_m = 1550e-9;

    void validate() const;
};

double cn2(double h_m, double wind_rms_mps, double c0);

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
};

// ∫ Cn^2(h) dh between the link end points, in m^(1/3).
IntegralEstimate cn2_column(const LinkGeometry& geometry, const TurbulenceProfile& profile, double rel_tol = 1e-6);
IntegralEstimate rytov_column(const LinkGeometry& geometry, const TurbulenceProfile& profile,
                              double rel_tol = 1e-6);

double coherence_diameter_r0(const LinkGeometry& geometry, const TurbulenceProfile& profile);
double rytov_variance(const LinkGeometry& geometry, const TurbulenceProfile& profile);
double pointing_jitter_sigma_pe(const LinkGeometry& geometry, const TurbulenceProfile& profile, double r0);

double gamma_gamma_alpha(double rytov_var, double w0, double r0, double sigma_pe, double w_zeq);
double gamma_gamma_beta(double rytov_var);

struct TurbulenceParams {
    double alpha = 0.0;
    double beta = 0.0;
    double rytov_var = 0.0;
    double r0 = 0.0;
    double sigma_pe = 0.0;
    bool saturated = false;
};

TurbulenceParams gamma_gamma_params(const LinkGeometry& geometry, const TurbulenceProfile& profile, double w_zeq,
                                    double max_shape = 1e3);

} // namespace haplink::atmosphere
