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

#include "haplink/atmosphere.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "haplink/errors.hpp"

namespace haplink::atmosphere {

namespace {

constexpr double kPi = std::numbers::pi;

double cos_zenith(double zenith_deg) {
    if (!(zenith_deg >= 0.0) || zenith_deg >= 90.0) {
        throw DomainError("zenith angle must lie in [0, 90) degrees, got " + std::to_string(zenith_deg));
    }
    return std::cos(zenith_deg * kPi / 180.0);
}

double db_to_linear_loss(double db) { return std::pow(10.0, -db / 10.0); }

// Integrates f over [a, b] with extra breakpoints at the profile's scale heights.
// `map` sends the integration variable to altitude; `inverse` locates the breakpoints.
template <class F, class Map, class Inverse>
IntegralEstimate integrate_profile(F f, Map map, Inverse inverse, double a, double b, double rel_tol) {
    std::vector<double> cuts{a, b};
    for (double h : {100.0, 1000.0, 5000.0}) {
        const double t = inverse(h);
        if (t > a && t < b) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    IntegralEstimate out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        // Mapped onto [-1, 1] so the error estimate comes back in absolute units.
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const double half = 0.5 * (cuts[i + 1] - cuts[i]);
        auto g = [&](double t) { return half * f(map(mid + half * t)); };
        double err = 0.0;
        double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, 20, rel_tol, &err);
        if (!std::isfinite(v)) throw NumericError("profile quadrature diverged", out.value, out.error);
        out.value += v;
        out.error += err;
    }
    if (out.error > 10.0 * rel_tol * std::abs(out.value) + 1e-300) {
        throw NumericError("profile quadrature did not reach tolerance", out.value, out.error);
    }
    return out;
}

double wavenumber(const TurbulenceProfile& p) { return 2.0 * kPi / p.wavelength_m; }

} // namespace

LinkGeometry LinkGeometry::make(double h_ground_km, double h_platform_km, double zenith_deg) {
    LinkGeometry g;
    g.h_ground_km = h_ground_km;
    g.h_platform_km = h_platform_km;
    g.zenith_deg = zenith_deg;
    g.slant_km = slant_distance_km(h_ground_km, h_platform_km, zenith_deg);
    return g;
}

double LinkGeometry::sec_zenith() const { return 1.0 / cos_zenith(zenith_deg); }

double slant_distance_km(double h_ground_km, double h_platform_km, double zenith_deg) {
    if (!(h_ground_km >= 0.0)) throw DomainError("ground altitude must be nonnegative");
    if (!(h_platform_km > h_ground_km)) throw DomainError("platform must be above the ground station");
    return (h_platform_km - h_ground_km) / cos_zenith(zenith_deg);
}

double effective_layer_length_km(double thickness_km, double zenith_deg) {
    if (!(thickness_km >= 0.0)) throw DomainError("layer thickness must be nonnegative");
    return thickness_km / cos_zenith(zenith_deg);
}

double visibility_km(double liquid_water_K, double concentration_Q) {
    if (!(liquid_water_K > 0.0) || !(concentration_Q > 0.0)) {
        throw DomainError("liquid water content and concentration must be positive");
    }
    return 1.002 / std::pow(liquid_water_K * concentration_Q, 0.6473);
}

double kim_q(double v) {
    if (v > 50.0) return 1.6;
    if (v > 6.0) return 1.3;
    if (v > 1.0) return 0.16 * v + 0.34;
    if (v > 0.5) return v - 0.5;
    return 0.0;
}

double geometric_scattering_sigma(double v, double lambda_nm) {
    if (!(v > 0.0)) throw DomainError("visibility must be positive");
    if (!(lambda_nm > 0.0)) throw DomainError("wavelength must be positive");
    return 3.91 / v * std::pow(lambda_nm / 550.0, -kim_q(v));
}

MieCoefficients mie_coefficients(double l) {
    const double l2 = l * l;
    const double l3 = l2 * l;
    return {0.000487 * l3 - 0.002237 * l2 + 0.003864 * l - 0.004442,
            -0.00573 * l3 + 0.02639 * l2 - 0.04552 * l + 0.05164,
            0.02565 * l3 - 0.1191 * l2 + 0.20385 * l - 0.216,
            -0.0638 * l3 + 0.3034 * l2 - 0.5083 * l + 0.425};
}

double mie_tau(double h, double lambda_um) {
    if (!(h >= 0.0)) throw DomainError("ground altitude must be nonnegative");
    auto p = mie_coefficients(lambda_um);
    return ((p.p1 * h + p.p2) * h + p.p3) * h + p.p4;
}

double rain_attenuation_fso_db_per_km(double rain_rate) {
    if (!(rain_rate >= 0.0)) throw DomainError("rain rate must be nonnegative");
    return 1.076 * std::pow(rain_rate, 0.67);
}

double free_space_path_gain(double lambda_m, double distance_m, double gain_tx, double gain_rx) {
    if (!(lambda_m > 0.0) || !(distance_m > 0.0) || !(gain_tx > 0.0) || !(gain_rx > 0.0)) {
        throw DomainError("free-space gain inputs must be positive");
    }
    const double r = lambda_m / (4.0 * kPi * distance_m);
    return gain_tx * gain_rx * r * r;
}

void WeatherLayers::validate() const {
    for (const auto* layer : {&cloud, &fog}) {
        if (!(layer->thickness_km >= 0.0)) throw DomainError("layer thickness must be nonnegative");
        if (!(layer->liquid_water_K > 0.0) || !(layer->concentration_Q > 0.0)) {
            throw DomainError("layer K and Q must be positive");
        }
    }
    if (!(rain_thickness_km >= 0.0)) throw DomainError("rain thickness must be nonnegative");
    if (!(rain_rate_mm_hr >= 0.0)) throw DomainError("rain rate must be nonnegative");
    if (!(thz_cloud_M >= 0.0) || !(thz_rain_theta >= 0.0) || !std::isfinite(thz_rain_nu)) {
        throw DomainError("THz weather coefficients must be finite and nonnegative");
    }
    if (!(ka_rain_delta_db >= 0.0) || !(ka_cloud_delta_db >= 0.0)) {
        throw DomainError("Ka attenuations must be nonnegative dB values");
    }
}

FsoPathBudget fso_path_budget(const LinkGeometry& geometry, const WeatherLayers& weather, double lambda_m,
                              double gain_tx, double gain_rx) {
    weather.validate();
    const double lambda_nm = lambda_m * 1e9;
    auto layer_factor = [&](const ScatteringLayer& layer) {
        if (layer.thickness_km == 0.0) return 1.0;
        const double sigma =
            geometric_scattering_sigma(visibility_km(layer.liquid_water_K, layer.concentration_Q), lambda_nm);
        return std::exp(-sigma * effective_layer_length_km(layer.thickness_km, geometry.zenith_deg));
    };
    FsoPathBudget b;
    b.cloud = layer_factor(weather.cloud);
    b.fog = layer_factor(weather.fog);
    b.mie = std::exp(-mie_tau(geometry.h_ground_km, lambda_m * 1e6) * geometry.sec_zenith());
    if (weather.rain_rate_mm_hr > 0.0 && weather.rain_thickness_km > 0.0) {
        b.rain = db_to_linear_loss(rain_attenuation_fso_db_per_km(weather.rain_rate_mm_hr) *
                                   effective_layer_length_km(weather.rain_thickness_km, geometry.zenith_deg));
    }
    b.free_space = free_space_path_gain(lambda_m, geometry.slant_km * 1e3, gain_tx, gain_rx);
    return b;
}

double fso_total_path_gain(const LinkGeometry& geometry, const WeatherLayers& weather, double lambda_m,
                           double gain_tx, double gain_rx) {
    return fso_path_budget(geometry, weather, lambda_m, gain_tx, gain_rx).total();
}

ThzAttenuations thz_attenuations(const WeatherLayers& weather, const LinkGeometry& geometry,
                                 double kappa_a_per_km) {
    weather.validate();
    if (!(kappa_a_per_km >= 0.0)) throw DomainError("absorption coefficient must be nonnegative");
    ThzAttenuations t;
    if (weather.rain_rate_mm_hr > 0.0 && weather.rain_thickness_km > 0.0) {
        const double db_per_km = weather.thz_rain_theta * std::pow(weather.rain_rate_mm_hr, weather.thz_rain_nu);
        t.rain = db_to_linear_loss(db_per_km *
                                   effective_layer_length_km(weather.rain_thickness_km, geometry.zenith_deg));
    }
    for (const auto* layer : {&weather.cloud, &weather.fog}) {
        if (layer->thickness_km == 0.0) continue;
        t.cloud *= std::pow(10.0, -layer->liquid_water_K * weather.thz_cloud_M *
                                      effective_layer_length_km(layer->thickness_km, geometry.zenith_deg));
    }
    t.absorption = std::exp(-kappa_a_per_km * geometry.slant_km);
    return t;
}

double ka_weather_factor(const WeatherLayers& weather) {
    return db_to_linear_loss(weather.ka_rain_delta_db + weather.ka_cloud_delta_db);
}

void TurbulenceProfile::validate() const {
    if (!(wind_rms_mps > 0.0)) throw DomainError("rms wind speed must be positive");
    if (!(c0 > 0.0)) throw DomainError("ground structure constant must be positive");
    if (!(beam_waist_tx_m > 0.0)) throw DomainError("beam waist must be positive");
    if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
}

double cn2(double h, double wind, double c0) {
    const double w = wind / 27.0;
    return 0.00594 * w * w * std::pow(1e-5 * h, 10) * std::exp(-h / 1000.0) + 2.7e-16 * std::exp(-h / 1500.0) +
           c0 * std::exp(-h / 100.0);
}

IntegralEstimate cn2_column(const LinkGeometry& geometry, const TurbulenceProfile& profile, double rel_tol) {
    profile.validate();
    const double a = geometry.h_ground_km * 1e3;
    const double b = geometry.h_platform_km * 1e3;
    auto ident = [](double h) { return h; };
    return integrate_profile([&](double h) { return cn2(h, profile.wind_rms_mps, profile.c0); }, ident, ident, a,
                             b, rel_tol);
}

IntegralEstimate rytov_column(const LinkGeometry& geometry, const TurbulenceProfile& profile, double rel_tol) {
    profile.validate();
    const double a = geometry.h_ground_km * 1e3;
    const double span = geometry.h_platform_km * 1e3 - a;
    // h = a + span (1 - cos th) / 2 removes the d^(5/6) endpoint behaviour at both ends.
    auto map = [&](double th) { return th; };
    auto inverse = [&](double h) { return std::acos(std::clamp(1.0 - 2.0 * (h - a) / span, -1.0, 1.0)); };
    auto f = [&](double th) {
        const double d = 0.5 * span * (1.0 - std::cos(th));
        const double u = 0.5 * (1.0 + std::cos(th));
        const double jac = 0.5 * span * std::sin(th);
        return std::pow(u * d, 5.0 / 6.0) * cn2(a + d, profile.wind_rms_mps, profile.c0) * jac;
    };
    return integrate_profile(f, map, inverse, 0.0, kPi, rel_tol);
}

double coherence_diameter_r0(const LinkGeometry& geometry, const TurbulenceProfile& profile) {
    const double k = wavenumber(profile);
    const double col = cn2_column(geometry, profile).value;
    return std::pow(0.42 * k * k * geometry.sec_zenith() * col, -0.6);
}

double rytov_variance(const LinkGeometry& geometry, const TurbulenceProfile& profile) {
    const double k = wavenumber(profile);
    const double col = rytov_column(geometry, profile).value;
    return 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(geometry.sec_zenith(), 11.0 / 6.0) * col;
}

double pointing_jitter_sigma_pe(const LinkGeometry& geometry, const TurbulenceProfile& profile, double r0) {
    const double w0 = profile.beam_waist_tx_m;
    const double spread = geometry.slant_km * 1e3 * profile.wavelength_m / (2.0 * w0);
    const double x = 2.0 * kPi * w0 / r0;
    const double x2 = x * x;
    return 0.54 * spread * spread * (1.0 - std::pow(x2 / (x2 + 1.0), 1.0 / 6.0)) / std::pow(2.0 * w0 / r0, -5.0 / 3.0);
}

double gamma_gamma_alpha(double rytov_var, double w0, double r0, double sigma_pe, double w_zeq) {
    const double jitter = 5.95 * std::pow(2.0 * w0 / r0, 5.0 / 3.0) * std::pow(sigma_pe / w_zeq, 2);
    const double s = rytov_var;
    return 1.0 / (jitter + std::expm1(0.49 * s / std::pow(1.0 + 0.56 * std::pow(s, 1.2), 7.0 / 6.0)));
}

double gamma_gamma_beta(double rytov_var) {
    const double s = rytov_var;
    return 1.0 / std::expm1(0.51 * s / std::pow(1.0 + 0.69 * std::pow(s, 1.2), 5.0 / 6.0));
}

TurbulenceParams gamma_gamma_params(const LinkGeometry& geometry, const TurbulenceProfile& profile, double w_zeq,
                                    double max_shape) {
    if (!(w_zeq > 0.0)) throw DomainError("equivalent beam width must be positive");
    if (!(max_shape > 0.0)) throw DomainError("shape cap must be positive");
    TurbulenceParams t;
    t.rytov_var = rytov_variance(geometry, profile);
    t.r0 = coherence_diameter_r0(geometry, profile);
    t.sigma_pe = pointing_jitter_sigma_pe(geometry, profile, t.r0);
    t.alpha = gamma_gamma_alpha(t.rytov_var, profile.beam_waist_tx_m, t.r0, t.sigma_pe, w_zeq);
    t.beta = gamma_gamma_beta(t.rytov_var);
    if (std::isnan(t.alpha) || std::isnan(t.beta) || t.alpha <= 0.0 || t.beta <= 0.0) {
        throw DomainError("turbulence shape parameters are not positive for this configuration");
    }
    if (!(t.alpha <= max_shape)) {
        t.alpha = max_shape;
        t.saturated = true;
    }
    if (!(t.beta <= max_shape)) {
        t.beta = max_shape;
        t.saturated = true;
    }
    return t;
}

} // namespace haplink::atmosphere
