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

#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "haplink/atmosphere.hpp"
#include "haplink/errors.hpp"

namespace atm = haplink::atmosphere;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

atm::LinkGeometry uplink(double zenith = 30.0, double h_hap = 19.0) {
    return atm::LinkGeometry::make(0.01, h_hap, zenith);
}

} // namespace

TEST(Geometry, SlantDistance) {
    EXPECT_NEAR(atm::slant_distance_km(0.01, 19, 0), 18.99, 1e-12);
    EXPECT_NEAR(atm::slant_distance_km(0.01, 19, 60), 37.98, 1e-12);
    EXPECT_NEAR(atm::slant_distance_km(0.01, 40, 30), 46.176474529786268645, 1e-12);
}

TEST(Geometry, SlantTimesCosineRecoversHeight) {
    for (double psi : {0.0, 12.5, 45.0, 70.0, 89.0}) {
        auto g = atm::LinkGeometry::make(0.2, 31.0, psi);
        EXPECT_NEAR(g.slant_km * std::cos(psi * M_PI / 180.0), 30.8, 1e-12);
    }
}

TEST(Geometry, RejectsInvalidInputs) {
    EXPECT_THROW(atm::slant_distance_km(0.01, 19, 90), haplink::DomainError);
    EXPECT_THROW(atm::slant_distance_km(0.01, 19, 95), haplink::DomainError);
    EXPECT_THROW(atm::slant_distance_km(19, 19, 10), haplink::DomainError);
    EXPECT_THROW(atm::slant_distance_km(-1, 19, 10), haplink::DomainError);
    EXPECT_THROW(atm::effective_layer_length_km(1.0, 90), haplink::DomainError);
}

TEST(Geometry, EffectiveLayerLength) {
    EXPECT_DOUBLE_EQ(atm::effective_layer_length_km(5, 0), 5.0);
    EXPECT_NEAR(atm::effective_layer_length_km(5, 60), 10.0, 1e-12);
    EXPECT_NEAR(atm::effective_layer_length_km(0.3, 30), 0.34641016151377545870, 1e-12);
}

TEST(Scattering, Visibility) {
    EXPECT_LT(rel(atm::visibility_km(0.064, 0.025), 64.6607677282405), 1e-12);
    EXPECT_NEAR(atm::visibility_km(2.0, 0.5), 1.002, 1e-12);
    EXPECT_LT(rel(atm::visibility_km(0.064, 2.5), 3.2812616051099450584), 1e-12);
    EXPECT_THROW(atm::visibility_km(0.0, 1.0), haplink::DomainError);
    EXPECT_THROW(atm::visibility_km(1.0, -1.0), haplink::DomainError);
}

TEST(Scattering, KimBranches) {
    EXPECT_DOUBLE_EQ(atm::kim_q(60), 1.6);
    EXPECT_DOUBLE_EQ(atm::kim_q(0.4), 0.0);
    EXPECT_NEAR(atm::kim_q(3), 0.82, 1e-15);
    EXPECT_DOUBLE_EQ(atm::kim_q(50), 1.3);
    EXPECT_NEAR(atm::kim_q(6), 1.3, 1e-15);
    EXPECT_NEAR(atm::kim_q(1), 0.5, 1e-15);
    EXPECT_NEAR(atm::kim_q(0.75), 0.25, 1e-15);
    EXPECT_DOUBLE_EQ(atm::kim_q(0.5), 0.0);
    for (double v = 0.0; v < 100.0; v += 0.37) {
        EXPECT_GE(atm::kim_q(v), 0.0);
        EXPECT_LE(atm::kim_q(v), 1.6);
    }
}

TEST(Scattering, GeometricSigma) {
    EXPECT_NEAR(atm::geometric_scattering_sigma(0.3, 1550), 3.91 / 0.3, 1e-12);
    EXPECT_LT(rel(atm::geometric_scattering_sigma(64.7, 1550), 0.011516541126795058878), 1e-12);
    EXPECT_NEAR(atm::geometric_scattering_sigma(3, 550), 3.91 / 3, 1e-12);
    EXPECT_THROW(atm::geometric_scattering_sigma(0.0, 1550), haplink::DomainError);
}

TEST(Scattering, MieTau) {
    auto p = atm::mie_coefficients(1.55);
    EXPECT_NEAR(atm::mie_tau(0.0, 1.55), p.p4, 1e-15);
    EXPECT_NEAR(p.p4, 0.12847027500000005272, 1e-14);
    EXPECT_NEAR(atm::mie_tau(0.01, 1.55), p.p4 + 0.01 * p.p3, 1e-4 * p.p4);
    EXPECT_NEAR(atm::mie_tau(1.0, 1.0), 0.075152, 1e-12);
}

TEST(Scattering, RainAttenuation) {
    EXPECT_DOUBLE_EQ(atm::rain_attenuation_fso_db_per_km(0), 0.0);
    EXPECT_LT(rel(atm::rain_attenuation_fso_db_per_km(25), 9.2989107012504799690), 1e-12);
    EXPECT_LT(rel(atm::rain_attenuation_fso_db_per_km(100), 23.540315073697191379), 1e-12);
}

TEST(PathGain, FreeSpace) {
    const double lam = 1.5e-3;
    EXPECT_NEAR(atm::free_space_path_gain(lam, lam / (4 * M_PI), 1, 1), 1.0, 1e-14);
    EXPECT_NEAR(atm::free_space_path_gain(lam, 2000, 3, 7) / atm::free_space_path_gain(lam, 1000, 3, 7), 0.25,
                1e-15);
    EXPECT_LT(rel(atm::free_space_path_gain(lam, 21930, 1e5, 1e5), 2.9626853277307433453e-7), 1e-12);
}

TEST(PathGain, FsoBudgetReducesToFreeSpace) {
    atm::WeatherLayers clear;
    clear.cloud.thickness_km = 0;
    clear.fog.thickness_km = 0;
    clear.rain_rate_mm_hr = 0;
    auto g = uplink();
    // Sea-level ground station at 0 km and a wavelength where p4 vanishes are
    // not available, so divide the Mie factor out explicitly.
    auto budget = atm::fso_path_budget(g, clear, 1550e-9, 1e12, 1e12);
    EXPECT_DOUBLE_EQ(budget.cloud, 1.0);
    EXPECT_DOUBLE_EQ(budget.fog, 1.0);
    EXPECT_DOUBLE_EQ(budget.rain, 1.0);
    EXPECT_NEAR(budget.total() / budget.mie,
                atm::free_space_path_gain(1550e-9, g.slant_km * 1e3, 1e12, 1e12), 1e-12);
}

TEST(PathGain, RainFactorExponent) {
    atm::WeatherLayers w;
    w.cloud.thickness_km = 0;
    w.fog.thickness_km = 0;
    w.rain_rate_mm_hr = 100;
    w.rain_thickness_km = 1.0;
    auto g = atm::LinkGeometry::make(0.01, 19, 0.0);
    auto b = atm::fso_path_budget(g, w, 1550e-9, 1, 1);
    EXPECT_LT(rel(b.rain, std::pow(10.0, -2.3540315073697191379)), 1e-12);
}

TEST(PathGain, DefaultScenarioBelowFreeSpace) {
    atm::WeatherLayers w;
    auto g = uplink();
    auto b = atm::fso_path_budget(g, w, 1550e-9, 1e12, 1e12);
    const double sigma = atm::geometric_scattering_sigma(atm::visibility_km(0.064, 0.025), 1550);
    const double sec = 1.0 / std::cos(M_PI / 6);
    double expect = std::exp(-sigma * 5 * sec) * std::exp(-sigma * 0.3 * sec) *
                    std::exp(-atm::mie_tau(0.01, 1.55) * sec) *
                    atm::free_space_path_gain(1550e-9, g.slant_km * 1e3, 1e12, 1e12);
    EXPECT_LT(rel(b.total(), expect), 1e-12);
    EXPECT_LT(b.total(), b.free_space);
    EXPECT_GT(b.total(), 0.0);
}

TEST(PathGain, AttenuationsMonotone) {
    auto g = uplink();
    double prev = 2.0;
    for (double th : {0.0, 0.5, 1.0, 5.0, 10.0}) {
        atm::WeatherLayers w;
        w.fog.thickness_km = th;
        double f = atm::fso_path_budget(g, w, 1550e-9, 1, 1).fog;
        EXPECT_LE(f, prev);
        EXPECT_GT(f, 0.0);
        EXPECT_LE(f, 1.0);
        prev = f;
    }
    prev = 2.0;
    for (double rr : {0.0, 1.0, 10.0, 50.0}) {
        atm::WeatherLayers w;
        w.rain_rate_mm_hr = rr;
        auto t = atm::thz_attenuations(w, g, 4.4e-3);
        EXPECT_LE(t.rain, prev);
        EXPECT_GT(t.rain, 0.0);
        prev = t.rain;
    }
}

TEST(PathGain, ThzAttenuations) {
    atm::WeatherLayers w;
    w.cloud.thickness_km = 0;
    w.fog.thickness_km = 0;
    auto g = atm::LinkGeometry::make(0.0, 21.93, 0.0);
    auto t = atm::thz_attenuations(w, g, 4.4e-3);
    EXPECT_DOUBLE_EQ(t.rain, 1.0);
    EXPECT_DOUBLE_EQ(t.cloud, 1.0);
    EXPECT_LT(rel(t.absorption, 0.90801716170798702246), 1e-12);

    w.cloud.thickness_km = 2.0;
    t = atm::thz_attenuations(w, g, 4.4e-3);
    EXPECT_LT(rel(t.cloud, std::pow(10.0, -0.064 * 0.66 * 2.0)), 1e-12);
}

TEST(Turbulence, StructureParameter) {
    EXPECT_DOUBLE_EQ(atm::cn2(0, 21, 1.7e-14), 2.7e-16 + 1.7e-14);
    EXPECT_LT(atm::cn2(1e6, 21, 1.7e-14), 1e-300);
    double expect = 0.00594 * std::pow(21.0 / 27, 2) * std::pow(0.1, 10) * std::exp(-10.0) +
                    2.7e-16 * std::exp(-20.0 / 3) + 1.7e-14 * std::exp(-100.0);
    EXPECT_LT(rel(atm::cn2(10000, 21, 1.7e-14), expect), 1e-14);
}

TEST(Turbulence, CoherenceDiameterScaling) {
    atm::TurbulenceProfile p;
    auto g0 = uplink(0.0);
    auto g60 = uplink(60.0);
    double r0 = atm::coherence_diameter_r0(g0, p);
    EXPECT_LT(rel(atm::coherence_diameter_r0(g60, p), r0 * std::pow(2.0, -0.6)), 1e-9);
    atm::TurbulenceProfile half = p;
    half.wavelength_m = p.wavelength_m / 2;
    EXPECT_LT(rel(atm::coherence_diameter_r0(g0, half), r0 * std::pow(2.0, -1.2)), 1e-9);
}

TEST(Turbulence, DefaultProfileReferenceValues) {
    atm::TurbulenceProfile p;
    auto g = uplink();
    EXPECT_LT(rel(atm::coherence_diameter_r0(g, p), 0.18610284368766222), 1e-6);
    EXPECT_LT(rel(atm::rytov_variance(g, p), 0.051898519005231215), 1e-6);

    // Independent check of the column integral with a different quadrature.
    boost::math::quadrature::tanh_sinh<double> ts;
    double col = ts.integrate([&](double h) { return atm::cn2(h, 21, 1.7e-14); }, 10.0, 19000.0, 1e-12);
    auto est = atm::cn2_column(g, p);
    EXPECT_LT(std::abs(est.value - col), std::max(est.error, 1e-9 * col));
}

TEST(Turbulence, HalvingToleranceWithinErrorEstimate) {
    atm::TurbulenceProfile p;
    auto g = uplink();
    auto a = atm::rytov_column(g, p, 1e-6);
    auto b = atm::rytov_column(g, p, 5e-7);
    EXPECT_LE(std::abs(a.value - b.value), a.error + 1e-15 * a.value);
    auto c = atm::cn2_column(g, p, 1e-6);
    auto d = atm::cn2_column(g, p, 5e-7);
    EXPECT_LE(std::abs(c.value - d.value), c.error + 1e-15 * c.value);
}

TEST(Turbulence, RytovThinPathLimit) {
    // For a short path Cn^2 is constant and the weight integrates to a Beta function.
    atm::TurbulenceProfile p;
    auto g = atm::LinkGeometry::make(0.01, 0.01 + 1e-9, 0.0);
    const double k = 2 * M_PI / p.wavelength_m;
    const double beta_fn = std::exp(2 * std::lgamma(11.0 / 6) - std::lgamma(11.0 / 3));
    const double expect = 2.25 * std::pow(k, 7.0 / 6) * atm::cn2(10.0, p.wind_rms_mps, p.c0) * beta_fn *
                          std::pow(1e-6, 11.0 / 6);
    EXPECT_LT(rel(atm::rytov_variance(g, p), expect), 1e-5);
    auto g2 = atm::LinkGeometry::make(0.01, 0.01 + 1e-12, 0.0);
    EXPECT_LT(atm::rytov_variance(g2, p), 1e-22);
}

TEST(Turbulence, RytovGrowsWithZenith) {
    atm::TurbulenceProfile p;
    double prev = 0.0;
    for (double psi : {0.0, 20.0, 40.0, 60.0, 75.0}) {
        double s = atm::rytov_variance(uplink(psi), p);
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(Turbulence, ShapeParameters) {
    EXPECT_LT(rel(atm::gamma_gamma_beta(1.0), 2.5636319795036948191), 1e-13);
    const double no_pe = atm::gamma_gamma_alpha(0.3, 0.02, 0.1, 0.0, 15.0);
    const double with_pe = atm::gamma_gamma_alpha(0.3, 0.02, 0.1, 0.5, 15.0);
    EXPECT_LT(with_pe, no_pe);
    double prev = 1e300;
    for (double s : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        double b = atm::gamma_gamma_beta(s);
        EXPECT_LT(b, prev);
        prev = b;
    }
}

TEST(Turbulence, DefaultUplinkShapes) {
    atm::TurbulenceProfile p;
    auto g = uplink();
    auto t = atm::gamma_gamma_params(g, p, 15.002181883697027);
    EXPECT_LT(rel(t.sigma_pe, 0.005290013156025023), 1e-5);
    EXPECT_LT(rel(t.alpha, 39.56403743731115), 1e-5);
    EXPECT_LT(rel(t.beta, 37.90618973121429), 1e-5);
    EXPECT_FALSE(t.saturated);
    EXPECT_GE(t.sigma_pe, 0.0);
}

TEST(Turbulence, SaturatesWithoutTurbulence) {
    atm::TurbulenceProfile p;
    p.c0 = 1e-30;
    p.wind_rms_mps = 1e-6;
    auto g = atm::LinkGeometry::make(30.0, 31.0, 0.0);
    auto t = atm::gamma_gamma_params(g, p, 15.0, 1e3);
    EXPECT_TRUE(t.saturated);
    EXPECT_DOUBLE_EQ(t.alpha, 1e3);
    EXPECT_DOUBLE_EQ(t.beta, 1e3);
}
