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


#include "haplink/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "haplink/atmosphere.hpp"
#include "haplink/channels.hpp"
#include "haplink/errors.hpp"

namespace haplink::runner {

namespace atm = atmosphere;
namespace ch = channels;

namespace {

double from_db(double x) { return std::pow(10.0, x / 10.0); }

std::string clean(std::string s) {
    for (char& ch : s) {
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ' ';
    }
    return s;
}

void add_flag(SweepRow& row, const std::string& f) {
    if (std::find(row.flags.begin(), row.flags.end(), f) == row.flags.end()) row.flags.push_back(f);
}

void fill_analytic(SweepRow& row, const ScenarioConfig& c, const Scenario& sc, const std::string& variant) {
    const auto alts = c.hap_altitudes_km();
    std::vector<secrecy::HapSop> per(sc.links.size());
    // HAPs at the same altitude share every channel parameter.
    for (std::size_t n = 0; n < sc.links.size(); ++n) {
        const auto same = std::find(alts.begin(), alts.begin() + static_cast<std::ptrdiff_t>(n), alts[n]);
        if (same != alts.begin() + static_cast<std::ptrdiff_t>(n)) {
            per[n] = per[static_cast<std::size_t>(same - alts.begin())];
        } else {
            per[n] = secrecy::analyze({sc.links[n]}, c.rate_bps_hz).haps[0];
        }
    }
    std::vector<double> e2e;
    for (const auto& h : per) {
        HapRow r;
        r.p_fso = h.fso.value;
        r.p_thz = h.thz.value;
        r.p_first_hop = first_hop_sop(variant, r.p_fso, r.p_thz);
        r.p_ka = h.ka.value;
        r.p_e2e = secrecy::sop_e2e_per_hap(r.p_first_hop, r.p_ka);
        row.haps.push_back(r);
        e2e.push_back(r.p_e2e);
        for (const auto* v : {&h.fso, &h.thz, &h.ka}) {
            if (v->fallback) add_flag(row, "oracle-fallback");
            if (v->clamped) add_flag(row, "clamped");
        }
    }
    row.best = static_cast<std::size_t>(std::min_element(e2e.begin(), e2e.end()) - e2e.begin());
    row.p_total_analytic = secrecy::sop_total(e2e);
    row.has_analytic = true;
}

} // namespace

Scenario build_scenario(const ScenarioConfig& c) {
    validate(c);
    atm::WeatherLayers w;
    w.cloud = {c.cloud_thickness_km, c.cloud_liquid_water_g_m3, c.cloud_concentration_cm3};
    w.fog = {c.fog_thickness_km, c.fog_liquid_water_g_m3, c.fog_concentration_cm3};
    w.rain_thickness_km = c.rain_thickness_km;
    w.rain_rate_mm_hr = c.rain_rate_mm_hr;
    w.thz_rain_theta = c.thz_rain_theta;
    w.thz_rain_nu = c.thz_rain_nu;
    w.thz_cloud_M = c.thz_cloud_m;
    w.ka_rain_delta_db = c.ka_rain_db;
    w.ka_cloud_delta_db = c.ka_cloud_db;

    atm::TurbulenceProfile prof;
    prof.wind_rms_mps = c.wind_rms_mps;
    prof.c0 = c.c0_m23;
    prof.beam_waist_tx_m = c.w0_cm * 1e-2;
    prof.wavelength_m = c.lambda_fso_nm * 1e-9;

    const auto pf = ch::pointing_params(c.fso_w_z_m, c.fso_aperture_radius_m, c.sigma_s_m);
    const auto pt = ch::pointing_params(c.thz_w_z_m, c.thz_aperture_radius_m, c.sigma_s_m);
    const double rho_e = 1.0 - c.rho_h;
    const double ka_weather = atm::ka_weather_factor(w);

    Scenario out;
    for (double h : c.hap_altitudes_km()) {
        const auto g = atm::LinkGeometry::make(c.ground_altitude_km, h, c.zenith_deg);
        const auto ga = atm::LinkGeometry::make(c.ground_altitude_km, h, c.access_zenith_deg);
        const auto turb = atm::gamma_gamma_params(g, prof, pf.w_zeq);
        out.saturated = out.saturated || turb.saturated;

        secrecy::HapLinks l;
        const double il = atm::fso_total_path_gain(g, w, prof.wavelength_m, c.fso_gain_tx, c.fso_gain_rx);
        for (auto* s : {&l.fso_legit, &l.fso_eve}) {
            s->alpha = turb.alpha;
            s->beta = turb.beta;
            s->xi2 = pf.xi2;
            s->A0 = pf.A0;
            s->r = c.detection_r;
        }
        l.fso_legit.rho = c.rho_h;
        l.fso_eve.rho = rho_e;
        l.fso_legit.avg_snr = ch::fso_avg_snr(from_db(c.upsilon_db), c.eta, c.rho_h, il, c.detection_r, pf);
        l.fso_eve.avg_snr = ch::fso_avg_snr(from_db(c.upsilon_e1_db), c.eta, rho_e, il, c.detection_r, pf);

        const double lt = atm::free_space_path_gain(c.lambda_thz_mm * 1e-3, g.slant_km * 1e3, c.thz_gain_tx,
                                                    c.thz_gain_rx);
        const double att = atm::thz_attenuations(w, g, c.kappa_a_per_km).product();
        l.thz_legit = ch::ThzChannelState::make(ch::thz_snr_scale(from_db(c.upsilon_db), lt, att), pt);
        l.thz_eve = ch::ThzChannelState::make(ch::thz_snr_scale(from_db(c.upsilon_e1_db), lt, att), pt);

        const double lk = atm::free_space_path_gain(c.lambda_ka_mm * 1e-3, ga.slant_km * 1e3, c.ka_gain_tx,
                                                    c.ka_gain_rx);
        l.ka_legit = ch::KaChannelState::make(
            c.ka_m_s, c.ka_omega_s, c.ka_b, ch::ka_avg_snr(from_db(c.upsilon_u_db()), ka_weather, lk, c.ka_omega_s, c.ka_b));
        l.ka_eve = ch::KaChannelState::make(
            c.ka_m_s, c.ka_omega_s, c.ka_b, ch::ka_avg_snr(from_db(c.upsilon_e2_db), ka_weather, lk, c.ka_omega_s, c.ka_b));
        out.links.push_back(l);
    }
    return out;
}

montecarlo::FirstHop parse_variant(std::string_view v) {
    if (v == "hybrid") return montecarlo::FirstHop::hybrid;
    if (v == "thz-only") return montecarlo::FirstHop::thz_only;
    if (v == "fso-only") return montecarlo::FirstHop::fso_only;
    throw ConfigError("unknown scheme variant '" + std::string(v) + "' (hybrid | thz-only | fso-only)");
}

double first_hop_sop(std::string_view variant, double p_fso, double p_thz) {
    switch (parse_variant(variant)) {
    case montecarlo::FirstHop::hybrid:
        return secrecy::sop_first_hop(p_fso, p_thz);
    case montecarlo::FirstHop::thz_only:
        return p_thz;
    case montecarlo::FirstHop::fso_only:
        return p_fso;
    }
    return 1.0;
}

bool SweepResult::all_failed() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; });
}

SweepResult run_sweep(const ScenarioConfig& c, const std::string& variant) {
    validate(c);
    parse_variant(variant);
    SweepResult res;
    res.variant = variant;
    std::vector<double> xs;
    if (c.sweep.empty()) {
        res.axis = "upsilon_db";
        xs = {c.upsilon_db};
    } else {
        const auto spec = parse_sweep(c.sweep);
        res.axis = spec.axis;
        xs = spec.values();
    }
    res.rows.resize(xs.size());
    const bool want_analytic = c.mode != "mc";
    const bool want_mc = c.mode != "analytic";

    auto eval = [&](std::size_t i, unsigned mc_workers) {
        SweepRow& row = res.rows[i];
        row.axis_value = xs[i];
        try {
            auto cfg = c;
            set_numeric(cfg, res.axis, xs[i]);
            validate(cfg);
            const auto sc = build_scenario(cfg);
            if (sc.saturated) add_flag(row, "turbulence-capped");
            if (want_analytic) fill_analytic(row, cfg, sc, variant);
            if (want_mc) {
                montecarlo::SimOptions o;
                o.first_hop = parse_variant(variant);
                o.shared_turbulence = cfg.shared_turbulence;
                const auto m = montecarlo::simulate_scheme(sc.links, cfg.rate_bps_hz, cfg.mc_samples, cfg.seed,
                                                           mc_workers, o);
                row.mc = m.total;
                if (m.total.starved) add_flag(row, "mc-starved");
            }
        } catch (const std::exception& e) {
            row.failed = true;
            add_flag(row, "error: " + clean(e.what()));
        }
    };

    const auto workers = static_cast<unsigned>(std::max(c.workers, 1));
    if (want_mc || workers == 1 || xs.size() == 1) {
        for (std::size_t i = 0; i < xs.size(); ++i) eval(i, workers);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < xs.size(); i = next++) eval(i, 1);
        };
        std::vector<std::jthread> pool;
        const auto n = std::min<std::size_t>(workers, xs.size());
        for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
        work();
    }
    return res;
}

std::vector<Series> config_series(const ScenarioConfig& c, const std::string& label) {
    std::vector<Series> out;
    for (const auto& v : c.variants) {
        out.push_back({c.variants.size() == 1 ? label : label + "_" + v, v, c});
    }
    return out;
}

std::vector<std::string> preset_names() {
    return {"fig-pointing", "fig-N", "fig-shadowing", "fig-zenith", "fig-rain", "fig-fog"};
}

namespace {

constexpr const char* kUpsilonSweep = "upsilon_db=120:170:2.5";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::vector<Series> preset_series(std::string_view name, const ScenarioConfig& base) {
    std::vector<Series> out;
    auto add = [&](const std::string& label, ScenarioConfig c, const std::string& variant = "hybrid") {
        c.variants = {variant};
        validate(c);
        out.push_back({label, variant, std::move(c)});
    };

    if (name == "fig-pointing") {
        for (double wz : {10.0, 15.0, 20.0}) {
            auto c = base;
            c.sweep = kUpsilonSweep;
            c.n_haps = 4;
            c.altitudes_km.clear();
            c.fso_w_z_m = wz;
            c.thz_w_z_m = wz;
            add("wz" + num(wz), c);
        }
    } else if (name == "fig-N") {
        for (int n : {1, 2, 4, 8, 12}) {
            auto c = base;
            c.sweep = kUpsilonSweep;
            c.n_haps = n;
            c.altitudes_km.clear();
            add("N" + std::to_string(n), c);
            if (n == 1 || n == 4 || n == 12) add("N" + std::to_string(n) + "_thz-only", c, "thz-only");
        }
    } else if (name == "fig-shadowing") {
        struct Triple {
            const char* label;
            int m;
            double omega, b;
        };
        for (auto t : {Triple{"light", 19, 1.29, 0.158}, Triple{"average", 10, 0.835, 0.126},
                       Triple{"heavy", 1, 8.97e-4, 0.063}}) {
            auto c = base;
            c.sweep = kUpsilonSweep;
            c.n_haps = 4;
            c.altitudes_km.clear();
            c.ka_m_s = t.m;
            c.ka_omega_s = t.omega;
            c.ka_b = t.b;
            add(t.label, c);
        }
    } else if (name == "fig-zenith") {
        for (double h : {19.0, 30.0, 40.0, 50.0}) {
            auto c = base;
            c.upsilon_db = 150;
            c.upsilon_e1_db = 130;
            c.upsilon_e2_db = 130;
            c.sweep = "zenith_deg=0:80:5";
            c.n_haps = 4;
            c.altitudes_km.clear();
            c.altitude_km = h;
            add("h" + num(h), c);
        }
    } else if (name == "fig-rain") {
        for (double h : {19.0, 40.0}) {
            for (double z : {30.0, 50.0, 70.0}) {
                auto c = base;
                c.upsilon_db = 160;
                c.rate_bps_hz = 5;
                c.rho_h = 0.75;
                c.upsilon_u_offset_db = 30;
                c.upsilon_e1_db = 130;
                c.upsilon_e2_db = 160;
                c.sweep = "rain_rate_mm_hr=0:100:10";
                c.n_haps = 4;
                c.altitudes_km.clear();
                c.altitude_km = h;
                c.zenith_deg = z;
                add("h" + num(h) + "_z" + num(z), c);
            }
        }
    } else if (name == "fig-fog") {
        struct Fog {
            const char* label;
            double liquid_water;
        };
        for (double z : {30.0, 50.0}) {
            for (auto f : {Fog{"light", 0.01}, Fog{"moderate", 0.03}, Fog{"thick", 0.1}, Fog{"dense", 0.5}}) {
                auto c = base;
                c.rate_bps_hz = 5;
                c.rho_h = 0.75;
                c.sweep = kUpsilonSweep;
                c.n_haps = 4;
                c.altitudes_km.clear();
                c.zenith_deg = z;
                c.fog_liquid_water_g_m3 = f.liquid_water;
                c.fog_concentration_cm3 = 100.0;
                add(std::string(f.label) + "_z" + num(z), c);
            }
        }
    } else {
        throw ConfigError("unknown preset '" + std::string(name) +
                          "' (fig-pointing | fig-N | fig-shadowing | fig-zenith | fig-rain | fig-fog)");
    }
    return out;
}

} // namespace haplink::runner
