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


#include "haplink/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <variant>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "haplink/errors.hpp"

namespace haplink::runner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Ptr = std::variant<double ScenarioConfig::*, int ScenarioConfig::*, std::uint64_t ScenarioConfig::*,
                         bool ScenarioConfig::*, std::string ScenarioConfig::*>;

struct Field {
    std::string_view section;
    std::string_view key;
    std::string_view unit;
    Ptr ptr;
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = true;
    bool hi_closed = true;
};

constexpr bool open = false;

// clang-format off
const std::vector<Field>& table() {
    using C = ScenarioConfig;
    static const std::vector<Field> f{
        {"link", "rate_bps_hz", "bit/s/Hz", &C::rate_bps_hz, 0, kInf, open},
        {"link", "detection_r", "1 = heterodyne, 2 = IM/DD", &C::detection_r, 1, 2},
        {"link", "eta", "A/W", &C::eta, 0, kInf, open},
        {"link", "rho_h", "fraction", &C::rho_h, 0, 1, open, open},
        {"link", "upsilon_db", "dB", &C::upsilon_db},
        {"link", "upsilon_u_offset_db", "dB", &C::upsilon_u_offset_db},
        {"link", "upsilon_e1_db", "dB", &C::upsilon_e1_db},
        {"link", "upsilon_e2_db", "dB", &C::upsilon_e2_db},
        {"constellation", "n_haps", "count", &C::n_haps, 1, 1000},
        {"constellation", "altitude_km", "km", &C::altitude_km, 0, kInf, open},
        {"constellation", "ground_altitude_km", "km", &C::ground_altitude_km, 0, kInf},
        {"constellation", "zenith_deg", "deg", &C::zenith_deg, 0, 90, true, open},
        {"constellation", "access_zenith_deg", "deg", &C::access_zenith_deg, 0, 90, true, open},
        {"fso", "lambda_fso_nm", "nm", &C::lambda_fso_nm, 0, kInf, open},
        {"fso", "gain_tx", "linear", &C::fso_gain_tx, 0, kInf, open},
        {"fso", "gain_rx", "linear", &C::fso_gain_rx, 0, kInf, open},
        {"fso", "w0_cm", "cm", &C::w0_cm, 0, kInf, open},
        {"fso", "w_z_m", "m", &C::fso_w_z_m, 0, kInf, open},
        {"fso", "aperture_radius_m", "m", &C::fso_aperture_radius_m, 0, kInf, open},
        {"thz", "lambda_thz_mm", "mm", &C::lambda_thz_mm, 0, kInf, open},
        {"thz", "gain_tx", "linear", &C::thz_gain_tx, 0, kInf, open},
        {"thz", "gain_rx", "linear", &C::thz_gain_rx, 0, kInf, open},
        {"thz", "w_z_m", "m", &C::thz_w_z_m, 0, kInf, open},
        {"thz", "aperture_radius_m", "m", &C::thz_aperture_radius_m, 0, kInf, open},
        {"thz", "kappa_a_per_km", "1/km", &C::kappa_a_per_km, 0, kInf},
        {"thz", "rain_theta", "dB/km per (mm/hr)^nu", &C::thz_rain_theta, 0, kInf},
        {"thz", "rain_nu", "dimensionless", &C::thz_rain_nu, 0, kInf},
        {"thz", "cloud_m", "(dB/km)/(g/m^3)", &C::thz_cloud_m, 0, kInf},
        {"pointing", "sigma_s_m", "m", &C::sigma_s_m, 0, kInf, open},
        {"weather", "cloud_thickness_km", "km", &C::cloud_thickness_km, 0, kInf},
        {"weather", "cloud_liquid_water_g_m3", "g/m^3", &C::cloud_liquid_water_g_m3, 0, kInf, open},
        {"weather", "cloud_concentration_cm3", "cm^-3", &C::cloud_concentration_cm3, 0, kInf, open},
        {"weather", "fog_thickness_km", "km", &C::fog_thickness_km, 0, kInf},
        {"weather", "fog_liquid_water_g_m3", "g/m^3", &C::fog_liquid_water_g_m3, 0, kInf, open},
        {"weather", "fog_concentration_cm3", "cm^-3", &C::fog_concentration_cm3, 0, kInf, open},
        {"weather", "rain_thickness_km", "km", &C::rain_thickness_km, 0, kInf},
        {"weather", "rain_rate_mm_hr", "mm/hr", &C::rain_rate_mm_hr, 0, kInf},
        {"turbulence", "wind_rms_mps", "m/s", &C::wind_rms_mps, 0, kInf, open},
        {"turbulence", "c0_m23", "m^-2/3", &C::c0_m23, 0, kInf, open},
        {"ka", "m_s", "integer", &C::ka_m_s, 1, 200},
        {"ka", "omega_s", "linear power", &C::ka_omega_s, 0, kInf, open},
        {"ka", "b", "linear power", &C::ka_b, 0, kInf, open},
        {"ka", "lambda_ka_mm", "mm", &C::lambda_ka_mm, 0, kInf, open},
        {"ka", "gain_tx", "linear", &C::ka_gain_tx, 0, kInf, open},
        {"ka", "gain_rx", "linear", &C::ka_gain_rx, 0, kInf, open},
        {"ka", "rain_db", "dB", &C::ka_rain_db, 0, kInf},
        {"ka", "cloud_db", "dB", &C::ka_cloud_db, 0, kInf},
        {"mc", "samples", "count", &C::mc_samples, 10000, 1e12},
        {"mc", "seed", "integer", &C::seed, 0, 9.2e18},
        {"mc", "workers", "count", &C::workers, 1, 1024},
        {"mc", "shared_turbulence", "bool", &C::shared_turbulence},
        {"run", "mode", "analytic | mc | both", &C::mode},
        {"run", "sweep", "axis=start:stop:step", &C::sweep},
    };
    return f;
}
// clang-format on

const std::vector<std::string_view> kSections{"link", "fso",        "thz", "pointing", "constellation",
                                              "weather", "turbulence", "ka",  "mc",       "run"};

std::string full_key(const Field& f) { return std::string(f.section) + "." + std::string(f.key); }

std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string fmt_bound(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string range_text(const Field& f) {
    return std::string(f.lo_closed ? "[" : "(") + fmt_bound(f.lo) + ", " + fmt_bound(f.hi) + (f.hi_closed ? "]" : ")");
}

bool is_numeric(const Field& f) { return !std::holds_alternative<bool ScenarioConfig::*>(f.ptr) &&
                                         !std::holds_alternative<std::string ScenarioConfig::*>(f.ptr); }

double read_numeric(const ScenarioConfig& c, const Field& f) {
    return std::visit(
        [&](auto p) -> double {
            using T = std::remove_cvref_t<decltype(c.*p)>;
            if constexpr (std::is_arithmetic_v<T>) {
                return static_cast<double>(c.*p);
            } else {
                return 0.0;
            }
        },
        f.ptr);
}

std::optional<std::string> range_issue(const Field& f, double v) {
    const bool ok = std::isfinite(v) && (f.lo_closed ? v >= f.lo : v > f.lo) && (f.hi_closed ? v <= f.hi : v < f.hi);
    if (ok) return std::nullopt;
    std::ostringstream os;
    os << full_key(f) << " = " << v << ": expected " << f.unit << " in " << range_text(f);
    return os.str();
}

const Field* find_field(std::string_view key, std::string* why = nullptr) {
    const Field* hit = nullptr;
    int count = 0;
    const auto dot = key.find('.');
    for (const auto& f : table()) {
        const bool match = dot == std::string_view::npos
                               ? f.key == key
                               : (f.section == key.substr(0, dot) && f.key == key.substr(dot + 1));
        if (match) {
            hit = &f;
            ++count;
        }
    }
    if (count > 1) {
        if (why) *why = "key '" + std::string(key) + "' is ambiguous; qualify it with its section";
        return nullptr;
    }
    if (!hit && why) *why = "unknown key '" + std::string(key) + "'";
    return hit;
}

void assign_numeric(ScenarioConfig& c, const Field& f, double v, std::vector<std::string>& issues) {
    std::visit(
        [&](auto p) {
            using T = std::remove_cvref_t<decltype(c.*p)>;
            if constexpr (std::is_same_v<T, double>) {
                c.*p = v;
            } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                if (v != std::floor(v)) {
                    issues.push_back(full_key(f) + " = " + fmt_bound(v) + ": expected an integer (" +
                                     std::string(f.unit) + ")");
                    return;
                }
                if (!(v >= f.lo && v <= f.hi)) {
                    issues.push_back(*range_issue(f, v));
                    return;
                }
                c.*p = static_cast<T>(v);
            } else {
                issues.push_back(full_key(f) + " is not numeric");
            }
        },
        f.ptr);
}

void read_node(ScenarioConfig& c, const Field& f, const toml::node& n, std::vector<std::string>& issues) {
    const auto key = full_key(f);
    std::visit(
        [&](auto p) {
            using T = std::remove_cvref_t<decltype(c.*p)>;
            if constexpr (std::is_same_v<T, double>) {
                if (auto v = n.value_exact<double>()) {
                    c.*p = *v;
                } else if (auto i = n.value_exact<std::int64_t>()) {
                    c.*p = static_cast<double>(*i);
                } else {
                    issues.push_back(key + ": expected a number in " + std::string(f.unit));
                }
            } else if constexpr (std::is_same_v<T, bool>) {
                if (auto v = n.value_exact<bool>()) {
                    c.*p = *v;
                } else {
                    issues.push_back(key + ": expected true or false");
                }
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (auto v = n.value_exact<std::string>()) {
                    c.*p = *v;
                } else {
                    issues.push_back(key + ": expected a string (" + std::string(f.unit) + ")");
                }
            } else {
                if (auto v = n.value_exact<std::int64_t>()) {
                    if (*v < 0) {
                        issues.push_back(*range_issue(f, static_cast<double>(*v)));
                    } else {
                        c.*p = static_cast<T>(*v);
                    }
                } else {
                    issues.push_back(key + ": expected an integer (" + std::string(f.unit) + ")");
                }
            }
        },
        f.ptr);
}

std::optional<std::vector<double>> read_double_array(const toml::node& n) {
    const auto* arr = n.as_array();
    if (!arr) return std::nullopt;
    std::vector<double> out;
    for (const auto& e : *arr) {
        if (auto v = e.value_exact<double>()) {
            out.push_back(*v);
        } else if (auto i = e.value_exact<std::int64_t>()) {
            out.push_back(static_cast<double>(*i));
        } else {
            return std::nullopt;
        }
    }
    return out;
}

std::optional<std::vector<std::string>> read_string_array(const toml::node& n) {
    const auto* arr = n.as_array();
    if (!arr) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& e : *arr) {
        auto v = e.value_exact<std::string>();
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

double snap(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

} // namespace

std::vector<double> SweepSpec::values() const {
    const double span = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = snap(start + static_cast<double>(i) * step);
    return v;
}

SweepSpec parse_sweep(std::string_view text) {
    const auto bad = [&](const std::string& why) {
        return ConfigError("sweep '" + std::string(text) + "': " + why + " (expected axis=start:stop:step)");
    };
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) throw bad("missing axis");
    SweepSpec s;
    s.axis = std::string(text.substr(0, eq));
    auto rest = text.substr(eq + 1);
    std::vector<double> parts;
    while (true) {
        const auto colon = rest.find(':');
        auto v = parse_double(rest.substr(0, colon));
        if (!v) throw bad("not a number");
        parts.push_back(*v);
        if (colon == std::string_view::npos) break;
        rest = rest.substr(colon + 1);
    }
    if (parts.size() != 3) throw bad("need three numbers");
    s.start = parts[0];
    s.stop = parts[1];
    s.step = parts[2];
    if (s.step == 0 || (s.stop - s.start) * s.step < 0) throw bad("step must move from start towards stop");
    if ((s.stop - s.start) / s.step > 1e6) throw bad("too many points");
    return s;
}

std::string format_sweep(const SweepSpec& s) {
    auto f = [](double v) {
        char buf[64];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, p);
    };
    return s.axis + "=" + f(s.start) + ":" + f(s.stop) + ":" + f(s.step);
}

std::vector<double> ScenarioConfig::hap_altitudes_km() const {
    if (!altitudes_km.empty()) return altitudes_km;
    return std::vector<double>(static_cast<std::size_t>(std::max(n_haps, 0)), altitude_km);
}

void validate(const ScenarioConfig& c) {
    std::vector<std::string> issues;
    for (const auto& f : table()) {
        if (!is_numeric(f)) continue;
        if (auto why = range_issue(f, read_numeric(c, f))) issues.push_back(*why);
    }
    if (!c.altitudes_km.empty() && c.altitudes_km.size() != static_cast<std::size_t>(c.n_haps)) {
        issues.push_back("constellation.altitudes_km has " + std::to_string(c.altitudes_km.size()) +
                         " entries but n_haps = " + std::to_string(c.n_haps));
    }
    for (double h : c.hap_altitudes_km()) {
        if (!(std::isfinite(h) && h > c.ground_altitude_km)) {
            issues.push_back("HAP altitude " + fmt_bound(h) + " km must exceed ground_altitude_km = " +
                             fmt_bound(c.ground_altitude_km) + " km");
        }
    }
    if (c.mode != "analytic" && c.mode != "mc" && c.mode != "both") {
        issues.push_back("run.mode = '" + c.mode + "': expected analytic | mc | both");
    }
    if (c.variants.empty()) issues.emplace_back("run.variants must name at least one scheme");
    for (std::size_t i = 0; i < c.variants.size(); ++i) {
        const auto& v = c.variants[i];
        if (v != "hybrid" && v != "thz-only" && v != "fso-only") {
            issues.push_back("run.variants entry '" + v + "': expected hybrid | thz-only | fso-only");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (c.variants[j] == v) issues.push_back("run.variants lists '" + v + "' twice");
        }
    }
    if (!c.sweep.empty()) {
        try {
            auto s = parse_sweep(c.sweep);
            std::string why;
            const Field* f = find_field(s.axis, &why);
            if (!f || !is_numeric(*f)) issues.push_back("run.sweep: " + (f ? "'" + s.axis + "' is not numeric" : why));
        } catch (const ConfigError& e) {
            issues.push_back(std::string("run.sweep: ") + e.what());
        }
    }
    if (!issues.empty()) throw ConfigError(issues);
}

ScenarioConfig parse_config(std::string_view text, std::string_view source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw ConfigError(os.str());
    }

    ScenarioConfig c;
    std::vector<std::string> issues;
    for (const auto& [skey, snode] : root) {
        const std::string section(skey.str());
        const auto* tbl = snode.as_table();
        if (!tbl) {
            issues.push_back("unknown top-level key '" + section + "'; settings live in sections");
            continue;
        }
        bool known = false;
        for (auto s : kSections) known = known || s == section;
        if (!known) {
            issues.push_back("unknown section [" + section + "]");
            continue;
        }
        for (const auto& [k, node] : *tbl) {
            const std::string key(k.str());
            const std::string name = section + "." + key;
            if (name == "constellation.altitudes_km") {
                if (auto v = read_double_array(node)) {
                    c.altitudes_km = *v;
                } else {
                    issues.push_back(name + ": expected an array of altitudes in km");
                }
                continue;
            }
            if (name == "run.variants") {
                if (auto v = read_string_array(node)) {
                    c.variants = *v;
                } else {
                    issues.push_back(name + ": expected an array of strings");
                }
                continue;
            }
            const Field* f = find_field(name);
            if (!f) {
                issues.push_back("unknown key '" + name + "'");
                continue;
            }
            read_node(c, *f, node, issues);
        }
    }
    if (!issues.empty()) throw ConfigError(issues);
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path + "'");
    return parse_config(ss.str(), path);
}

std::string emit_config(const ScenarioConfig& c) {
    std::ostringstream os;
    bool first = true;
    for (auto section : kSections) {
        os << (first ? "" : "\n") << "[" << section << "]\n";
        first = false;
        for (const auto& f : table()) {
            if (f.section != section) continue;
            os << f.key << " = ";
            std::visit(
                [&](auto p) {
                    using T = std::remove_cvref_t<decltype(c.*p)>;
                    if constexpr (std::is_same_v<T, double>) {
                        os << fmt_double(c.*p);
                    } else if constexpr (std::is_same_v<T, bool>) {
                        os << (c.*p ? "true" : "false");
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        os << quote(c.*p);
                    } else {
                        os << c.*p;
                    }
                },
                f.ptr);
            os << "\n";
            if (section == "constellation" && f.key == "altitude_km" && !c.altitudes_km.empty()) {
                os << "altitudes_km = [";
                for (std::size_t i = 0; i < c.altitudes_km.size(); ++i) {
                    os << (i ? ", " : "") << fmt_double(c.altitudes_km[i]);
                }
                os << "]\n";
            }
        }
        if (section == "run") {
            os << "variants = [";
            for (std::size_t i = 0; i < c.variants.size(); ++i) os << (i ? ", " : "") << quote(c.variants[i]);
            os << "]\n";
        }
    }
    return os.str();
}

void set_numeric(ScenarioConfig& c, std::string_view key, double value) {
    std::string why;
    const Field* f = find_field(key, &why);
    if (!f) throw ConfigError(why);
    if (!is_numeric(*f)) throw ConfigError("key '" + std::string(key) + "' is not numeric");
    std::vector<std::string> issues;
    assign_numeric(c, *f, value, issues);
    if (!issues.empty()) throw ConfigError(issues);
}

double get_numeric(const ScenarioConfig& c, std::string_view key) {
    std::string why;
    const Field* f = find_field(key, &why);
    if (!f) throw ConfigError(why);
    if (!is_numeric(*f)) throw ConfigError("key '" + std::string(key) + "' is not numeric");
    return read_numeric(c, *f);
}

std::vector<std::string> numeric_keys() {
    std::vector<std::string> out;
    for (const auto& f : table()) {
        if (is_numeric(f)) out.push_back(full_key(f));
    }
    return out;
}

} // namespace haplink::runner
