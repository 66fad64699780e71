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

#include "haplink/channels.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "haplink/errors.hpp"

namespace haplink::channels {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite");
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

PointingParams pointing_params(double w_z, double aperture_radius, double sigma_s) {
    require_positive(w_z, "beam waist");
    require_positive(aperture_radius, "aperture radius");
    require_positive(sigma_s, "jitter standard deviation");
    PointingParams p;
    p.w_z = w_z;
    p.aperture_radius = aperture_radius;
    p.sigma_s = sigma_s;
    p.v = std::sqrt(kPi / 2.0) * aperture_radius / w_z;
    const double e = std::erf(p.v);
    p.A0 = e * e;
    p.w_zeq = w_z * std::sqrt(std::sqrt(kPi) * e / (2.0 * p.v * std::exp(-p.v * p.v)));
    const double xi = p.w_zeq / (2.0 * sigma_s);
    p.xi2 = xi * xi;
    return p;
}

double fso_pointing_moment(const PointingParams& p) { return p.xi2 * p.A0 / (p.xi2 + 1.0); }

double thz_pointing_moment(const PointingParams& p) { return p.xi2 * p.A0 * p.A0 / (p.xi2 + 2.0); }

void FsoChannelState::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(xi2, "xi^2");
    require_positive(avg_snr, "FSO average SNR");
    if (!(A0 > 0.0 && A0 <= 1.0)) throw DomainError("A0 must lie in (0, 1]");
    if (r != 1 && r != 2) throw DomainError("detection parameter r must be 1 or 2");
}

double fso_avg_snr(double transmit_snr, double eta, double rho, double path_gain, int r, const PointingParams& p) {
    if (r != 1 && r != 2) throw DomainError("detection parameter r must be 1 or 2");
    if (!(transmit_snr >= 0.0) || !(eta >= 0.0) || !(rho >= 0.0) || !(path_gain >= 0.0)) {
        throw DomainError("FSO SNR inputs must be nonnegative");
    }
    return transmit_snr * std::pow(eta * rho * path_gain * fso_pointing_moment(p), r);
}

double fso_snr_pdf(double z, const FsoChannelState& s) {
    s.validate();
    if (!(z > 0.0)) throw DomainError("FSO SNR density needs z > 0");
    const double h = s.alpha * s.beta * s.xi2 / (s.xi2 + 1.0);
    specfun::MeijerGSpec spec{3, 0, {s.xi2 + 1.0}, {s.xi2, s.alpha, s.beta}};
    specfun::MeijerGOptions opts;
    opts.log_scale = std::log(s.xi2 / (s.r * z)) - std::lgamma(s.alpha) - std::lgamma(s.beta);
    return specfun::meijer_g_eval(spec, h * std::pow(z / s.avg_snr, 1.0 / s.r), opts).value;
}

double fso_cdf_log_coefficient(const FsoChannelState& s) {
    return (s.alpha + s.beta - 2.0) * std::log(double(s.r)) + std::log(s.xi2) - (s.r - 1) * std::log(2.0 * kPi) -
           std::lgamma(s.alpha) - std::lgamma(s.beta);
}

double fso_cdf_coefficient(const FsoChannelState& s) { return std::exp(fso_cdf_log_coefficient(s)); }

double fso_cdf_scale(const FsoChannelState& s) {
    const double r = s.r;
    return std::pow(s.xi2 * s.alpha * s.beta / (r * r * (s.xi2 + 1.0)), r);
}

std::vector<double> fso_eps1(const FsoChannelState& s) {
    std::vector<double> out;
    for (int i = 1; i <= s.r; ++i) out.push_back((s.xi2 + i) / s.r);
    return out;
}

std::vector<double> fso_eps2(const FsoChannelState& s) {
    std::vector<double> out;
    for (int i = 0; i < s.r; ++i) {
        out.push_back((s.xi2 + i) / s.r);
        out.push_back((s.alpha + i) / s.r);
        out.push_back((s.beta + i) / s.r);
    }
    return out;
}

specfun::MeijerGSpec fso_cdf_spec(const FsoChannelState& s) {
    specfun::MeijerGSpec spec;
    spec.m = 3 * s.r;
    spec.n = 1;
    spec.a.push_back(1.0);
    for (double e : fso_eps1(s)) spec.a.push_back(e);
    spec.b = fso_eps2(s);
    spec.b.push_back(0.0);
    return spec;
}

double fso_snr_cdf(double z, const FsoChannelState& s) {
    s.validate();
    if (z < 0.0 || std::isnan(z)) throw DomainError("FSO SNR CDF needs z >= 0");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return 1.0;
    specfun::MeijerGOptions opts;
    opts.log_scale = fso_cdf_log_coefficient(s);
    const double v = specfun::meijer_g_eval(fso_cdf_spec(s), fso_cdf_scale(s) * z / s.avg_snr, opts).value;
    return std::clamp(v, 0.0, 1.0);
}

ThzChannelState ThzChannelState::make(double scale, const PointingParams& p) {
    ThzChannelState s;
    s.xi2 = p.xi2;
    s.A0 = p.A0;
    s.scale = scale;
    s.avg_snr = scale * thz_pointing_moment(p);
    s.gamma_max = scale * p.A0 * p.A0;
    s.validate();
    return s;
}

void ThzChannelState::validate() const {
    require_positive(xi2, "THz xi^2");
    require_positive(scale, "THz SNR scale");
    if (!(A0 > 0.0 && A0 <= 1.0)) throw DomainError("THz A0 must lie in (0, 1]");
}

double thz_snr_scale(double transmit_snr, double path_gain, double attenuation_product) {
    if (!(transmit_snr >= 0.0) || !(path_gain >= 0.0) || !(attenuation_product >= 0.0)) {
        throw DomainError("THz SNR inputs must be nonnegative");
    }
    return transmit_snr * path_gain * attenuation_product;
}

double thz_snr_pdf(double x, const ThzChannelState& s) {
    if (!(x > 0.0)) throw DomainError("THz SNR density needs x > 0");
    if (x > s.gamma_max) return 0.0;
    return 0.5 * s.xi2 * std::pow(x / s.scale, 0.5 * s.xi2 - 1.0) / (std::pow(s.A0, s.xi2) * s.scale);
}

double thz_snr_cdf(double x, const ThzChannelState& s) {
    if (!(x > 0.0)) throw DomainError("THz SNR CDF needs x > 0");
    if (x >= s.gamma_max) return 1.0;
    return std::pow(x / s.gamma_max, 0.5 * s.xi2);
}

KaChannelState KaChannelState::make(int m, double omega, double b, double avg_snr) {
    KaChannelState s;
    s.m = m;
    s.omega = omega;
    s.b = b;
    s.avg_snr = avg_snr;
    s.validate();
    const double tb = 2.0 * b;
    s.phi = std::pow(tb * m / (tb * m + omega), m) / tb;
    s.zeta = 1.0 / tb;
    s.mu = omega / (tb * (tb * m + omega));
    s.v = m / (tb * m + omega);
    s.scale = avg_snr / (tb + omega);
    return s;
}

void KaChannelState::validate() const {
    if (m < 1) throw DomainError("shadowing severity m must be an integer >= 1");
    require_positive(b, "multipath half power b");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("LOS power must be nonnegative");
    require_positive(avg_snr, "Ka average SNR");
}

double ka_avg_snr(double transmit_snr, double weather_factor, double path_gain, double omega, double b) {
    return transmit_snr * weather_factor * path_gain * (2.0 * b + omega);
}

std::vector<double> ka_cdf_weights(const KaChannelState& s) {
    std::vector<double> w(s.m);
    const double lphi = std::log(s.phi);
    const double lv = std::log(s.v);
    for (int n = 0; n < s.m; ++n) {
        if (s.mu == 0.0) {
            w[n] = n == 0 ? s.phi / s.v : 0.0;
            continue;
        }
        w[n] = std::exp(lphi + log_binomial(s.m - 1, n) + n * std::log(s.mu) - (n + 1) * lv);
    }
    return w;
}

double ka_snr_pdf(double x, const KaChannelState& s) {
    if (!(x >= 0.0)) throw DomainError("Ka SNR density needs x >= 0");
    const double y = x / s.scale;
    if (y == 0.0) return s.phi / s.scale;
    double sum = 0.0;
    for (int n = 0; n < s.m; ++n) {
        if (s.mu == 0.0 && n > 0) break;
        const double lt = log_binomial(s.m - 1, n) + (n > 0 ? n * std::log(s.mu * y) : 0.0) - std::lgamma(n + 1.0);
        sum += std::exp(lt - s.v * y);
    }
    return s.phi / s.scale * sum;
}

double ka_snr_cdf(double x, const KaChannelState& s, KaCdfForm form) {
    if (!(x >= 0.0)) throw DomainError("Ka SNR CDF needs x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double rate = form == KaCdfForm::integrated ? s.v : s.mu;
    const double y = rate * x / s.scale;
    const auto w = ka_cdf_weights(s);
    double sum = 0.0;
    for (int n = 0; n < s.m; ++n) sum += w[n] * boost::math::gamma_p(n + 1.0, y);
    return std::min(sum, 1.0);
}

} // namespace haplink::channels
