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
#include <vector>

#include "haplink/specfun.hpp"

namespace haplink::channels {

struct PointingParams {
    double w_z = 0.0;
    double aperture_radius = 0.0;
    double sigma_s = 0.0;
    double v = 0.0;
    double A0 = 0.0;
    double w_zeq = 0.0;
    double xi2 = 0.0;
};

PointingParams pointing_params(double w_z, double aperture_radius, double sigma_s);

// E[I_p] for the FSO pointing factor and E[|h|^2] for the THz one.
double fso_pointing_moment(const PointingParams& p);
double thz_pointing_moment(const PointingParams& p);

struct FsoChannelState {
    double alpha = 1.0;
    double beta = 1.0;
    double xi2 = 1.0;
    double A0 = 1.0;
    int r = 2;
    double avg_snr = 1.0;
    double rho = 1.0;

    void validate() const;
};

double fso_avg_snr(double transmit_snr, double eta, double rho, double path_gain, int r, const PointingParams& p);

double fso_snr_pdf(double z, const FsoChannelState& s);
double fso_snr_cdf(double z, const FsoChannelState& s);

// Pieces of the closed-form CDF:
//   F(z) = coefficient * G^{3r,1}_{r+1,3r+1}(scale * z / avg_snr | 1, eps1; eps2, 0)
double fso_cdf_coefficient(const FsoChannelState& s);
double fso_cdf_log_coefficient(const FsoChannelState& s);
double fso_cdf_scale(const FsoChannelState& s);
std::vector<double> fso_eps1(const FsoChannelState& s);
std::vector<double> fso_eps2(const FsoChannelState& s);
specfun::MeijerGSpec fso_cdf_spec(const FsoChannelState& s);

struct ThzChannelState {
    double xi2 = 1.0;
    double A0 = 1.0;
    // Scale of the SNR: gamma = scale * |h|^2.
    double scale = 1.0;
    double avg_snr = 1.0;
    double gamma_max = 1.0;

    static ThzChannelState make(double scale, const PointingParams& p);
    void validate() const;
};

// Scale factor Upsilon * L * delta_rain * delta_cloud * exp(-kappa_a L).
double thz_snr_scale(double transmit_snr, double path_gain, double attenuation_product);

double thz_snr_pdf(double x, const ThzChannelState& s);
double thz_snr_cdf(double x, const ThzChannelState& s);

enum class KaCdfForm { integrated, mean_argument };

struct KaChannelState {
    int m = 1;
    double omega = 1.0;
    double b = 0.5;
    double phi = 0.0;
    double zeta = 0.0;
    double mu = 0.0;
    double v = 0.0;
    double avg_snr = 1.0;
    // avg_snr / (2b + Omega): the SNR is scale * |h|^2.
    double scale = 1.0;

    static KaChannelState make(int m, double omega, double b, double avg_snr);
    void validate() const;
};

double ka_avg_snr(double transmit_snr, double weather_factor, double path_gain, double omega, double b);

// w_n = phi C(m-1, n) mu^n / v^(n+1); they sum to one.
std::vector<double> ka_cdf_weights(const KaChannelState& s);

double ka_snr_pdf(double x, const KaChannelState& s);
double ka_snr_cdf(double x, const KaChannelState& s, KaCdfForm form = KaCdfForm::integrated);

} // namespace haplink::channels
