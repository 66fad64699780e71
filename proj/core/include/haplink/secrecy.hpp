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

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "haplink/channels.hpp"

namespace haplink::secrecy {

double secrecy_capacity(double gamma_legit, double gamma_eve);

enum class Method { closed_form, numeric_oracle, monte_carlo };
const char* method_name(Method m);

struct SopValue {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::closed_form;
    // Raw value left [0, 1] by more than 1e-6 before clamping.
    bool clamped = false;
    // Closed form failed and the numeric oracle was used instead.
    bool fallback = false;
    std::string note;
};

struct OracleProblem {
    std::function<double(double)> cdf_legit;
    std::function<double(double)> pdf_eve;
    std::function<double(double)> cdf_eve;
    double eve_support_max = std::numeric_limits<double>::infinity();
    // Typical eavesdropper SNR; sets the integration window.
    double eve_scale = 1.0;
    // Points where the integrand has a kink.
    std::vector<double> breakpoints;
};

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// P[C_s < R] = ∫ F_L(2^R (1 + z) - 1) f_E(z) dz over the eavesdropper support.
OracleResult sop_numeric_oracle(const OracleProblem& problem, double rate, double rel_tol = 1e-8);

OracleProblem fso_oracle_problem(const channels::FsoChannelState& legit, const channels::FsoChannelState& eve);
OracleProblem thz_oracle_problem(const channels::ThzChannelState& legit, const channels::ThzChannelState& eve);
OracleProblem ka_oracle_problem(const channels::KaChannelState& legit, const channels::KaChannelState& eve);

struct FsoSopOptions {
    // Contour abscissae; NaN selects the defaults.
    double c_s = std::numeric_limits<double>::quiet_NaN();
    double c_v = std::numeric_limits<double>::quiet_NaN();
    double rel_tol = 1e-8;
    bool allow_fallback = true;
};

SopValue sop_fso(const channels::FsoChannelState& legit, const channels::FsoChannelState& eve, double rate,
                 const FsoSopOptions& opts = {});
SopValue sop_thz(const channels::ThzChannelState& legit, const channels::ThzChannelState& eve, double rate);
SopValue sop_ka(const channels::KaChannelState& legit, const channels::KaChannelState& eve, double rate);

// Triple sum evaluated term by term in the binomial-expanded form; loses digits when the
// eavesdropper is weak. Kept for cross-checking.
double sop_ka_expanded(const channels::KaChannelState& legit, const channels::KaChannelState& eve, double rate);

double sop_first_hop(double p_fso, double p_thz);
double sop_e2e_per_hap(double p_first_hop, double p_ka);
double sop_total(const std::vector<double>& per_hap);

struct HapSop {
    SopValue fso;
    SopValue thz;
    SopValue ka;
    double p_first_hop = 0.0;
    double p_e2e = 0.0;
};

struct SopBreakdown {
    std::vector<HapSop> haps;
    double p_total = 0.0;
};

struct HapLinks {
    channels::FsoChannelState fso_legit;
    channels::FsoChannelState fso_eve;
    channels::ThzChannelState thz_legit;
    channels::ThzChannelState thz_eve;
    channels::KaChannelState ka_legit;
    channels::KaChannelState ka_eve;
};

SopBreakdown analyze(const std::vector<HapLinks>& haps, double rate, const FsoSopOptions& fso_opts = {});

} // namespace haplink::secrecy
