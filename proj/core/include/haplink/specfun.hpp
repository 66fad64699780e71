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

#include <complex>
#include <limits>
#include <cstddef>
#include <vector>

namespace haplink::specfun {

// Logarithm of the Gamma function for complex arguments. For Re z < 1/2 the
// imaginary part is only determined modulo 2*pi.
std::complex<double> ln_gamma(std::complex<double> z);

double erf(double x);

// Non-normalised incomplete Gamma functions; s > 0, x >= 0.
double lower_inc_gamma(double s, double x);
double upper_inc_gamma(double s, double x);

// Gauss hypergeometric 2F1 for real z <= 0.
double gauss_2f1(double a, double b, double c, double z);

namespace detail {
double gauss_2f1_series(double a, double b, double c, double z);
double gauss_2f1_pfaff(double a, double b, double c, double z);
double gauss_2f1_inverse(double a, double b, double c, double z);
double gauss_2f1_euler(double a, double b, double c, double z);
} // namespace detail

struct MeijerGSpec {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> a;
    std::vector<double> b;

    std::size_t p() const { return a.size(); }
    std::size_t q() const { return b.size(); }

    // Throws SpecError on inconsistent orders or coinciding pole families.
    void validate() const;
};

struct ContourSpec {
    double c = 0.0;
    double half_length = 0.0;
    std::size_t nodes = 0;
};

struct MeijerGOptions {
    double rel_tol = 1e-12;
    std::size_t max_nodes = 400000;
    // Overrides automatic contour placement when set to a finite value.
    double abscissa = std::numeric_limits<double>::quiet_NaN();
    // Multiplies the node density; used to verify the error estimate.
    int refine = 1;
    // The result is multiplied by exp(log_scale) before leaving log space.
    double log_scale = 0.0;
};

struct MeijerGResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double imag_residual = 0.0;
    ContourSpec contour;
};

MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double x, const MeijerGOptions& opts = {});
double meijer_g(const MeijerGSpec& spec, double x);

// Double Mellin-Barnes integral
//
//   (2 pi i)^-2 ∫∫ J(s + v) K_s(s) K_v(v) x^-s y^-v ds dv
//
// where K_s and K_v are the Mellin kernels of the two univariate Meijer-G
// specs and J(w) = prod Gamma(joint_num + w) / prod Gamma(joint_den + w).
// The v-contour is taken as a straight line and every right-family pole of
// K_v that lies left of it is removed by subtracting its residue.
struct BivariateSpec {
    std::vector<double> joint_num;
    std::vector<double> joint_den;
    MeijerGSpec s_kernel;
    MeijerGSpec v_kernel;
};

struct BivariateOptions {
    double c_s = -0.25;
    double c_v = 0.5;
    double rel_tol = 1e-8;
    std::size_t max_nodes_per_axis = 20000;
    int refine = 1;
    double log_scale = 0.0;
};

struct BivariateResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double line_value = 0.0;
    double residue_correction = 0.0;
    std::size_t residues = 0;
    ContourSpec s_contour;
    ContourSpec v_contour;
};

BivariateResult meijer_g_bivariate(const BivariateSpec& spec, double x, double y,
                                   const BivariateOptions& opts);

} // namespace haplink::specfun
