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

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

#include "haplink/errors.hpp"
#include "haplink/specfun.hpp"

namespace haplink::specfun {

namespace {

bool nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// log|Gamma(x)| and its sign; x must not be a pole.
double lgamma_signed(double x, int& sign) {
    sign = 1;
    return boost::math::lgamma(x, &sign);
}

std::string describe(double a, double b, double c, double z) {
    return "2F1(" + std::to_string(a) + ", " + std::to_string(b) + "; " + std::to_string(c) + "; " +
           std::to_string(z) + ")";
}

} // namespace

namespace detail {

double gauss_2f1_series(double a, double b, double c, double z) {
    if (std::abs(z) >= 1.0) throw DomainError("series for " + describe(a, b, c, z) + " needs |z| < 1");
    double term = 1.0, sum = 1.0, bound = 1.0;
    int small = 0;
    for (int k = 0; k < 200000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        bound = std::max(bound, std::abs(sum));
        if (term == 0.0) return sum;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw NumericError("series for " + describe(a, b, c, z) + " did not converge", sum, bound);
}

double gauss_2f1_pfaff(double a, double b, double c, double z) {
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * gauss_2f1_series(a, c - b, c, w);
}

double gauss_2f1_inverse(double a, double b, double c, double z) {
    const double d = b - a;
    if (std::abs(d - std::round(d)) < 1e-5)
        throw NumericError("connection formula singular for " + describe(a, b, c, z));
    auto coefficient = [&](double p, double q) {
        // Gamma(c) Gamma(q - p) / (Gamma(q) Gamma(c - p))
        if (nonpositive_integer(q) || nonpositive_integer(c - p)) return 0.0;
        int s1, s2, s3, s4;
        double l = lgamma_signed(c, s1) + lgamma_signed(q - p, s2) - lgamma_signed(q, s3) -
                   lgamma_signed(c - p, s4);
        return s1 * s2 * s3 * s4 * std::exp(l);
    };
    const double u = 1.0 / z;
    double t1 = coefficient(a, b) * std::pow(-z, -a) * gauss_2f1_series(a, a - c + 1.0, a - b + 1.0, u);
    double t2 = coefficient(b, a) * std::pow(-z, -b) * gauss_2f1_series(b, b - c + 1.0, b - a + 1.0, u);
    return t1 + t2;
}

double gauss_2f1_euler(double a, double b, double c, double z) {
    if (!(c > b && b > 0.0)) {
        if (c > a && a > 0.0) return gauss_2f1_euler(b, a, c, z);
        throw NumericError("no integral representation for " + describe(a, b, c, z));
    }
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double t) {
        return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * std::pow(1.0 - z * t, -a);
    };
    double err = 0.0;
    double v = integrator.integrate(f, 0.0, 1.0, 1e-14, &err);
    double pref = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    if (err > 1e-11 * std::abs(v)) throw NumericError("quadrature for " + describe(a, b, c, z), pref * v, pref * err);
    return pref * v;
}

} // namespace detail

double gauss_2f1(double a, double b, double c, double z) {
    if (!(z <= 0.0)) throw DomainError("gauss_2f1 is implemented for z <= 0 only");
    if (nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a nonpositive integer");
    if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;
    if (z >= -2.0) return detail::gauss_2f1_pfaff(a, b, c, z);
    try {
        return detail::gauss_2f1_inverse(a, b, c, z);
    } catch (const NumericError&) {
        if (z >= -50.0) return detail::gauss_2f1_pfaff(a, b, c, z);
        return detail::gauss_2f1_euler(a, b, c, z);
    }
}

} // namespace haplink::specfun
