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

#include "haplink/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "haplink/errors.hpp"

namespace haplink::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> ln_gamma_right(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|.
std::complex<double> ln_sin_pi(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    if (std::abs(z.imag()) < 5.0) return std::log(std::sin(kPi * z));
    if (z.imag() > 0) {
        // sin(pi z) = -(e^{-i pi z} / 2i) (1 - e^{2 i pi z})
        return -i * kPi * z - std::log(-2.0 * i) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    }
    return i * kPi * z - std::log(2.0 * i) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

} // namespace

std::complex<double> ln_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() > 0.0) return {std::lgamma(z.real()), 0.0};
    if (z.real() < 0.5) {
        return std::log(kPi) - ln_sin_pi(z) - ln_gamma_right(1.0 - z);
    }
    return ln_gamma_right(z);
}

double erf(double x) { return std::erf(x); }

double lower_inc_gamma(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) throw DomainError("lower_inc_gamma requires s > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    return boost::math::tgamma_lower(s, x);
}

double upper_inc_gamma(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) throw DomainError("upper_inc_gamma requires s > 0 and x >= 0");
    if (x == 0.0) return std::tgamma(s);
    return boost::math::tgamma(s, x);
}

} // namespace haplink::specfun
