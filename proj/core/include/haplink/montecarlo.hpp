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
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "haplink/channels.hpp"
#include "haplink/secrecy.hpp"

namespace haplink::montecarlo {

// Independent generator per (seed, stream_id).
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    double gamma(double shape, double scale);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

double sample_pointing_irradiance(RngStream& rng, double A0, double xi2);
// Product of two unit-mean gamma variates.
double sample_gamma_gamma(RngStream& rng, double alpha, double beta);
double sample_shadowed_rician_power(RngStream& rng, int m, double omega, double b);

double sample_fso_snr(RngStream& rng, const channels::FsoChannelState& s);
// Same, with the turbulence factor I_a supplied by the caller.
double sample_fso_snr(RngStream& rng, const channels::FsoChannelState& s, double turbulence);
double sample_thz_snr(RngStream& rng, const channels::ThzChannelState& s);
double sample_ka_snr(RngStream& rng, const channels::KaChannelState& s);

enum class FirstHop { hybrid, fso_only, thz_only };
enum class Link { fso, thz, outage };

struct SimOptions {
    FirstHop first_hop = FirstHop::hybrid;
    // Eavesdropping HAP sees the same turbulence realisation as the legitimate HAP.
    bool shared_turbulence = false;
};

struct HapSample {
    double fso_legit = 0, fso_eve = 0;
    double thz_legit = 0, thz_eve = 0;
    double ka_legit = 0, ka_eve = 0;
    Link link = Link::outage;
    double c_first_hop = 0;
    double c_ka = 0;
    double c_e2e = 0;
};

struct SchemeSample {
    std::vector<HapSample> haps;
    std::size_t best = 0;
    double c_e2e = 0;
};

SchemeSample sample_scheme(RngStream& rng, const std::vector<secrecy::HapLinks>& haps, double rate,
                           const SimOptions& opts = {});

struct BinomialEstimate {
    std::uint64_t events = 0;
    std::uint64_t trials = 0;
    double p = 0;
    double std_error = 0;
    // Wilson score interval at 95 %.
    double ci_lo = 0;
    double ci_hi = 0;
    double ci95 = 0;
    // Fewer than 10 events: too few to resolve p.
    bool starved = true;
};

BinomialEstimate binomial_estimate(std::uint64_t events, std::uint64_t trials);

struct HapStats {
    BinomialEstimate fso, thz, first_hop, ka, e2e;
    std::uint64_t used_fso = 0;
    std::uint64_t used_thz = 0;
    std::uint64_t used_outage = 0;
};

struct SimResult {
    BinomialEstimate total;
    std::vector<HapStats> haps;
};

inline constexpr std::size_t kBlockSize = 65536;

// Trials are cut into blocks of kBlockSize, block b drawing from RngStream(seed, b), so the
// result does not depend on the worker count.
SimResult simulate_scheme(const std::vector<secrecy::HapLinks>& haps, double rate, std::uint64_t n_samples,
                          std::uint64_t seed, unsigned workers, const SimOptions& opts = {});

// sup |F_n - F| evaluated at every sample.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
// Upper bound on the same quantity using cdf at `grid` order statistics only.
double ks_distance_bound(std::vector<double> samples, const std::function<double(double)>& cdf,
                         std::size_t grid);

} // namespace haplink::montecarlo
