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


#include "haplink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "haplink/errors.hpp"

namespace haplink::montecarlo {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x68617000u};
    return std::mt19937_64(seq);
}

double fso_normaliser(const channels::FsoChannelState& s) { return (s.xi2 + 1.0) / s.xi2; }

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : engine_(seeded(seed, stream_id)) {}

double RngStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::gamma(double shape, double scale) {
    return std::gamma_distribution<double>(shape, scale)(engine_);
}

double sample_pointing_irradiance(RngStream& rng, double A0, double xi2) {
    return A0 * std::pow(rng.uniform(), 1.0 / xi2);
}

double sample_gamma_gamma(RngStream& rng, double alpha, double beta) {
    return rng.gamma(alpha, 1.0 / alpha) * rng.gamma(beta, 1.0 / beta);
}

double sample_shadowed_rician_power(RngStream& rng, int m, double omega, double b) {
    const double amp = std::sqrt(rng.gamma(m, omega / m));
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double sd = std::sqrt(b);
    const double re = amp * std::cos(theta) + sd * rng.normal();
    const double im = amp * std::sin(theta) + sd * rng.normal();
    return re * re + im * im;
}

double sample_fso_snr(RngStream& rng, const channels::FsoChannelState& s, double turbulence) {
    // I / E[I] with I = I_a * A0 * U^(1/xi2)
    const double rel = turbulence * std::pow(rng.uniform(), 1.0 / s.xi2) * fso_normaliser(s);
    return s.avg_snr * (s.r == 1 ? rel : std::pow(rel, s.r));
}

double sample_fso_snr(RngStream& rng, const channels::FsoChannelState& s) {
    return sample_fso_snr(rng, s, sample_gamma_gamma(rng, s.alpha, s.beta));
}

double sample_thz_snr(RngStream& rng, const channels::ThzChannelState& s) {
    const double h = sample_pointing_irradiance(rng, s.A0, s.xi2);
    return s.scale * h * h;
}

double sample_ka_snr(RngStream& rng, const channels::KaChannelState& s) {
    return s.scale * sample_shadowed_rician_power(rng, s.m, s.omega, s.b);
}

SchemeSample sample_scheme(RngStream& rng, const std::vector<secrecy::HapLinks>& haps, double rate,
                           const SimOptions& opts) {
    SchemeSample out;
    out.haps.resize(haps.size());
    out.c_e2e = -1.0;
    for (std::size_t n = 0; n < haps.size(); ++n) {
        const auto& l = haps[n];
        auto& h = out.haps[n];
        const double ia = sample_gamma_gamma(rng, l.fso_legit.alpha, l.fso_legit.beta);
        h.fso_legit = sample_fso_snr(rng, l.fso_legit, ia);
        h.fso_eve = opts.shared_turbulence ? sample_fso_snr(rng, l.fso_eve, ia) : sample_fso_snr(rng, l.fso_eve);
        h.thz_legit = sample_thz_snr(rng, l.thz_legit);
        h.thz_eve = sample_thz_snr(rng, l.thz_eve);
        h.ka_legit = sample_ka_snr(rng, l.ka_legit);
        h.ka_eve = sample_ka_snr(rng, l.ka_eve);

        const double cf = secrecy::secrecy_capacity(h.fso_legit, h.fso_eve);
        const double ct = secrecy::secrecy_capacity(h.thz_legit, h.thz_eve);
        const bool fso_ok = opts.first_hop != FirstHop::thz_only && cf >= rate;
        const bool thz_ok = opts.first_hop != FirstHop::fso_only && ct >= rate;
        if (fso_ok) {
            h.link = Link::fso;
            h.c_first_hop = cf;
        } else if (thz_ok) {
            h.link = Link::thz;
            h.c_first_hop = ct;
        } else {
            h.link = Link::outage;
            h.c_first_hop = 0.0;
        }
        h.c_ka = secrecy::secrecy_capacity(h.ka_legit, h.ka_eve);
        h.c_e2e = h.link == Link::outage ? 0.0 : std::min(h.c_first_hop, h.c_ka);
        if (h.c_e2e > out.c_e2e) {
            out.c_e2e = h.c_e2e;
            out.best = n;
        }
    }
    return out;
}

BinomialEstimate binomial_estimate(std::uint64_t events, std::uint64_t trials) {
    BinomialEstimate e;
    e.events = events;
    e.trials = trials;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    const double p = events / n;
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    e.p = p;
    e.std_error = std::sqrt(p * (1 - p) / n);
    e.ci_lo = events == 0 ? 0.0 : std::max(0.0, centre - half);
    e.ci_hi = events == trials ? 1.0 : std::min(1.0, centre + half);
    e.ci95 = 0.5 * (e.ci_hi - e.ci_lo);
    e.starved = events < 10;
    return e;
}

namespace {

struct Counts {
    std::uint64_t total = 0;
    struct Hap {
        std::uint64_t fso = 0, thz = 0, first_hop = 0, ka = 0, e2e = 0;
        std::uint64_t used_fso = 0, used_thz = 0, used_outage = 0;
    };
    std::vector<Hap> haps;
};

void run_block(Counts& c, const std::vector<secrecy::HapLinks>& haps, double rate, std::uint64_t seed,
               std::uint64_t block, std::uint64_t trials, const SimOptions& opts) {
    RngStream rng(seed, block);
    c.haps.assign(haps.size(), {});
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto s = sample_scheme(rng, haps, rate, opts);
        c.total += s.c_e2e < rate;
        for (std::size_t n = 0; n < haps.size(); ++n) {
            const auto& h = s.haps[n];
            auto& k = c.haps[n];
            const bool f_out = secrecy::secrecy_capacity(h.fso_legit, h.fso_eve) < rate;
            const bool t_out = secrecy::secrecy_capacity(h.thz_legit, h.thz_eve) < rate;
            k.fso += f_out;
            k.thz += t_out;
            k.first_hop += h.link == Link::outage;
            k.ka += h.c_ka < rate;
            k.e2e += h.c_e2e < rate;
            k.used_fso += h.link == Link::fso;
            k.used_thz += h.link == Link::thz;
            k.used_outage += h.link == Link::outage;
        }
    }
}

} // namespace

SimResult simulate_scheme(const std::vector<secrecy::HapLinks>& haps, double rate, std::uint64_t n_samples,
                          std::uint64_t seed, unsigned workers, const SimOptions& opts) {
    std::vector<std::string> issues;
    if (haps.empty()) issues.emplace_back("at least one HAP is required");
    if (n_samples < 10000) issues.emplace_back("mc samples must be >= 10000");
    if (workers == 0) issues.emplace_back("workers must be >= 1");
    if (!(rate > 0)) issues.emplace_back("rate must be > 0 [bit/s/Hz]");
    if (!issues.empty()) throw ConfigError(issues);
    for (const auto& h : haps) {
        h.fso_legit.validate();
        h.fso_eve.validate();
        h.thz_legit.validate();
        h.thz_eve.validate();
        h.ka_legit.validate();
        h.ka_eve.validate();
    }

    const std::uint64_t blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<Counts> per_block(blocks);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::uint64_t trials = std::min<std::uint64_t>(kBlockSize, n_samples - b * kBlockSize);
            run_block(per_block[b], haps, rate, seed, b, trials, opts);
        }
    };
    const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(work);
    work();
    pool.clear();

    Counts sum;
    sum.haps.assign(haps.size(), {});
    for (const auto& c : per_block) {
        sum.total += c.total;
        for (std::size_t n = 0; n < haps.size(); ++n) {
            auto& a = sum.haps[n];
            const auto& b = c.haps[n];
            a.fso += b.fso;
            a.thz += b.thz;
            a.first_hop += b.first_hop;
            a.ka += b.ka;
            a.e2e += b.e2e;
            a.used_fso += b.used_fso;
            a.used_thz += b.used_thz;
            a.used_outage += b.used_outage;
        }
    }

    SimResult r;
    r.total = binomial_estimate(sum.total, n_samples);
    for (const auto& k : sum.haps) {
        HapStats s;
        s.fso = binomial_estimate(k.fso, n_samples);
        s.thz = binomial_estimate(k.thz, n_samples);
        s.first_hop = binomial_estimate(k.first_hop, n_samples);
        s.ka = binomial_estimate(k.ka, n_samples);
        s.e2e = binomial_estimate(k.e2e, n_samples);
        s.used_fso = k.used_fso;
        s.used_thz = k.used_thz;
        s.used_outage = k.used_outage;
        r.haps.push_back(s);
    }
    return r;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_distance_bound(std::vector<double> samples, const std::function<double(double)>& cdf,
                         std::size_t grid) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    grid = std::clamp<std::size_t>(grid, 2, n);
    // 1-based ranks of the grid order statistics, always including the first and last.
    std::vector<std::size_t> rank(grid);
    for (std::size_t k = 0; k < grid; ++k) rank[k] = 1 + k * (n - 1) / (grid - 1);
    const double nn = static_cast<double>(n);
    std::vector<double> f(grid);
    for (std::size_t k = 0; k < grid; ++k) f[k] = cdf(samples[rank[k] - 1]);

    double d = std::max(f.front(), 1.0 - f.back());
    for (std::size_t k = 0; k < grid; ++k) {
        d = std::max({d, rank[k] / nn - f[k], f[k] - (rank[k] - 1) / nn});
        if (k + 1 < grid) {
            d = std::max({d, (rank[k + 1] - 1) / nn - f[k], f[k + 1] - rank[k] / nn});
        }
    }
    return d;
}

} // namespace haplink::montecarlo
