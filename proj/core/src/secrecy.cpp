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

#include "haplink/secrecy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "haplink/errors.hpp"
#include "haplink/specfun.hpp"

namespace haplink::secrecy {

namespace {

constexpr double kClampReport = 1e-6;

void require_rate(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("target secrecy rate must be positive");
}

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

SopValue finish(double raw, double err, Method method) {
    SopValue v;
    v.method = method;
    v.error_estimate = err;
    if (raw < -kClampReport || raw > 1.0 + kClampReport) {
        v.clamped = true;
        v.note = "clamped from " + std::to_string(raw);
    }
    v.value = std::clamp(raw, 0.0, 1.0);
    return v;
}

SopValue from_oracle(const OracleProblem& p, double rate, const std::string& why) {
    auto r = sop_numeric_oracle(p, rate);
    auto v = finish(r.value, r.error_estimate, Method::numeric_oracle);
    v.fallback = true;
    v.note = why + (v.note.empty() ? "" : "; " + v.note);
    return v;
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

long double log_add(long double a, long double b) {
    if (a == -std::numeric_limits<long double>::infinity()) return b;
    if (b == -std::numeric_limits<long double>::infinity()) return a;
    const long double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

template <class F>
double gk_segment(F f, double a, double b, unsigned depth, double rel_tol, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double e = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double t) { return half * f(mid + half * t); }, -1.0, 1.0, depth, rel_tol, &e);
    err += e;
    return v;
}

} // namespace

double secrecy_capacity(double gamma_legit, double gamma_eve) {
    if (!(gamma_legit >= 0.0) || !(gamma_eve >= 0.0)) throw DomainError("SNRs must be nonnegative");
    return std::max(0.0, std::log2(1.0 + gamma_legit) - std::log2(1.0 + gamma_eve));
}

const char* method_name(Method m) {
    switch (m) {
    case Method::closed_form:
        return "closed-form";
    case Method::numeric_oracle:
        return "numeric-oracle";
    case Method::monte_carlo:
        return "monte-carlo";
    }
    return "unknown";
}

OracleResult sop_numeric_oracle(const OracleProblem& p, double rate, double rel_tol) {
    require_rate(rate);
    if (!(p.eve_scale > 0.0)) throw DomainError("eavesdropper scale must be positive");
    const double k = std::exp2(rate);
    auto x_of = [&](double z) { return k * (1.0 + z) - 1.0; };
    const double t0 = k - 1.0;

    // Integrate in u = ln z on [ln lo, ln hi]; the two end pieces are bracketed analytically.
    const double lo = p.eve_scale * 1e-200;
    const bool bounded = std::isfinite(p.eve_support_max);
    double hi = bounded ? p.eve_support_max : p.eve_scale * 1e40;
    const double ulo = std::log(lo);
    double uhi = std::log(hi);
    const double uc = std::log(p.eve_scale);

    // Stop where the log-space density has underflowed past the bulk; the densities here are
    // unimodal in ln z, so nothing of size returns further out.
    bool underflowed = false;
    if (!bounded) {
        for (double u = uc + 2.0; u < uhi; u += 2.0) {
            const double z = std::exp(u);
            if (p.pdf_eve(z) * z < 1e-300) {
                uhi = u;
                hi = z;
                underflowed = true;
                break;
            }
        }
    }

    std::vector<double> cuts{ulo, uhi};
    for (double u = uc - 30.0; u <= uc + 30.0; u += 2.0) {
        if (u > ulo && u < uhi) cuts.push_back(u);
    }
    for (double b : p.breakpoints) {
        if (b > lo && b < hi) cuts.push_back(std::log(b));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto integrand = [&](double u) {
        const double z = std::exp(u);
        const double f = p.pdf_eve(z);
        if (f == 0.0) return 0.0;
        return p.cdf_legit(x_of(z)) * f * z;
    };
    // One rule per piece first, then refine each piece against the total rather than itself.
    const std::size_t n = cuts.size() - 1;
    std::vector<double> coarse(n), coarse_err(n, 0.0);
    double estimate = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        coarse[i] = gk_segment(integrand, cuts[i], cuts[i + 1], 0, rel_tol, coarse_err[i]);
        estimate += coarse[i];
    }
    double err = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = rel_tol * std::abs(estimate) / static_cast<double>(n);
        if (coarse_err[i] <= target) {
            total += coarse[i];
            err += coarse_err[i];
            continue;
        }
        const double tol = std::max(rel_tol, std::min(0.1, target / std::max(std::abs(coarse[i]), 1e-300)));
        total += gk_segment(integrand, cuts[i], cuts[i + 1], 12, tol, err);
    }

    const double fe_lo = p.cdf_eve(lo);
    const double low_a = p.cdf_legit(t0) * fe_lo;
    const double low_b = p.cdf_legit(x_of(lo)) * fe_lo;
    total += 0.5 * (low_a + low_b);
    err += 0.5 * std::abs(low_b - low_a);
    if (!bounded && !underflowed) {
        const double tail = 1.0 - p.cdf_eve(hi);
        const double up_a = p.cdf_legit(x_of(hi)) * tail;
        total += 0.5 * (up_a + tail);
        err += 0.5 * (tail - up_a);
    }
    if (!std::isfinite(total)) throw NumericError("SOP quadrature produced a non-finite value", total, err);
    return {total, err};
}

OracleProblem fso_oracle_problem(const channels::FsoChannelState& legit, const channels::FsoChannelState& eve) {
    OracleProblem p;
    p.cdf_legit = [legit](double x) { return channels::fso_snr_cdf(x, legit); };
    p.pdf_eve = [eve](double z) { return channels::fso_snr_pdf(z, eve); };
    p.cdf_eve = [eve](double z) { return channels::fso_snr_cdf(z, eve); };
    p.eve_scale = eve.avg_snr;
    return p;
}

OracleProblem thz_oracle_problem(const channels::ThzChannelState& legit, const channels::ThzChannelState& eve) {
    OracleProblem p;
    p.cdf_legit = [legit](double x) { return x <= 0.0 ? 0.0 : channels::thz_snr_cdf(x, legit); };
    p.pdf_eve = [eve](double z) { return channels::thz_snr_pdf(z, eve); };
    p.cdf_eve = [eve](double z) { return z <= 0.0 ? 0.0 : channels::thz_snr_cdf(z, eve); };
    p.eve_support_max = eve.gamma_max;
    p.eve_scale = eve.gamma_max;
    return p;
}

OracleProblem ka_oracle_problem(const channels::KaChannelState& legit, const channels::KaChannelState& eve) {
    OracleProblem p;
    p.cdf_legit = [legit](double x) { return channels::ka_snr_cdf(x, legit); };
    p.pdf_eve = [eve](double z) { return channels::ka_snr_pdf(z, eve); };
    p.cdf_eve = [eve](double z) { return channels::ka_snr_cdf(z, eve); };
    p.eve_scale = eve.avg_snr;
    return p;
}

SopValue sop_fso(const channels::FsoChannelState& legit, const channels::FsoChannelState& eve, double rate,
                 const FsoSopOptions& opts) {
    require_rate(rate);
    legit.validate();
    eve.validate();
    if (legit.r != eve.r) throw DomainError("legitimate and eavesdropper FSO links must share r");
    const double t0 = std::exp2(rate) - 1.0;
    const double q_h = channels::fso_cdf_scale(legit) * t0 / legit.avg_snr;
    const double q_e = channels::fso_cdf_scale(eve) * (1.0 - std::exp2(-rate)) / eve.avg_snr;

    specfun::BivariateSpec spec;
    spec.joint_num = {0.0};
    spec.s_kernel.m = 3 * legit.r;
    spec.s_kernel.n = 0;
    spec.s_kernel.a = channels::fso_eps1(legit);
    spec.s_kernel.a.push_back(1.0);
    spec.s_kernel.b = channels::fso_eps2(legit);
    spec.v_kernel.m = 3 * eve.r;
    spec.v_kernel.n = 1;
    spec.v_kernel.a = {1.0};
    for (double e : channels::fso_eps1(eve)) spec.v_kernel.a.push_back(e);
    spec.v_kernel.b = channels::fso_eps2(eve);

    const double window = std::min({legit.xi2, legit.alpha, legit.beta}) / legit.r;
    specfun::BivariateOptions bo;
    bo.c_s = std::isnan(opts.c_s) ? -std::min(0.5 * window, 0.4) : opts.c_s;
    bo.c_v = std::isnan(opts.c_v) ? std::abs(bo.c_s) + 0.25 : opts.c_v;
    bo.rel_tol = opts.rel_tol;
    bo.log_scale = channels::fso_cdf_log_coefficient(legit) + channels::fso_cdf_log_coefficient(eve);

    try {
        auto r = specfun::meijer_g_bivariate(spec, q_h, q_e, bo);
        return finish(-r.value, r.error_estimate, Method::closed_form);
    } catch (const SpecError& e) {
        if (!opts.allow_fallback) throw;
        return from_oracle(fso_oracle_problem(legit, eve), rate, std::string("closed form rejected: ") + e.what());
    } catch (const NumericError& e) {
        if (!opts.allow_fallback) throw;
        return from_oracle(fso_oracle_problem(legit, eve), rate, std::string("closed form failed: ") + e.what());
    }
}

SopValue sop_thz(const channels::ThzChannelState& legit, const channels::ThzChannelState& eve, double rate) {
    require_rate(rate);
    legit.validate();
    eve.validate();
    const double k = std::exp2(rate);
    const double t0 = k - 1.0;
    const double psi1 = (legit.gamma_max + 1.0) / k - 1.0;
    if (!(psi1 > 0.0)) return finish(1.0, 0.0, Method::closed_form);

    const double u = std::min(psi1, eve.gamma_max);
    const double fh_t0 = std::pow(t0 / legit.gamma_max, 0.5 * legit.xi2);
    const double fe_u = std::pow(u / eve.gamma_max, 0.5 * eve.xi2);
    const double c = 0.5 * eve.xi2;
    double hyp = 0.0;
    try {
        hyp = specfun::gauss_2f1(-0.5 * legit.xi2, c, c + 1.0, -k * u / t0);
    } catch (const NumericError& e) {
        return from_oracle(thz_oracle_problem(legit, eve), rate, std::string("2F1 failed: ") + e.what());
    }
    double raw = fh_t0 * fe_u * hyp;
    if (psi1 < eve.gamma_max) raw += 1.0 - std::pow(psi1 / eve.gamma_max, c);
    return finish(raw, 1e-10 * std::abs(raw), Method::closed_form);
}

SopValue sop_ka(const channels::KaChannelState& legit, const channels::KaChannelState& eve, double rate) {
    require_rate(rate);
    legit.validate();
    eve.validate();
    using ld = long double;
    constexpr ld kNegInf = -std::numeric_limits<ld>::infinity();
    const ld k2 = std::exp2(static_cast<ld>(rate));
    const ld t0 = k2 - 1;
    const ld a = legit.v / legit.scale;
    const ld b = eve.v / eve.scale;
    const ld lam = a * k2 + b;
    const ld log_lam = std::log(lam);
    const ld log_t0 = std::log(t0);
    const ld log_k2 = std::log(k2);

    // Eavesdropper density as exp(-b z) sum_n e_n z^n.
    std::vector<ld> log_e;
    for (int n = 0; n < eve.m; ++n) {
        if (eve.mu == 0.0 && n > 0) break;
        ld le = std::log(static_cast<ld>(eve.phi) / eve.scale) + log_binomial(eve.m - 1, n) - std::lgamma(n + 1.0);
        if (n > 0) le += n * std::log(static_cast<ld>(eve.mu) / eve.scale);
        log_e.push_back(le);
    }

    // L_k = log of (a^k / k!) E[x^k exp(-a x)] with x = t0 + 2^R z.
    auto log_term = [&](int kk) {
        ld acc = kNegInf;
        for (std::size_t n = 0; n < log_e.size(); ++n) {
            for (int j = 0; j <= kk; ++j) {
                const ld t = log_e[n] + log_binomial(kk, j) + (kk - j) * log_t0 + j * log_k2 +
                             std::lgamma(static_cast<ld>(n + j + 1)) - (n + j + 1) * log_lam;
                acc = log_add(acc, t);
            }
        }
        return kk * std::log(a) - std::lgamma(static_cast<ld>(kk + 1)) - a * t0 + acc;
    };

    const auto w = channels::ka_cdf_weights(legit);
    std::vector<ld> from_k(legit.m + 1, 0);
    for (int p = legit.m - 1; p >= 0; --p) from_k[p] = from_k[p + 1] + w[p];

    ld head = 0;
    for (int kk = 0; kk < legit.m; ++kk) head += from_k[kk] * std::exp(log_term(kk));
    if (head <= 0.5L) return finish(static_cast<double>(1 - head), 1e-12, Method::closed_form);

    // Small SOP: sum the complementary Poisson tail directly.
    ld tail = 0;
    ld below = 0;
    constexpr int kMaxTerms = 4000;
    for (int kk = 1; kk <= kMaxTerms; ++kk) {
        below += kk - 1 < legit.m ? w[kk - 1] : 0.0;
        const ld term = std::min<ld>(below, 1) * std::exp(log_term(kk));
        tail += term;
        if (kk >= legit.m && term <= 1e-18L * tail) {
            return finish(static_cast<double>(tail), static_cast<double>(1e-12L * tail), Method::closed_form);
        }
    }
    return finish(static_cast<double>(1 - head), 1e-12, Method::closed_form);
}

double sop_ka_expanded(const channels::KaChannelState& legit, const channels::KaChannelState& eve, double rate) {
    using ld = long double;
    require_rate(rate);
    const ld k2 = std::exp2(static_cast<ld>(rate));
    const ld t0 = k2 - 1;
    const ld se = eve.scale;
    const ld su = legit.scale;
    const ld ve = eve.v;
    const ld vu = legit.v;
    const ld c = ve / (se * k2);
    const ld a = vu / su;
    const ld pre = static_cast<ld>(legit.phi) * eve.phi * std::exp(-ve * (1 / k2 - 1) / se) / (k2 * se);
    ld total = 0;
    for (int n = 0; n < eve.m; ++n) {
        const ld cn = std::exp(static_cast<ld>(log_binomial(eve.m - 1, n)) - std::lgamma(n + 1.0L)) *
                      std::pow(static_cast<ld>(eve.mu) / (k2 * se), n);
        for (int p = 0; p < legit.m; ++p) {
            const ld cp = std::exp(static_cast<ld>(log_binomial(legit.m - 1, p))) * std::pow(static_cast<ld>(legit.mu), p) /
                          std::pow(vu, p + 1);
            ld inner = 0;
            for (int q = 0; q <= n; ++q) {
                const ld cq = std::exp(static_cast<ld>(log_binomial(n, q))) / std::pow(1 - k2, q - n);
                ld bracket = std::pow(1 / c, q + 1) * boost::math::tgamma(static_cast<ld>(q + 1), c * t0);
                for (int kk = 0; kk <= p; ++kk) {
                    bracket -= std::pow(a, kk) * boost::math::tgamma(static_cast<ld>(kk + q + 1), t0 * (a + c)) /
                               (std::pow(a + c, kk + q + 1) * std::tgamma(static_cast<ld>(kk + 1)));
                }
                inner += cq * bracket;
            }
            total += cn * cp * inner;
        }
    }
    // The expanded sum integrates F_U over the eavesdropper density; F_U = sum_p w_p (1 - ...).
    return static_cast<double>(pre * total);
}

double sop_first_hop(double p_fso, double p_thz) {
    require_probability(p_fso, "FSO SOP");
    require_probability(p_thz, "THz SOP");
    return p_fso * p_thz;
}

double sop_e2e_per_hap(double p1, double p_ka) {
    require_probability(p1, "first-hop SOP");
    require_probability(p_ka, "Ka SOP");
    return p1 + p_ka - p1 * p_ka;
}

double sop_total(const std::vector<double>& per_hap) {
    if (per_hap.empty()) throw ConfigError("at least one HAP is required");
    double out = 1.0;
    for (double p : per_hap) {
        require_probability(p, "per-HAP SOP");
        out *= p;
    }
    return out;
}

SopBreakdown analyze(const std::vector<HapLinks>& haps, double rate, const FsoSopOptions& fso_opts) {
    SopBreakdown out;
    std::vector<double> e2e;
    for (const auto& h : haps) {
        HapSop s;
        s.fso = sop_fso(h.fso_legit, h.fso_eve, rate, fso_opts);
        s.thz = sop_thz(h.thz_legit, h.thz_eve, rate);
        s.ka = sop_ka(h.ka_legit, h.ka_eve, rate);
        s.p_first_hop = sop_first_hop(s.fso.value, s.thz.value);
        s.p_e2e = sop_e2e_per_hap(s.p_first_hop, s.ka.value);
        e2e.push_back(s.p_e2e);
        out.haps.push_back(std::move(s));
    }
    out.p_total = sop_total(e2e);
    return out;
}

} // namespace haplink::secrecy
