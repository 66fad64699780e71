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

#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <vector>

#include "haplink/atmosphere.hpp"
#include "haplink/channels.hpp"
#include "haplink/errors.hpp"
#include "haplink/secrecy.hpp"

namespace atm = haplink::atmosphere;
namespace ch = haplink::channels;
namespace sec = haplink::secrecy;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double db(double x) { return std::pow(10.0, x / 10.0); }

struct FsoPair {
    ch::FsoChannelState legit;
    ch::FsoChannelState eve;
};

// Default uplink scenario: 19 km HAP, 30 degrees, rho_H = 2/3, r = 2.
FsoPair default_fso_pair(double upsilon_db, double upsilon_eve_db) {
    auto g = atm::LinkGeometry::make(0.01, 19.0, 30.0);
    atm::WeatherLayers w;
    atm::TurbulenceProfile prof;
    auto pp = ch::pointing_params(15.0, 0.25, 10.0);
    auto turb = atm::gamma_gamma_params(g, prof, pp.w_zeq);
    const double il = atm::fso_total_path_gain(g, w, 1550e-9, 1e12, 1e12);
    FsoPair out;
    for (auto* s : {&out.legit, &out.eve}) {
        s->alpha = turb.alpha;
        s->beta = turb.beta;
        s->xi2 = pp.xi2;
        s->A0 = pp.A0;
        s->r = 2;
    }
    out.legit.rho = 2.0 / 3;
    out.eve.rho = 1.0 / 3;
    out.legit.avg_snr = ch::fso_avg_snr(db(upsilon_db), 1.0, out.legit.rho, il, 2, pp);
    out.eve.avg_snr = ch::fso_avg_snr(db(upsilon_eve_db), 1.0, out.eve.rho, il, 2, pp);
    return out;
}

FsoPair strong_fso(int r, double legit_avg, double eve_avg) {
    FsoPair p;
    p.legit.alpha = 2.5;
    p.legit.beta = 1.2;
    p.legit.xi2 = 1.3;
    p.legit.A0 = 0.3;
    p.legit.r = r;
    p.legit.avg_snr = legit_avg;
    p.eve = p.legit;
    p.eve.alpha = 4.1;
    p.eve.beta = 2.2;
    p.eve.xi2 = 0.9;
    p.eve.avg_snr = eve_avg;
    return p;
}

// Direct quadrature of the SOP integral, written independently of the library oracle.
double brute_sop(const std::function<double(double)>& cdf_l, const std::function<double(double)>& pdf_e,
                 double rate, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double k = std::exp2(rate);
    return ts.integrate([&](double z) { return cdf_l(k * (1 + z) - 1) * pdf_e(z); }, lo, hi, 1e-12);
}

ch::ThzChannelState thz(double gamma_max, double xi2, double a0) {
    ch::PointingParams p;
    p.xi2 = xi2;
    p.A0 = a0;
    return ch::ThzChannelState::make(gamma_max / (a0 * a0), p);
}

} // namespace

TEST(SecrecyCapacity, Basics) {
    EXPECT_DOUBLE_EQ(sec::secrecy_capacity(5.0, 5.0), 0.0);
    EXPECT_DOUBLE_EQ(sec::secrecy_capacity(3.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(sec::secrecy_capacity(1.0, 3.0), 0.0);
}

TEST(Composition, FirstHopE2eTotal) {
    EXPECT_DOUBLE_EQ(sec::sop_first_hop(1.0, 0.3), 0.3);
    EXPECT_DOUBLE_EQ(sec::sop_first_hop(0.0, 0.3), 0.0);
    for (double a : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (double b : {0.0, 0.2, 0.7, 1.0}) {
            EXPECT_LE(sec::sop_first_hop(a, b), std::min(a, b));
        }
    }
    EXPECT_DOUBLE_EQ(sec::sop_e2e_per_hap(0.0, 0.4), 0.4);
    EXPECT_DOUBLE_EQ(sec::sop_e2e_per_hap(0.4, 0.0), 0.4);
    EXPECT_NEAR(sec::sop_e2e_per_hap(0.1, 0.2), 0.28, 1e-16);
    EXPECT_NEAR(sec::sop_total({0.1, 0.1, 0.1}), 1e-3, 1e-18);
    EXPECT_DOUBLE_EQ(sec::sop_total({0.37}), 0.37);
    const double p = 0.23;
    for (int n = 1; n <= 6; ++n) {
        EXPECT_DOUBLE_EQ(sec::sop_total(std::vector<double>(n, p)), std::pow(p, n));
    }
    EXPECT_THROW(sec::sop_total({}), haplink::ConfigError);
    EXPECT_THROW(sec::sop_first_hop(1.2, 0.1), haplink::DomainError);
}

TEST(NumericOracle, PointMassLimit) {
    // Uniform eavesdropper on a very narrow interval around 2.
    auto cdf_l = [](double x) { return -std::expm1(-x / 10.0); };
    sec::OracleProblem p;
    p.cdf_legit = cdf_l;
    const double w = 1e-7;
    p.pdf_eve = [&](double z) { return (z > 2 - w && z < 2 + w) ? 0.5 / w : 0.0; };
    p.cdf_eve = [&](double z) { return std::clamp((z - (2 - w)) / (2 * w), 0.0, 1.0); };
    p.eve_support_max = 2 + w;
    p.eve_scale = 2.0;
    p.breakpoints = {2 - w};
    auto r = sec::sop_numeric_oracle(p, 1.0);
    EXPECT_NEAR(r.value, cdf_l(2 * 3 - 1), 1e-8);
}

TEST(NumericOracle, ExponentialPair) {
    // Rayleigh legit and eavesdropper: P = 1 - exp(-t0/gL) gL / (gL + 2^R gE).
    const double gl = 40, ge = 3, rate = 1.5;
    sec::OracleProblem p;
    p.cdf_legit = [&](double x) { return -std::expm1(-x / gl); };
    p.pdf_eve = [&](double z) { return std::exp(-z / ge) / ge; };
    p.cdf_eve = [&](double z) { return -std::expm1(-z / ge); };
    p.eve_scale = ge;
    const double t0 = std::exp2(rate) - 1;
    const double expect = 1 - std::exp(-t0 / gl) * gl / (gl + std::exp2(rate) * ge);
    auto r = sec::sop_numeric_oracle(p, rate);
    EXPECT_LT(rel(r.value, expect), 1e-10);
    EXPECT_LT(r.error_estimate, 1e-8 * expect);
}

TEST(ThzSop, CaseThreeIsOne) {
    auto pl = ch::pointing_params(15.0, 0.075, 10.0);
    auto legit = ch::ThzChannelState::make(0.5 / (pl.A0 * pl.A0), pl);  // gamma_max = 0.5
    auto eve = ch::ThzChannelState::make(1e3, pl);
    EXPECT_DOUBLE_EQ(sec::sop_thz(legit, eve, 3.0).value, 1.0);
    EXPECT_NEAR(sec::sop_numeric_oracle(sec::thz_oracle_problem(legit, eve), 3.0).value, 1.0, 1e-10);
}

TEST(ThzSop, CaseOneMatchesQuadrature) {
    auto legit = thz(2000.0, 1.3, 0.5);
    auto eve = thz(900.0, 0.7, 0.4);
    const double rate = 2.0;
    const double psi1 = (legit.gamma_max + 1) / 4 - 1;
    ASSERT_GT(psi1, 0.0);
    ASSERT_LT(psi1, eve.gamma_max);
    auto cdf = [&](double x) { return x <= 0 ? 0.0 : ch::thz_snr_cdf(x, legit); };
    auto pdf = [&](double z) { return ch::thz_snr_pdf(z, eve); };
    const double expect = brute_sop(cdf, pdf, rate, 0.0, psi1) + brute_sop(cdf, pdf, rate, psi1, eve.gamma_max);
    EXPECT_LT(rel(sec::sop_thz(legit, eve, rate).value, expect), 1e-6);
    EXPECT_LT(rel(sec::sop_numeric_oracle(sec::thz_oracle_problem(legit, eve), rate).value, expect), 1e-8);
}

TEST(ThzSop, CaseTwoMatchesQuadrature) {
    auto legit = thz(5e4, 1.3, 0.5);
    auto eve = thz(50.0, 0.7, 0.4);
    const double rate = 1.0;
    ASSERT_GT((legit.gamma_max + 1) / 2 - 1, eve.gamma_max);
    auto cdf = [&](double x) { return ch::thz_snr_cdf(x, legit); };
    auto pdf = [&](double z) { return ch::thz_snr_pdf(z, eve); };
    const double expect = brute_sop(cdf, pdf, rate, 0.0, eve.gamma_max);
    EXPECT_LT(rel(sec::sop_thz(legit, eve, rate).value, expect), 1e-6);
}

TEST(ThzSop, BranchBoundaryContinuity) {
    auto eve = thz(900.0, 0.7, 0.4);
    const double rate = 2.0;
    // Choose the legit scale so that psi1 sits exactly at gamma_max of the eavesdropper.
    const double gmax_l = 4 * (eve.gamma_max + 1) - 1;
    auto at = [&](double d) {
        auto legit = thz(gmax_l + d, 1.3, 0.5);
        return sec::sop_thz(legit, eve, rate).value;
    };
    EXPECT_NEAR(at(-4e-9), at(4e-9), 1e-6);
}

TEST(ThzSop, NearIntegerHypergeometricParameters) {
    // xi_H^2/2 + xi_E^2/2 close to an integer exercises the 2F1 fallback path.
    ch::PointingParams p;
    p.A0 = 0.4;
    p.xi2 = 1.0;
    auto legit = ch::ThzChannelState::make(1e7, p);
    p.xi2 = 1.0 + 1e-9;
    auto eve = ch::ThzChannelState::make(1e4, p);
    const double expect = sec::sop_numeric_oracle(sec::thz_oracle_problem(legit, eve), 3.0).value;
    EXPECT_LT(rel(sec::sop_thz(legit, eve, 3.0).value, expect), 1e-6);
}

TEST(KaSop, SingleTermClosedForm) {
    auto legit = ch::KaChannelState::make(1, 8.97e-4, 0.063, 200.0);
    auto eve = ch::KaChannelState::make(1, 8.97e-4, 0.063, 5.0);
    const double rate = 3.0;
    const double t0 = 7.0;
    const double expect = 1 - std::exp(-t0 / 200.0) * 200.0 / (200.0 + 8 * 5.0);
    EXPECT_LT(rel(sec::sop_ka(legit, eve, rate).value, expect), 1e-12);
    EXPECT_LT(rel(sec::sop_ka_expanded(legit, eve, rate), expect), 1e-10);
    EXPECT_LT(rel(sec::sop_numeric_oracle(sec::ka_oracle_problem(legit, eve), rate).value, expect), 1e-8);
}

TEST(KaSop, ShadowingTriplesMatchQuadrature) {
    struct T {
        int m;
        double omega, b;
    };
    for (T u : {T{19, 1.29, 0.158}, T{10, 0.835, 0.126}, T{1, 8.97e-4, 0.063}}) {
        for (T e : {T{19, 1.29, 0.158}, T{1, 8.97e-4, 0.063}}) {
            for (double ratio : {3.0, 100.0, 1e4}) {
                auto legit = ch::KaChannelState::make(u.m, u.omega, u.b, 2.0 * ratio);
                auto eve = ch::KaChannelState::make(e.m, e.omega, e.b, 2.0);
                auto cdf = [&](double x) { return ch::ka_snr_cdf(x, legit); };
                auto pdf = [&](double z) { return ch::ka_snr_pdf(z, eve); };
                const double expect = brute_sop(cdf, pdf, 3.0, 0.0, 2.0) + brute_sop(cdf, pdf, 3.0, 2.0, 400.0);
                const double got = sec::sop_ka(legit, eve, 3.0).value;
                EXPECT_LT(rel(got, expect), 1e-6) << u.m << " " << e.m << " " << ratio;
                EXPECT_LT(rel(sec::sop_numeric_oracle(sec::ka_oracle_problem(legit, eve), 3.0).value, expect),
                          1e-7);
            }
        }
    }
}

TEST(KaSop, ExpandedFormAgreesWhereStable) {
    auto legit = ch::KaChannelState::make(10, 0.835, 0.126, 80.0);
    auto eve = ch::KaChannelState::make(19, 1.29, 0.158, 10.0);
    EXPECT_LT(rel(sec::sop_ka_expanded(legit, eve, 3.0), sec::sop_ka(legit, eve, 3.0).value), 1e-8);
}

TEST(KaSop, WeakEavesdropperTail) {
    // Expanded sum cancels here; the shifted form keeps full relative accuracy.
    auto legit = ch::KaChannelState::make(19, 1.29, 0.158, db(75));
    auto eve = ch::KaChannelState::make(19, 1.29, 0.158, db(10));
    auto cdf = [&](double x) { return ch::ka_snr_cdf(x, legit); };
    auto pdf = [&](double z) { return ch::ka_snr_pdf(z, eve); };
    boost::math::quadrature::exp_sinh<double> es;
    const double expect = es.integrate([&](double z) { return cdf(8 * (1 + z) - 1) * pdf(z); }, 1e-14);
    const double got = sec::sop_ka(legit, eve, 3.0).value;
    ASSERT_LT(expect, 1e-6);
    EXPECT_LT(rel(got, expect), 1e-6);
}

TEST(KaSop, DegenerateEavesdropper) {
    auto legit = ch::KaChannelState::make(19, 1.29, 0.158, 30.0);
    auto eve = ch::KaChannelState::make(19, 1.29, 0.158, 1e-9);
    EXPECT_NEAR(sec::sop_ka(legit, eve, 3.0).value, ch::ka_snr_cdf(7.0, legit), 1e-8);
}

TEST(FsoSop, DefaultScenarioMatchesOracle) {
    auto p = default_fso_pair(150, 130);
    auto closed = sec::sop_fso(p.legit, p.eve, 3.0);
    auto oracle = sec::sop_numeric_oracle(sec::fso_oracle_problem(p.legit, p.eve), 3.0);
    EXPECT_EQ(closed.method, sec::Method::closed_form);
    EXPECT_FALSE(closed.fallback);
    EXPECT_GT(oracle.value, 1e-10);
    EXPECT_LT(rel(closed.value, oracle.value), 1e-4) << closed.value << " vs " << oracle.value;
}

TEST(FsoSop, StrongTurbulenceBothDetectionModes) {
    for (int r : {1, 2}) {
        for (double ratio : {2.0, 30.0, 1e3}) {
            auto p = strong_fso(r, 5.0 * ratio, 5.0);
            auto closed = sec::sop_fso(p.legit, p.eve, 1.0);
            auto oracle = sec::sop_numeric_oracle(sec::fso_oracle_problem(p.legit, p.eve), 1.0);
            EXPECT_FALSE(closed.fallback) << closed.note;
            EXPECT_LT(rel(closed.value, oracle.value), 1e-4) << "r " << r << " ratio " << ratio;
        }
    }
}

TEST(FsoSop, DegenerateEavesdropper) {
    auto p = strong_fso(1, 100.0, 1e-10);
    EXPECT_NEAR(sec::sop_fso(p.legit, p.eve, 2.0).value, ch::fso_snr_cdf(3.0, p.legit), 1e-6);
}

TEST(FsoSop, FallbackTagsResult) {
    auto p = strong_fso(1, 100.0, 5.0);
    sec::FsoSopOptions o;
    o.c_s = -5.0;  // left of the s-kernel poles
    auto v = sec::sop_fso(p.legit, p.eve, 1.0, o);
    EXPECT_TRUE(v.fallback);
    EXPECT_EQ(v.method, sec::Method::numeric_oracle);
    o.allow_fallback = false;
    EXPECT_THROW(sec::sop_fso(p.legit, p.eve, 1.0, o), haplink::SpecError);
}

TEST(SopProperties, MonotoneInSnrAndRate) {
    double prev_fso = 2, prev_thz = 2, prev_ka = 2;
    for (double up : {10.0, 20.0, 30.0, 40.0, 50.0}) {
        auto f = strong_fso(2, db(up), 5.0);
        const double pf = sec::sop_fso(f.legit, f.eve, 1.0).value;
        const double pt =
            sec::sop_thz(thz(db(up), 1.3, 0.5), thz(30.0, 0.7, 0.4), 1.0).value;
        const double pk = sec::sop_ka(ch::KaChannelState::make(10, 0.835, 0.126, db(up)),
                                      ch::KaChannelState::make(10, 0.835, 0.126, 5.0), 1.0)
                              .value;
        EXPECT_LE(pf, prev_fso + 1e-9);
        EXPECT_LE(pt, prev_thz + 1e-12);
        EXPECT_LE(pk, prev_ka + 1e-12);
        prev_fso = pf;
        prev_thz = pt;
        prev_ka = pk;
    }
    double prev = -1;
    for (double ue : {0.0, 5.0, 10.0, 15.0, 20.0}) {
        const double pk = sec::sop_ka(ch::KaChannelState::make(10, 0.835, 0.126, 1e3),
                                      ch::KaChannelState::make(10, 0.835, 0.126, db(ue)), 1.0)
                              .value;
        EXPECT_GE(pk, prev - 1e-12);
        prev = pk;
    }
    prev = -1;
    for (double rate : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        auto f = strong_fso(1, 300.0, 5.0);
        const double pf = sec::sop_fso(f.legit, f.eve, rate).value;
        EXPECT_GE(pf, prev - 1e-9);
        prev = pf;
    }
}

TEST(Analyze, ComposesPerHapAndTotal) {
    auto f = strong_fso(1, 300.0, 5.0);
    sec::HapLinks h{f.legit,
                    f.eve,
                    thz(2000.0, 1.3, 0.5),
                    thz(900.0, 0.7, 0.4),
                    ch::KaChannelState::make(10, 0.835, 0.126, 300.0),
                    ch::KaChannelState::make(10, 0.835, 0.126, 5.0)};
    auto b = sec::analyze({h, h}, 1.0);
    ASSERT_EQ(b.haps.size(), 2u);
    const auto& x = b.haps[0];
    EXPECT_DOUBLE_EQ(x.p_first_hop, x.fso.value * x.thz.value);
    EXPECT_DOUBLE_EQ(x.p_e2e, x.p_first_hop + x.ka.value - x.p_first_hop * x.ka.value);
    EXPECT_DOUBLE_EQ(b.p_total, x.p_e2e * x.p_e2e);
}
