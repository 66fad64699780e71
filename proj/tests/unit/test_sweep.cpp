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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "haplink/config.hpp"
#include "haplink/emit.hpp"
#include "haplink/errors.hpp"
#include "haplink/sweep.hpp"

namespace rn = haplink::runner;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

} // namespace

TEST(Scenario, EavesdropperScaling) {
    rn::ScenarioConfig c;
    c.upsilon_db = 150;
    c.upsilon_u_offset_db = 30;
    c.upsilon_e1_db = 130;
    c.upsilon_e2_db = 160;
    auto s = rn::build_scenario(c);
    ASSERT_EQ(s.links.size(), 1u);
    const auto& h = s.links[0];
    EXPECT_DOUBLE_EQ(h.fso_legit.rho, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(h.fso_eve.rho, 1.0 / 3.0);
    EXPECT_NEAR(h.fso_legit.avg_snr / h.fso_eve.avg_snr, db(20) * 4.0, 1e-6 * db(20) * 4.0);
    EXPECT_NEAR(h.thz_legit.gamma_max / h.thz_eve.gamma_max, db(20), 1e-9 * db(20));
    EXPECT_NEAR(h.ka_legit.avg_snr / h.ka_eve.avg_snr, db(20), 1e-9 * db(20));
    EXPECT_EQ(h.fso_legit.alpha, h.fso_eve.alpha);
    EXPECT_EQ(h.ka_legit.m, 19);
}

TEST(Scenario, PerHapAltitudes) {
    rn::ScenarioConfig c;
    c.n_haps = 2;
    c.altitudes_km = {19.0, 40.0};
    auto s = rn::build_scenario(c);
    ASSERT_EQ(s.links.size(), 2u);
    EXPECT_GT(s.links[0].fso_legit.avg_snr, s.links[1].fso_legit.avg_snr);
    EXPECT_GT(s.links[0].thz_legit.gamma_max, s.links[1].thz_legit.gamma_max);
    EXPECT_GT(s.links[0].ka_legit.avg_snr, s.links[1].ka_legit.avg_snr);
}

TEST(Scenario, FirstHopVariants) {
    EXPECT_DOUBLE_EQ(rn::first_hop_sop("hybrid", 0.5, 0.2), 0.1);
    EXPECT_DOUBLE_EQ(rn::first_hop_sop("thz-only", 0.5, 0.2), 0.2);
    EXPECT_DOUBLE_EQ(rn::first_hop_sop("fso-only", 0.5, 0.2), 0.5);
    EXPECT_THROW(rn::first_hop_sop("rf", 0.5, 0.2), haplink::ConfigError);
}

TEST(RunSweep, ProductLawInN) {
    rn::ScenarioConfig c;
    c.sweep = "n_haps=1:4:1";
    auto r = rn::run_sweep(c, "hybrid");
    ASSERT_EQ(r.rows.size(), 4u);
    const double p1 = r.rows[0].p_total_analytic;
    ASSERT_GT(p1, 0.0);
    ASSERT_LT(p1, 1.0);
    for (std::size_t i = 0; i < 4; ++i) {
        const double expect = std::pow(p1, static_cast<double>(i + 1));
        EXPECT_NEAR(r.rows[i].p_total_analytic / expect, 1.0, 1e-10);
        EXPECT_EQ(r.rows[i].axis_value, static_cast<double>(i + 1));
    }
}

TEST(RunSweep, OrderedRowsAndFlaggedFailures) {
    rn::ScenarioConfig c;
    c.sweep = "zenith_deg=80:95:5";
    c.workers = 3;
    auto r = rn::run_sweep(c, "hybrid");
    ASSERT_EQ(r.rows.size(), 4u);
    EXPECT_EQ(r.rows[0].axis_value, 80.0);
    EXPECT_FALSE(r.rows[0].failed);
    EXPECT_TRUE(r.rows[2].failed);
    EXPECT_TRUE(r.rows[3].failed);
    EXPECT_FALSE(r.rows[3].flags.empty());
    EXPECT_FALSE(r.all_failed());
}

TEST(RunSweep, ThzOnlyIsNeverBetterThanHybrid) {
    rn::ScenarioConfig c;
    c.sweep = "upsilon_db=140:160:10";
    auto h = rn::run_sweep(c, "hybrid");
    auto t = rn::run_sweep(c, "thz-only");
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        EXPECT_LE(h.rows[i].p_total_analytic, t.rows[i].p_total_analytic);
        EXPECT_EQ(h.rows[i].haps[0].p_thz, t.rows[i].haps[0].p_thz);
    }
}

TEST(RunSweep, MonteCarloColumns) {
    rn::ScenarioConfig c;
    c.mode = "both";
    c.mc_samples = 200000;
    c.n_haps = 2;
    c.sweep = "upsilon_db=140:200:60";
    auto r = rn::run_sweep(c, "hybrid");
    ASSERT_EQ(r.rows.size(), 2u);
    ASSERT_TRUE(r.rows[0].mc.has_value());
    EXPECT_FALSE(r.rows[0].mc->starved);
    EXPECT_LT(std::abs(r.rows[0].mc->p - r.rows[0].p_total_analytic), 3 * r.rows[0].mc->std_error + 1e-12);
    ASSERT_TRUE(r.rows[1].mc.has_value());
    EXPECT_TRUE(r.rows[1].mc->starved);
    EXPECT_NE(std::find(r.rows[1].flags.begin(), r.rows[1].flags.end(), "mc-starved"), r.rows[1].flags.end());
}

TEST(Emit, CsvShape) {
    rn::SweepResult r;
    r.axis = "upsilon_db";
    for (double v : {140.0, 150.0}) {
        rn::SweepRow row;
        row.axis_value = v;
        row.haps.push_back({0.1, 0.2, 0.02, 0.01, 0.0298});
        row.p_total_analytic = 0.0298;
        r.rows.push_back(row);
    }
    r.rows[1].flags = {"mc-starved"};
    const auto csv = rn::csv_text(r, false);
    auto ls = lines(csv);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[0], "axis_value,p_fso,p_thz,p_first_hop,p_ka,p_e2e_best,p_total_analytic,p_total_mc,mc_ci95,flags");
    EXPECT_EQ(count(ls[1], ","), 9u);
    EXPECT_NE(ls[2].find(",,,mc-starved"), std::string::npos) << ls[2];
}

TEST(Emit, PerHapBlocks) {
    rn::SweepResult r;
    r.axis = "upsilon_db";
    rn::SweepRow row;
    row.axis_value = 1;
    row.haps = {{0.1, 0.2, 0.02, 0.01, 0.0298}, {0.3, 0.4, 0.12, 0.01, 0.1288}};
    row.p_total_analytic = 0.0298 * 0.1288;
    r.rows.push_back(row);
    auto ls = lines(rn::csv_text(r, true));
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_NE(ls[0].find("hap2_p_e2e"), std::string::npos);
    EXPECT_EQ(count(ls[0], ","), count(ls[1], ","));
    EXPECT_EQ(count(ls[0], ","), 9u + 10u);
}

TEST(Emit, SvgOnePolylinePerSeries) {
    rn::ScenarioConfig c;
    c.sweep = "upsilon_db=140:160:10";
    std::vector<rn::SweepResult> rs{rn::run_sweep(c, "hybrid"), rn::run_sweep(c, "thz-only")};
    rs[0].label = "hybrid";
    rs[1].label = "thz-only";
    const auto svg = rn::svg_text(rs, "test");
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Emit, WriteErrorsSurface) {
    rn::SweepResult r;
    r.rows.push_back({});
    EXPECT_THROW(rn::write_csv(r, "/nonexistent-dir/x.csv", false), haplink::IoError);
    const auto p = std::filesystem::path(testing::TempDir()) / "haplink_emit.csv";
    rn::write_csv(r, p.string(), false);
    EXPECT_TRUE(std::filesystem::exists(p));
    std::filesystem::remove(p);
}

TEST(Presets, AllRunEndToEnd) {
    for (const auto& name : rn::preset_names()) {
        auto series = rn::preset_series(name, rn::ScenarioConfig{});
        ASSERT_FALSE(series.empty()) << name;
        for (auto s : series) {
            // One point per series keeps this quick; the full sweeps run in the acceptance binary.
            auto sw = rn::parse_sweep(s.config.sweep);
            sw.stop = sw.start;
            s.config.sweep = rn::format_sweep(sw);
            auto r = rn::run_sweep(s.config, s.variant);
            EXPECT_FALSE(r.all_failed()) << name << " " << s.label;
        }
    }
    EXPECT_THROW(rn::preset_series("fig-99", {}), haplink::ConfigError);
}
