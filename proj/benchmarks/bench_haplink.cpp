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


#include <benchmark/benchmark.h>

#include "haplink/montecarlo.hpp"
#include "haplink/secrecy.hpp"
#include "haplink/specfun.hpp"
#include "haplink/sweep.hpp"

namespace {

namespace mc = haplink::montecarlo;
namespace rn = haplink::runner;
namespace sec = haplink::secrecy;

const rn::Scenario& default_scenario() {
    static const rn::Scenario s = rn::build_scenario(rn::ScenarioConfig{});
    return s;
}

void BM_SopFso(benchmark::State& st) {
    auto l = default_scenario().links[0];
    l.fso_legit.r = l.fso_eve.r = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sec::sop_fso(l.fso_legit, l.fso_eve, 3.0).value);
}
BENCHMARK(BM_SopFso)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SopThz(benchmark::State& st) {
    const auto& l = default_scenario().links[0];
    for (auto _ : st) benchmark::DoNotOptimize(sec::sop_thz(l.thz_legit, l.thz_eve, 3.0).value);
}
BENCHMARK(BM_SopThz);

void BM_SopKa(benchmark::State& st) {
    const auto& l = default_scenario().links[0];
    for (auto _ : st) benchmark::DoNotOptimize(sec::sop_ka(l.ka_legit, l.ka_eve, 3.0).value);
}
BENCHMARK(BM_SopKa);

void BM_FsoOracle(benchmark::State& st) {
    const auto& l = default_scenario().links[0];
    const auto prob = sec::fso_oracle_problem(l.fso_legit, l.fso_eve);
    for (auto _ : st) benchmark::DoNotOptimize(sec::sop_numeric_oracle(prob, 3.0).value);
}
BENCHMARK(BM_FsoOracle)->Unit(benchmark::kMillisecond);

void BM_MeijerG(benchmark::State& st) {
    haplink::specfun::MeijerGSpec g;
    g.a = {1.5625};
    g.b = {0.5625, 3.2, 4.7};
    g.m = 3;
    g.n = 0;
    for (auto _ : st) benchmark::DoNotOptimize(haplink::specfun::meijer_g(g, 0.8));
}
BENCHMARK(BM_MeijerG);

void BM_SampleFso(benchmark::State& st) {
    mc::RngStream rng(1, 0);
    const auto& s = default_scenario().links[0].fso_legit;
    for (auto _ : st) benchmark::DoNotOptimize(mc::sample_fso_snr(rng, s));
}
BENCHMARK(BM_SampleFso);

void BM_SampleKa(benchmark::State& st) {
    mc::RngStream rng(1, 0);
    const auto& s = default_scenario().links[0].ka_legit;
    for (auto _ : st) benchmark::DoNotOptimize(mc::sample_ka_snr(rng, s));
}
BENCHMARK(BM_SampleKa);

void BM_SimulateScheme(benchmark::State& st) {
    const std::vector<sec::HapLinks> haps(static_cast<std::size_t>(st.range(0)), default_scenario().links[0]);
    for (auto _ : st) benchmark::DoNotOptimize(mc::simulate_scheme(haps, 3.0, 1 << 17, 1, 1).total.p);
    st.SetItemsProcessed(st.iterations() * (1 << 17));
}
BENCHMARK(BM_SimulateScheme)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
