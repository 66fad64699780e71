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


#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "haplink/config.hpp"
#include "haplink/emit.hpp"
#include "haplink/errors.hpp"
#include "haplink/sweep.hpp"

namespace fs = std::filesystem;
namespace rn = haplink::runner;

namespace {

struct RunArgs {
    std::string config;
    std::optional<std::string> mode;
    std::optional<std::string> sweep;
    std::optional<long long> mc_samples;
    std::optional<unsigned long long> seed;
    std::optional<int> workers;
    std::string out = ".";
    std::string preset;
    bool per_hap = false;
    bool shared_turbulence = false;
    bool quiet = false;
};

int run(const RunArgs& a) {
    rn::ScenarioConfig cfg = a.config.empty() ? rn::ScenarioConfig{} : rn::load_config(a.config);
    if (a.mode) cfg.mode = *a.mode;
    if (a.sweep) cfg.sweep = *a.sweep;
    if (a.mc_samples) cfg.mc_samples = *a.mc_samples;
    if (a.seed) cfg.seed = *a.seed;
    if (a.workers) cfg.workers = *a.workers;
    if (a.shared_turbulence) cfg.shared_turbulence = true;
    rn::validate(cfg);

    std::string name;
    std::vector<rn::Series> series;
    if (!a.preset.empty()) {
        name = a.preset;
        series = rn::preset_series(a.preset, cfg);
    } else {
        name = a.config.empty() ? "haplink" : fs::path(a.config).stem().string();
        series = rn::config_series(cfg, name);
    }

    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec) throw haplink::IoError("cannot create output directory '" + a.out + "': " + ec.message());

    std::vector<rn::SweepResult> results;
    std::size_t rows = 0, failed = 0;
    for (const auto& s : series) {
        auto r = rn::run_sweep(s.config, s.variant);
        r.label = s.label;
        const std::string file = a.preset.empty() || s.label == name ? s.label : name + "_" + s.label;
        const auto path = (fs::path(a.out) / (file + ".csv")).string();
        rn::write_csv(r, path, a.per_hap);
        for (const auto& row : r.rows) {
            ++rows;
            if (row.failed) {
                ++failed;
                if (!a.quiet) std::cerr << s.label << " @ " << row.axis_value << ": " << row.flags.back() << "\n";
            }
        }
        if (!a.quiet) std::cout << path << " (" << r.rows.size() << " rows)\n";
        results.push_back(std::move(r));
    }
    const auto svg = (fs::path(a.out) / (name + ".svg")).string();
    rn::write_svg(results, name, svg);
    if (!a.quiet) std::cout << svg << "\n";

    if (rows > 0 && failed == rows) {
        std::cerr << "error: every sweep point failed\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage analysis for hybrid FSO/THz HAP downlinks"};
    app.require_subcommand(1);

    RunArgs a;
    auto* run_cmd = app.add_subcommand("run", "Run a sweep and write CSV/SVG outputs");
    run_cmd->add_option("--config", a.config, "TOML scenario file (defaults when omitted)")->check(CLI::ExistingFile);
    run_cmd->add_option("--mode", a.mode, "analytic | mc | both");
    run_cmd->add_option("--sweep", a.sweep, "axis=start:stop:step");
    run_cmd->add_option("--mc-samples", a.mc_samples, "Monte-Carlo trials per point");
    run_cmd->add_option("--seed", a.seed, "Monte-Carlo seed");
    run_cmd->add_option("--workers", a.workers, "Worker threads");
    run_cmd->add_option("--out", a.out, "Output directory")->capture_default_str();
    run_cmd->add_option("--preset", a.preset, "fig-N | fig-pointing | fig-shadowing | fig-zenith | fig-rain | fig-fog");
    run_cmd->add_flag("--per-hap", a.per_hap, "Append per-HAP column blocks to the CSV");
    run_cmd->add_flag("--shared-turbulence", a.shared_turbulence, "Eavesdropper shares the FSO turbulence draw");
    run_cmd->add_flag("-q,--quiet", a.quiet, "Only report errors");

    auto* defaults_cmd = app.add_subcommand("defaults", "Print the default scenario as TOML");
    auto* presets_cmd = app.add_subcommand("presets", "List figure presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*defaults_cmd) {
            std::cout << rn::emit_config(rn::ScenarioConfig{});
            return 0;
        }
        if (*presets_cmd) {
            for (const auto& p : rn::preset_names()) std::cout << p << "\n";
            return 0;
        }
        (void)run_cmd;
        return run(a);
    } catch (const haplink::ConfigError& e) {
        std::cerr << "config error:\n";
        for (const auto& i : e.issues()) std::cerr << "  " << i << "\n";
        return 2;
    } catch (const haplink::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
