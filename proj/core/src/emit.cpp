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


#include "haplink/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "haplink/errors.hpp"

namespace haplink::runner {

namespace {

std::string g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const std::vector<std::string>& xs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::size_t hap_count(const SweepResult& r) {
    std::size_t n = 0;
    for (const auto& row : r.rows) n = std::max(n, row.haps.size());
    return n;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string csv_text(const SweepResult& r, bool per_hap) {
    const std::size_t nh = per_hap ? hap_count(r) : 0;
    std::string out = "axis_value,p_fso,p_thz,p_first_hop,p_ka,p_e2e_best,p_total_analytic,p_total_mc,mc_ci95";
    for (std::size_t n = 1; n <= nh; ++n) {
        const auto p = "hap" + std::to_string(n) + "_";
        for (const char* k : {"p_fso", "p_thz", "p_first_hop", "p_ka", "p_e2e"}) out += "," + p + k;
    }
    out += ",flags\n";

    for (const auto& row : r.rows) {
        std::vector<std::string> f;
        f.push_back(g10(row.axis_value));
        const bool have_haps = !row.failed && row.best < row.haps.size();
        if (have_haps) {
            const auto& b = row.haps[row.best];
            for (double v : {b.p_fso, b.p_thz, b.p_first_hop, b.p_ka, b.p_e2e}) f.push_back(g10(v));
        } else {
            f.insert(f.end(), 5, "");
        }
        f.push_back(row.has_analytic && !row.failed ? g10(row.p_total_analytic) : "");
        if (row.mc && !row.mc->starved && !row.failed) {
            f.push_back(g10(row.mc->p));
            f.push_back(g10(row.mc->ci95));
        } else {
            f.insert(f.end(), 2, "");
        }
        for (std::size_t n = 0; n < nh; ++n) {
            if (!row.failed && n < row.haps.size()) {
                const auto& h = row.haps[n];
                for (double v : {h.p_fso, h.p_thz, h.p_first_hop, h.p_ka, h.p_e2e}) f.push_back(g10(v));
            } else {
                f.insert(f.end(), 5, "");
            }
        }
        f.push_back(join(row.flags, ';'));
        out += join(f, ',') + "\n";
    }
    return out;
}

void write_csv(const SweepResult& r, const std::string& path, bool per_hap) {
    write_file(path, csv_text(r, per_hap));
}

std::string svg_text(const std::vector<SweepResult>& series, const std::string& title) {
    constexpr double W = 760, H = 520, L = 80, R = 200, T = 40, B = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                   "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 1.0;
    auto see_y = [&](double y) {
        if (y > 0 && std::isfinite(y)) ymin = std::min(ymin, y);
    };
    for (const auto& s : series) {
        for (const auto& row : s.rows) {
            if (row.failed) continue;
            xmin = std::min(xmin, row.axis_value);
            xmax = std::max(xmax, row.axis_value);
            if (row.has_analytic) see_y(row.p_total_analytic);
            if (row.mc && !row.mc->starved) see_y(row.mc->ci_lo > 0 ? row.mc->ci_lo : row.mc->p);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
    }
    if (xmax == xmin) {
        xmin -= 1;
        xmax += 1;
    }
    const double dlo = std::floor(std::log10(ymin));
    const double dhi = 0.0;
    const double dspan = std::max(dhi - dlo, 1.0);

    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) {
        const double d = std::log10(std::max(y, std::pow(10.0, dlo)));
        return T + (dhi - d) / dspan * (H - T - B);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << (W - L - R) << "\" height=\"" << (H - T - B)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int step = dspan > 12 ? static_cast<int>(std::ceil(dspan / 12)) : 1;
    for (int d = static_cast<int>(dlo); d <= 0; d += step) {
        const double y = py(std::pow(10.0, d));
        o << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << (W - R) << "\" y2=\"" << y
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << (L - 6) << "\" y=\"" << (y + 4) << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double x = xmin + (xmax - xmin) * i / 5.0;
        o << "<text x=\"" << px(x) << "\" y=\"" << (H - B + 18) << "\" text-anchor=\"middle\">" << g10(x)
          << "</text>\n";
    }
    const std::string axis = series.empty() ? std::string() : series.front().axis;
    o << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"" << (H - 18) << "\" text-anchor=\"middle\">"
      << xml_escape(axis) << "</text>\n";
    o << "<text transform=\"translate(22," << (T + (H - T - B) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">SOP</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* col = colors[k % std::size(colors)];
        bool any_analytic = false;
        std::ostringstream pts;
        for (const auto& row : s.rows) {
            if (row.failed || !row.has_analytic || !(row.p_total_analytic > 0)) continue;
            pts << px(row.axis_value) << "," << py(row.p_total_analytic) << " ";
            any_analytic = true;
        }
        if (any_analytic) {
            o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"" << pts.str()
              << "\"/>\n";
        }
        for (const auto& row : s.rows) {
            if (row.failed || !row.mc || row.mc->starved) continue;
            const double x = px(row.axis_value);
            o << "<line x1=\"" << x << "\" y1=\"" << py(row.mc->ci_lo) << "\" x2=\"" << x << "\" y2=\""
              << py(row.mc->ci_hi) << "\" stroke=\"" << col << "\"/>\n";
            o << "<circle cx=\"" << x << "\" cy=\"" << py(row.mc->p) << "\" r=\"3\" fill=\"none\" stroke=\""
              << col << "\"/>\n";
        }
        const double ly = T + 10 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << (W - R + 12) << "\" y1=\"" << ly << "\" x2=\"" << (W - R + 36) << "\" y2=\"" << ly
          << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << (W - R + 42) << "\" y=\"" << (ly + 4) << "\">" << xml_escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const std::vector<SweepResult>& series, const std::string& title, const std::string& path) {
    write_file(path, svg_text(series, title));
}

} // namespace haplink::runner
