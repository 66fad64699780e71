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

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "haplink/errors.hpp"
#include "haplink/specfun.hpp"

namespace haplink::specfun {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Nodes are dropped once the integrand falls this far (in log) below its peak.
constexpr double kTailLog = 40.0;

// Gamma(shift + slope * s)^power with slope, power in {-1, +1}.
struct GammaTerm {
    double shift;
    int slope;
    int power;
};

double lattice_distance(double c, double first, int direction) {
    // Poles at first + direction * k for k = 0, 1, ...
    double u = (c - first) * direction;
    if (u <= 0.0) return -u;
    return std::abs(u - std::round(u));
}

struct Kernel {
    std::vector<GammaTerm> terms;

    cplx log_eval(cplx s) const {
        cplx acc = 0.0;
        for (const auto& t : terms) acc += static_cast<double>(t.power) * ln_gamma(t.shift + static_cast<double>(t.slope) * s);
        return acc;
    }

    // log|K(c)| restricted to the numerator terms and well-behaved denominators;
    // only used to steer the contour.
    double log_eval_real(double c) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double arg = t.shift + t.slope * c;
            if (t.power > 0) {
                if (arg <= 0.0) return kInf;
                acc += std::lgamma(arg);
            } else if (arg > 0.5) {
                acc -= std::lgamma(arg);
            }
        }
        return acc;
    }

    double left_bound() const {
        double l = -kInf;
        for (const auto& t : terms)
            if (t.power > 0 && t.slope > 0) l = std::max(l, -t.shift);
        return l;
    }

    double right_bound() const {
        double r = kInf;
        for (const auto& t : terms)
            if (t.power > 0 && t.slope < 0) r = std::min(r, t.shift);
        return r;
    }

    double pole_distance(double c) const {
        double d = kInf;
        for (const auto& t : terms) {
            if (t.power < 0) continue;
            d = std::min(d, t.slope > 0 ? lattice_distance(c, -t.shift, -1) : lattice_distance(c, t.shift, +1));
        }
        return d;
    }

    // Exponential decay rate along vertical lines in units of pi/2.
    int decay() const {
        int k = 0;
        for (const auto& t : terms) k += t.power;
        return k;
    }
};

Kernel meijer_kernel(const MeijerGSpec& spec) {
    Kernel k;
    for (std::size_t j = 0; j < spec.q(); ++j) {
        if (j < spec.m)
            k.terms.push_back({spec.b[j], +1, +1});
        else
            k.terms.push_back({1.0 - spec.b[j], -1, -1});
    }
    for (std::size_t i = 0; i < spec.p(); ++i) {
        if (i < spec.n)
            k.terms.push_back({1.0 - spec.a[i], -1, +1});
        else
            k.terms.push_back({spec.a[i], +1, -1});
    }
    return k;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct LineResult {
    double value = 0.0;
    double error = 0.0;
    double imag = 0.0;
    ContourSpec contour;
};

// Samples of log(integrand) on t = k h, k = -n..n, truncated where the
// magnitude has dropped kTailLog below the running peak.
std::vector<cplx> sample_line(const Kernel& kernel, double log_x, double c, double h, std::size_t max_nodes,
                              std::size_t& half) {
    std::vector<cplx> pos, neg;
    auto f = [&](double t) {
        cplx s(c, t);
        return kernel.log_eval(s) - s * log_x;
    };
    cplx f0 = f(0.0);
    double peak = f0.real();
    int quiet = 0;
    std::size_t k = 1;
    for (;; ++k) {
        if (2 * k + 1 > max_nodes)
            throw NumericError("contour truncation exceeded " + std::to_string(max_nodes) + " nodes at c=" +
                               fmt_double(c) + ", h=" + fmt_double(h));
        cplx fp = f(k * h), fn = f(-(k * h));
        pos.push_back(fp);
        neg.push_back(fn);
        double hi = std::max(fp.real(), fn.real());
        peak = std::max(peak, hi);
        if (hi < peak - kTailLog) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    half = k;
    std::vector<cplx> out;
    out.reserve(2 * k + 1);
    for (std::size_t i = neg.size(); i-- > 0;) out.push_back(neg[i]);
    out.push_back(f0);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

// (2 pi i)^-1 ∫ K(s) x^-s ds along Re s = c, times exp(log_scale).
LineResult line_integral(const Kernel& kernel, double log_x, double c, double rel_tol, std::size_t max_nodes,
                         int refine, double log_scale) {
    const double d = kernel.pole_distance(c);
    if (!(d > 1e-10)) throw SpecError("contour at c=" + fmt_double(c) + " passes through a pole");
    if (kernel.decay() <= 0)
        throw NumericError("Gamma product does not decay along the contour (tail non-decay)");

    // Curvature of log|integrand| across the line sets the resolution scale.
    const double eps = 0.01 * std::min(d, 1.0);
    const cplx s0(c, 0.0), s1(c, eps);
    double curv = 2.0 * ((kernel.log_eval(s0) - s0 * log_x).real() - (kernel.log_eval(s1) - s1 * log_x).real()) /
                  (eps * eps);
    double h = 2.0 * kPi * d / (kTailLog + d * std::abs(log_x));
    if (curv > 0.0) h = std::min(h, 0.5 / std::sqrt(curv));
    h = std::min(h, 0.5) / std::max(refine, 1);

    LineResult out;
    for (int attempt = 0; attempt < 4; ++attempt, h *= 0.5) {
        const double hf = 0.5 * h;
        std::size_t half = 0;
        std::vector<cplx> logs = sample_line(kernel, log_x, c, hf, max_nodes, half);
        double peak = -kInf;
        for (const auto& l : logs) peak = std::max(peak, l.real());
        cplx fine = 0.0, coarse = 0.0;
        double absolute = 0.0;
        for (std::size_t i = 0; i < logs.size(); ++i) {
            cplx v = std::exp(logs[i] - peak);
            fine += v;
            absolute += std::abs(v);
            // Index half corresponds to t = 0; even offsets form the coarse grid.
            if (((i + half) % 2) == 0) coarse += v;
        }
        const double scale = std::exp(peak + log_scale) / (2.0 * kPi);
        out.value = hf * fine.real() * scale;
        out.imag = hf * fine.imag() * scale;
        const double coarse_value = h * coarse.real() * scale;
        const double floor = 64.0 * kEps * hf * absolute * scale;
        const double diff = std::abs(out.value - coarse_value);
        out.error = std::max(diff, floor);
        out.contour = {c, half * hf, logs.size()};
        if (diff <= std::max(rel_tol * std::abs(out.value), floor)) break;
    }
    return out;
}

double place_contour(const Kernel& kernel, double log_x) {
    const double lo = kernel.left_bound(), hi = kernel.right_bound();
    auto phi = [&](double c) { return kernel.log_eval_real(c) - c * log_x; };
    double a, b;
    if (std::isfinite(lo) && std::isfinite(hi)) {
        const double gap = hi - lo;
        a = lo + 1e-9 * std::max(gap, 1.0);
        b = hi - 1e-9 * std::max(gap, 1.0);
    } else if (std::isfinite(lo)) {
        a = lo + 1e-9;
        b = lo + 1.0;
        while (phi(b + 1.0) < phi(b) && b < lo + 1e6) b = lo + 2.0 * (b - lo);
        b += 1.0;
    } else if (std::isfinite(hi)) {
        b = hi - 1e-9;
        a = hi - 1.0;
        while (phi(a - 1.0) < phi(a) && a > hi - 1e6) a = hi - 2.0 * (hi - a);
        a -= 1.0;
    } else {
        return 0.0;
    }
    auto best = boost::math::tools::brent_find_minima(phi, a, b, 40);
    double c = best.first;
    const double margin = std::min(0.5, 0.25 * (hi - lo));
    if (std::isfinite(lo)) c = std::max(c, lo + margin);
    if (std::isfinite(hi)) c = std::min(c, hi - margin);
    return c;
}

} // namespace

void MeijerGSpec::validate() const {
    if (m > q() || n > p())
        throw SpecError("Meijer-G orders require m <= q and n <= p (m=" + std::to_string(m) +
                        ", n=" + std::to_string(n) + ", p=" + std::to_string(p()) + ", q=" + std::to_string(q()) + ")");
    for (double v : a)
        if (!std::isfinite(v)) throw SpecError("non-finite Meijer-G parameter");
    for (double v : b)
        if (!std::isfinite(v)) throw SpecError("non-finite Meijer-G parameter");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double diff = a[i] - b[j];
            if (diff >= 1.0 && std::abs(diff - std::round(diff)) < 1e-12)
                throw SpecError("poles of Gamma(b_" + std::to_string(j + 1) + " + s) and Gamma(1 - a_" +
                                std::to_string(i + 1) + " - s) coincide");
        }
    }
}

MeijerGResult meijer_g_eval(const MeijerGSpec& spec, double x, const MeijerGOptions& opts) {
    if (!(x > 0.0)) throw DomainError("meijer_g requires x > 0");
    spec.validate();
    Kernel kernel = meijer_kernel(spec);
    const double lo = kernel.left_bound(), hi = kernel.right_bound();
    if (!(lo < hi))
        throw SpecError("contour placement impossible: left poles reach " + fmt_double(lo) +
                        ", right poles start at " + fmt_double(hi));
    const double log_x = std::log(x);
    double c = std::isfinite(opts.abscissa) ? opts.abscissa : place_contour(kernel, log_x);
    if (!(c > lo && c < hi)) throw SpecError("abscissa " + fmt_double(c) + " does not separate the pole families");
    LineResult line = line_integral(kernel, log_x, c, opts.rel_tol, opts.max_nodes, opts.refine, opts.log_scale);
    return {line.value, line.error, line.imag, line.contour};
}

double meijer_g(const MeijerGSpec& spec, double x) { return meijer_g_eval(spec, x).value; }

BivariateResult meijer_g_bivariate(const BivariateSpec& spec, double x, double y, const BivariateOptions& opts) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("meijer_g_bivariate requires x, y > 0");
    spec.s_kernel.validate();
    spec.v_kernel.validate();
    const Kernel ks = meijer_kernel(spec.s_kernel);
    const Kernel kv = meijer_kernel(spec.v_kernel);
    Kernel kj;
    for (double a : spec.joint_num) kj.terms.push_back({a, +1, +1});
    for (double a : spec.joint_den) kj.terms.push_back({a, +1, -1});

    const double cs = opts.c_s, cv = opts.c_v, cw = cs + cv;
    if (!(cs > ks.left_bound() && cs < ks.right_bound()))
        throw SpecError("c_s=" + fmt_double(cs) + " does not separate the s-kernel poles");
    if (!(cv > kv.left_bound())) throw SpecError("c_v=" + fmt_double(cv) + " lies left of v-kernel left poles");
    if (!(cw > kj.left_bound())) throw SpecError("c_s + c_v=" + fmt_double(cw) + " lies left of joint poles");
    const double ds = ks.pole_distance(cs), dv = kv.pole_distance(cv), dj = kj.pole_distance(cw);
    if (!(ds > 1e-10) || !(dv > 1e-10) || !(dj > 1e-10))
        throw SpecError("pole collision on contour (c_s=" + fmt_double(cs) + ", c_v=" + fmt_double(cv) + ")");
    if (ks.decay() + std::min(kj.decay(), 0) <= 0 || kv.decay() + std::min(kj.decay(), 0) <= 0)
        throw NumericError("bivariate integrand does not decay (tail non-decay)");

    const double log_x = std::log(x), log_y = std::log(y);
    const double d = std::min({ds, dv, dj});
    double h = 2.0 * kPi * d / (kTailLog + d * std::max(std::abs(log_x), std::abs(log_y)));
    h = std::min(h, 0.5) / std::max(opts.refine, 1);

    BivariateResult out;
    double line_value = 0.0, line_error = 0.0;
    for (int attempt = 0; attempt < 3; ++attempt, h *= 0.5) {
        const double hf = 0.5 * h;
        std::size_t ns = 0, nv = 0;
        const std::size_t cap = 2 * opts.max_nodes_per_axis + 1;
        std::vector<cplx> la = sample_line(ks, log_x, cs, hf, cap, ns);
        std::vector<cplx> lb = sample_line(kv, log_y, cv, hf, cap, nv);
        const long nj = static_cast<long>(ns + nv);
        std::vector<cplx> lj(2 * nj + 1);
        for (long m = -nj; m <= nj; ++m) lj[m + nj] = kj.log_eval(cplx(cw, m * hf));

        auto peak_of = [](const std::vector<cplx>& v) {
            double p = -kInf;
            for (const auto& l : v) p = std::max(p, l.real());
            return p;
        };
        const double pa = peak_of(la), pb = peak_of(lb), pj = kj.terms.empty() ? 0.0 : peak_of(lj);
        std::vector<cplx> A(la.size()), B(lb.size()), J(lj.size());
        for (std::size_t i = 0; i < la.size(); ++i) A[i] = std::exp(la[i] - pa);
        for (std::size_t i = 0; i < lb.size(); ++i) B[i] = std::exp(lb[i] - pb);
        for (std::size_t i = 0; i < lj.size(); ++i) J[i] = kj.terms.empty() ? cplx(1.0) : std::exp(lj[i] - pj);

        cplx fine = 0.0, coarse = 0.0;
        double absolute = 0.0;
        for (std::size_t i = 0; i < A.size(); ++i) {
            const long ti = static_cast<long>(i) - static_cast<long>(ns);
            cplx row = 0.0, row_coarse = 0.0;
            double row_abs = 0.0;
            for (std::size_t j = 0; j < B.size(); ++j) {
                const long tj = static_cast<long>(j) - static_cast<long>(nv);
                cplx v = B[j] * J[ti + tj + nj];
                row += v;
                row_abs += std::abs(v);
                if ((tj & 1) == 0) row_coarse += v;
            }
            fine += A[i] * row;
            absolute += std::abs(A[i]) * row_abs;
            if ((ti & 1) == 0) coarse += A[i] * row_coarse;
        }
        const double scale = std::exp(pa + pb + pj + opts.log_scale) / (4.0 * kPi * kPi);
        line_value = hf * hf * fine.real() * scale;
        const double coarse_value = h * h * coarse.real() * scale;
        const double floor = 64.0 * kEps * hf * hf * absolute * scale;
        const double diff = std::abs(line_value - coarse_value);
        line_error = std::max(diff, floor);
        out.s_contour = {cs, ns * hf, la.size()};
        out.v_contour = {cv, nv * hf, lb.size()};
        if (diff <= std::max(opts.rel_tol * std::abs(line_value), floor)) break;
    }

    // Residues of right-family poles of the v-kernel that the straight line
    // has left on its wrong side.
    double correction = 0.0, correction_error = 0.0;
    for (std::size_t ti = 0; ti < kv.terms.size(); ++ti) {
        const auto& term = kv.terms[ti];
        if (term.power < 0 || term.slope > 0) continue;
        for (int k = 0; term.shift + k < cv; ++k) {
            const double vk = term.shift + k;
            // Residue of Gamma(shift - v) at v = shift + k is -(-1)^k / k!.
            double log_coef = -std::lgamma(k + 1.0);
            int sign = (k % 2 == 0) ? -1 : 1;
            bool vanishes = false;
            for (std::size_t oi = 0; oi < kv.terms.size(); ++oi) {
                if (oi == ti) continue;
                const auto& o = kv.terms[oi];
                const double arg = o.shift + o.slope * vk;
                if (arg < 0.5 && std::abs(arg - std::round(arg)) < 1e-12) {
                    if (o.power > 0) throw SpecError("double pole of the v-kernel at v=" + fmt_double(vk));
                    vanishes = true;
                    break;
                }
                int sg = 1;
                const double lg = boost::math::lgamma(arg, &sg);
                log_coef += o.power * lg;
                sign *= sg;
            }
            ++out.residues;
            if (vanishes) continue;
            log_coef -= vk * log_y;

            Kernel kr = ks;
            for (const auto& t : kj.terms) kr.terms.push_back({t.shift + vk, +1, t.power});
            LineResult r = line_integral(kr, log_x, cs, opts.rel_tol, 2 * opts.max_nodes_per_axis + 1, opts.refine,
                                         opts.log_scale + log_coef);
            correction += sign * r.value;
            correction_error += r.error;
        }
    }

    out.line_value = line_value;
    out.residue_correction = correction;
    out.value = line_value - correction;
    out.error_estimate = line_error + correction_error;
    return out;
}

} // namespace haplink::specfun
