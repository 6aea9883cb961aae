// Copyright 2026 The bqsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BQSP_KERNELS_HPP
#define BQSP_KERNELS_HPP

#include <limits>
#include <string>
#include <vector>

#include "bqsp/polynomial.hpp"

namespace bqsp {

inline cplx root_of_unity(int k, long long m) { return expi(2 * kPi * static_cast<double>(m % k) / k); }

/// Degree-2k kernel: 1 at omega_k^n, 0 (doubly) at every other k-th root of
/// unity.
inline Polynomial dispersive_kernel(int k, int n) {
    if (k < 1) {
        throw InputError("kernel modulus must be positive");
    }
    if (n < 0 || n >= k) {
        throw InputError("kernel index out of range");
    }
    Polynomial k0({1.0, 2.0, 1.0});
    cplx denom = 4.0;
    for (int m = 1; m < k; m++) {
        cplx w = root_of_unity(k, m);
        Polynomial lin({-w, 1.0});
        k0 = k0 * lin * lin;
        denom *= (1.0 - w) * (1.0 - w);
    }
    k0 = k0 * (1.0 / denom);
    std::vector<cplx> c = k0.coeffs();
    for (size_t m = 0; m < c.size(); m++) {
        c[m] *= root_of_unity(k, -static_cast<long long>(n) * static_cast<long long>(m) % k + k);
    }
    return Polynomial(std::move(c));
}

/// P(z) = sum_n e^{i Theta_n} K_n(z), so P(omega_k^n) = e^{i Theta_n}.
inline Polynomial modk_polynomial(const std::vector<double> &phases) {
    const int k = static_cast<int>(phases.size());
    if (k < 1) {
        throw InputError("mod-k polynomial needs at least one phase");
    }
    Polynomial p;
    for (int n = 0; n < k; n++) {
        p = p + dispersive_kernel(k, n) * expi(phases[n]);
    }
    return p;
}

/// Same assembly with arbitrary complex node values (|a_n| <= 1).
inline Polynomial modk_amplitude_polynomial(const std::vector<cplx> &values) {
    const int k = static_cast<int>(values.size());
    Polynomial p;
    for (int n = 0; n < k; n++) {
        p = p + dispersive_kernel(k, n) * values[n];
    }
    return p;
}

/// Phi_n = pi sqrt(n+1) / (2 sqrt(n_max+2)).
inline std::vector<double> jc_phase_nodes(int n_max) {
    if (n_max < 0) {
        throw InputError("n_max must be non-negative");
    }
    std::vector<double> out;
    for (int n = 0; n <= n_max; n++) {
        out.push_back(kPi * std::sqrt(n + 1.0) / (2 * std::sqrt(n_max + 2.0)));
    }
    return out;
}

/// JC per-round phase lambda*T.
inline double jc_round_phase(int n_max) { return kPi / (2 * std::sqrt(n_max + 2.0)); }

struct JcKernelSet {
    int n_max = 0;
    int h = 0;
    int s = 0;
    std::vector<double> phase_nodes;
    std::vector<Polynomial> real_kernels;
    std::vector<Polynomial> imag_kernels;
    std::vector<double> deltas_r;
    std::vector<double> deltas_i;
    std::vector<double> upsilon;

    int degree() const { return 4 * s * n_max + 2 * h; }
};

namespace detail {

// On the unit circle K_n(e^{i phi}) = e^{i M phi / 2} rho(phi) with
// rho(phi) = [g(phi) / g(Phi_n)] prod_{m != n} [(cos 2phi - cos 2Phi_m) /
// (cos 2Phi_n - cos 2Phi_m)]^s and g = cos^h(phi+delta) +- cos^h(phi-delta).
struct JcProfile {
    const std::vector<double> *nodes;
    int n;
    int h;
    int s;
    bool imag;

    double g(double phi, double delta) const {
        double a = std::pow(std::cos(phi + delta), h), b = std::pow(std::cos(phi - delta), h);
        return imag ? a - b : a + b;
    }
    double dg(double phi, double delta) const {
        double a = std::pow(std::cos(phi + delta), h - 1) * std::sin(phi + delta);
        double b = std::pow(std::cos(phi - delta), h - 1) * std::sin(phi - delta);
        return -h * (imag ? a - b : a + b);
    }
    double product(double phi) const {
        double r = 1;
        const double c0 = std::cos(2 * (*nodes)[n]);
        for (size_t m = 0; m < nodes->size(); m++) {
            if (static_cast<int>(m) == n) {
                continue;
            }
            double cm = std::cos(2 * (*nodes)[m]);
            r *= std::pow((std::cos(2 * phi) - cm) / (c0 - cm), s);
        }
        return r;
    }
    // Log-derivative of the product part at the own node.
    double product_slope() const {
        const double phi = (*nodes)[n];
        double t = 0;
        for (size_t m = 0; m < nodes->size(); m++) {
            if (static_cast<int>(m) == n) {
                continue;
            }
            t += -2.0 * s * std::sin(2 * phi) / (std::cos(2 * phi) - std::cos(2 * (*nodes)[m]));
        }
        return t;
    }
    double modulus(double phi, double delta) const {
        return std::abs(g(phi, delta) / g((*nodes)[n], delta) * product(phi));
    }
    double stationarity(double delta) const {
        const double phi = (*nodes)[n];
        return dg(phi, delta) + product_slope() * g(phi, delta);
    }
};

inline constexpr int kDeltaScan = 1440;
inline constexpr int kProfileGrid = 2048;

inline double profile_sup(const JcProfile &prof, double delta) {
    double best = 0;
    // |K| is pi-periodic in phi.
    for (int j = 0; j < kProfileGrid; j++) {
        best = std::max(best, prof.modulus(kPi * j / kProfileGrid, delta));
    }
    return best;
}

// Picks delta in (0, pi) making |K_n| stationary at its own node; among
// several roots, the one with the smallest sup on the circle.
inline double solve_delta(const JcProfile &prof) {
    const double phi = (*prof.nodes)[prof.n];
    auto usable = [&](double delta) { return std::abs(prof.g(phi, delta)) > 1e-8; };
    double best_delta = std::numeric_limits<double>::quiet_NaN();
    double best_sup = std::numeric_limits<double>::infinity();
    double prev_d = 0, prev_f = 0;
    for (int j = 0; j < kDeltaScan; j++) {
        double d = kPi * (j + 0.5) / kDeltaScan;
        double f = prof.stationarity(d);
        if (j > 0 && (prev_f < 0) != (f < 0)) {
            double lo = prev_d, hi = d, flo = prev_f;
            for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
                double mid = 0.5 * (lo + hi);
                double fm = prof.stationarity(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double root = 0.5 * (lo + hi);
            if (usable(root)) {
                double sup = profile_sup(prof, root);
                if (sup < best_sup) {
                    best_sup = sup;
                    best_delta = root;
                }
            }
        }
        prev_d = d;
        prev_f = f;
    }
    if (std::isnan(best_delta)) {
        throw NumericError(std::string("delta solve did not converge for ") + (prof.imag ? "imaginary" : "real") +
                           " kernel at node " + std::to_string(prof.n));
    }
    return best_delta;
}

inline Polynomial jc_kernel_polynomial(const std::vector<double> &nodes, int n, int h, int s, double delta, bool imag,
                                       double upsilon) {
    // Built in u = z^2, then lifted.
    const cplx e2d = expi(2 * delta);
    const cplx un = expi(2 * nodes[n]);
    Polynomial a({1.0}), b({1.0});
    const Polynomial fa({1.0, e2d}), fb({e2d, 1.0});
    for (int j = 0; j < h; j++) {
        a = a * fa;
        b = b * fb;
    }
    Polynomial num = imag ? a - b : a + b;
    Polynomial out = num * (expi(upsilon) / num(un));
    for (size_t m = 0; m < nodes.size(); m++) {
        if (static_cast<int>(m) == n) {
            continue;
        }
        const cplx lo = expi(-2 * nodes[m]), hi = expi(2 * nodes[m]);
        const Polynomial factor = Polynomial({-lo, 1.0}) * Polynomial({-hi, 1.0}) * (1.0 / ((un - lo) * (un - hi)));
        for (int j = 0; j < s; j++) {
            out = out * factor;
        }
    }
    return compose_power(out, 2);
}

}  // namespace detail

/// Worst-case sum over nodes of max(|K^R_n|, |K^I_n|) on the 4096-point grid
/// plus the nodes. It bounds |F| for every phase assignment.
inline double jc_kernel_bound(int n_max, int h, int s, const std::vector<double> &deltas_r,
                              const std::vector<double> &deltas_i) {
    const auto nodes = jc_phase_nodes(n_max);
    std::vector<double> phis;
    for (int j = 0; j < 4096; j++) {
        phis.push_back(2 * kPi * j / 4096);
    }
    phis.insert(phis.end(), nodes.begin(), nodes.end());
    double worst = 0;
    for (double phi : phis) {
        double total = 0;
        for (int n = 0; n <= n_max; n++) {
            detail::JcProfile pr{&nodes, n, h, s, false}, pi{&nodes, n, h, s, true};
            total += std::max(pr.modulus(phi, deltas_r[n]), pi.modulus(phi, deltas_i[n]));
        }
        worst = std::max(worst, total);
    }
    return worst;
}

/// Solved delta_n for both families at fixed (h, s).
inline std::pair<std::vector<double>, std::vector<double>> jc_deltas(int n_max, int h, int s) {
    const auto nodes = jc_phase_nodes(n_max);
    std::vector<double> dr, di;
    for (int n = 0; n <= n_max; n++) {
        dr.push_back(detail::solve_delta({&nodes, n, h, s, false}));
        di.push_back(detail::solve_delta({&nodes, n, h, s, true}));
    }
    return {dr, di};
}

struct HsChoice {
    int h = 0;
    int s = 0;
    double bound = 0;
};

inline constexpr int kMaxS = 32;
inline constexpr int kMaxH = 64;

/// Smallest-degree (then smallest s) pair whose kernel bound stays <= 1.
inline HsChoice select_hs(int n_max) {
    if (n_max < 0) {
        throw InputError("n_max must be non-negative");
    }
    const int max_half = 2 * kMaxS * n_max + kMaxH;
    for (int half = 1; half <= max_half; half++) {
        for (int s = 1; s <= kMaxS; s++) {
            int h = half - 2 * s * n_max;
            if (h < 1) {
                break;
            }
            if (h > kMaxH) {
                continue;
            }
            std::pair<std::vector<double>, std::vector<double>> deltas;
            try {
                deltas = jc_deltas(n_max, h, s);
            } catch (const NumericError &) {
                continue;
            }
            double bound = jc_kernel_bound(n_max, h, s, deltas.first, deltas.second);
            if (bound <= 1 + 1e-12) {
                return {h, s, bound};
            }
            if (n_max == 0) {
                break;
            }
        }
    }
    throw NumericError("kernel bound search exhausted");
}

/// Real and imaginary JC kernel families at fixed (h, s).
inline JcKernelSet jc_kernels(int n_max, int h, int s) {
    if (h < 1 || s < 1) {
        throw InputError("kernel powers h and s must be positive");
    }
    JcKernelSet set;
    set.n_max = n_max;
    set.h = h;
    set.s = s;
    set.phase_nodes = jc_phase_nodes(n_max);
    auto [dr, di] = jc_deltas(n_max, h, s);
    set.deltas_r = dr;
    set.deltas_i = di;
    for (int n = 0; n <= n_max; n++) {
        double ups = (2.0 * s * n_max + h) * set.phase_nodes[n];
        set.upsilon.push_back(ups);
        set.real_kernels.push_back(detail::jc_kernel_polynomial(set.phase_nodes, n, h, s, dr[n], false, ups));
        set.imag_kernels.push_back(detail::jc_kernel_polynomial(set.phase_nodes, n, h, s, di[n], true, ups));
    }
    return set;
}

inline JcKernelSet jc_kernels(int n_max) {
    HsChoice c = select_hs(n_max);
    return jc_kernels(n_max, c.h, c.s);
}

namespace detail {

inline Polynomial force_real(const Polynomial &p) {
    if (realness_residual(p) > kEpsReal) {
        throw NumericError("JC polynomial lost real coefficients");
    }
    return real_part(p);
}

}  // namespace detail

/// F(z) = sum_n Re(a_n) K^R_n + i Im(a_n) K^I_n, so F(e^{i Phi_n}) = e^{i Upsilon_n} a_n.
inline Polynomial jc_amplitude_polynomial(const std::vector<cplx> &values, const JcKernelSet &set) {
    if (static_cast<int>(values.size()) != set.n_max + 1) {
        throw InputError("expected n_max+1 node values");
    }
    Polynomial f;
    for (int n = 0; n <= set.n_max; n++) {
        f = f + set.real_kernels[n] * values[n].real() + set.imag_kernels[n] * (kI * values[n].imag());
    }
    return detail::force_real(f);
}

/// Dressed SNAP polynomial: F(e^{i Phi_n}) = e^{i Upsilon_n} e^{i Theta_n}.
inline Polynomial jc_snap_polynomial(const std::vector<double> &target_phases, const JcKernelSet &set) {
    if (static_cast<int>(target_phases.size()) != set.n_max + 1) {
        throw InputError("expected n_max+1 target phases");
    }
    std::vector<cplx> values;
    for (double t : target_phases) {
        values.push_back(expi(t));
    }
    return jc_amplitude_polynomial(values, set);
}

/// F = sum_n K^R_n / sqrt(2).
inline Polynomial hadamard_polynomial(const JcKernelSet &set) {
    return jc_amplitude_polynomial(std::vector<cplx>(set.n_max + 1, cplx{1.0 / std::sqrt(2.0)}), set);
}

}  // namespace bqsp

#endif
