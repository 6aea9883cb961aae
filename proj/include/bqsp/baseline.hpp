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

#ifndef BQSP_BASELINE_HPP
#define BQSP_BASELINE_HPP

#include <cmath>
#include <vector>

#include "bqsp/gates.hpp"
#include "bqsp/hilbert.hpp"

namespace bqsp {

/// Two-stage multi-tone SNAP: stage 1 drives every tone with phase 0, stage
/// 2 with pi + Theta_n; each stage is a pi pulse of length pi / Omega.
struct MultiToneConfig {
    Backend backend = Backend::dispersive;
    double rabi = 0.1;
    int n_max = 0;
    SimConfig sim;
};

struct MultiToneResult {
    HybridOperator op;
    double gate_time = 0;
    double dt = 0;
    long steps = 0;
};

namespace detail {

// exp(-i dt [[a, conj(h)], [h, -a]]) for real a.
inline Mat2 su2_step(double a, cplx h, double dt) {
    const double r = std::sqrt(a * a + std::norm(h));
    Mat2 u;
    if (r == 0) {
        return Mat2::Identity();
    }
    const double c = std::cos(r * dt);
    const double s = std::sin(r * dt) / r;
    u << cplx(c, -s * a), -kI * s * std::conj(h), -kI * s * h, cplx(c, s * a);
    return u;
}

inline double dt_bound(Backend backend, int n_max, double rabi, const SimConfig &cfg) {
    const double rate = backend == Backend::jc ? 2 * cfg.lam * std::sqrt(n_max + 1.0) : cfg.chi * n_max;
    return 1.0 / (200.0 * std::max(rate, rabi));
}

inline long stage_steps(Backend backend, int n_max, double rabi, const SimConfig &cfg) {
    const double bound = dt_bound(backend, n_max, rabi, cfg);
    const double dt = cfg.dt > 0 ? cfg.dt : bound;
    if (dt > bound * (1 + 1e-12)) {
        throw InputError("integration step violates the dt bound");
    }
    return static_cast<long>(std::ceil(kPi / rabi / dt - 1e-9));
}

inline void check_inputs(const std::vector<double> &thetas, double rabi, const SimConfig &cfg) {
    if (!(rabi > 0)) {
        throw InputError("rabi must be positive");
    }
    if (thetas.empty()) {
        throw InputError("need at least one phase");
    }
    if (cfg.n_trunc < static_cast<int>(thetas.size()) + 1) {
        throw InputError("n_trunc must be at least n_max+2");
    }
}

}  // namespace detail

/// Dispersive interaction frame: tone j drives level m with detuning
/// (m - j) chi, so every tone reaches every level.
inline MultiToneResult dispersive_multitone_snap(const std::vector<double> &thetas, double rabi, const SimConfig &cfg) {
    detail::check_inputs(thetas, rabi, cfg);
    const int n_max = static_cast<int>(thetas.size()) - 1;
    const long steps = detail::stage_steps(Backend::dispersive, n_max, rabi, cfg);
    const double dt = kPi / rabi / steps;
    const int levels = cfg.n_trunc;
    std::vector<Mat2> blocks(levels, Mat2::Identity());
    for (int stage = 0; stage < 2; stage++) {
        std::vector<double> vartheta(n_max + 1, 0.0);
        if (stage == 1) {
            for (int j = 0; j <= n_max; j++) {
                vartheta[j] = kPi + thetas[j];
            }
        }
        for (long step = 0; step < steps; step++) {
            const double t = (stage * steps + step + 0.5) * dt;
            cplx tones = 0;
            for (int j = 0; j <= n_max; j++) {
                tones += expi(-(j * cfg.chi * t + vartheta[j]));
            }
            const cplx rot = expi(cfg.chi * t);
            cplx level_phase = 1.0;
            for (int m = 0; m < levels; m++) {
                // Rows and columns ordered (g, e); h multiplies |e><g|.
                const cplx h = 0.5 * rabi * level_phase * tones;
                blocks[m] = detail::su2_step(0.0, h, dt) * blocks[m];
                level_phase *= rot;
            }
        }
    }
    MultiToneResult res;
    res.op.matrix = Eigen::MatrixXcd::Zero(2 * levels, 2 * levels);
    for (int m = 0; m < levels; m++) {
        res.op.matrix.block(2 * m, 2 * m, 2, 2) = blocks[m];
    }
    res.gate_time = 2 * kPi / rabi;
    res.dt = dt;
    res.steps = 2 * steps;
    return res;
}

/// Ideal hybridization |n,e> -> |down_n>, |n+1,g> -> |up_n>.
inline Eigen::MatrixXcd ideal_hybridization(int n_trunc) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n_trunc);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
    v(hybrid_index(0, kG), hybrid_index(0, kG)) = 1.0;
    v(hybrid_index(n_trunc - 1, kE), hybrid_index(n_trunc - 1, kE)) = 1.0;
    for (int n = 0; n + 1 < n_trunc; n++) {
        v.col(hybrid_index(n, kE)) = dressed_state(n, false, n_trunc);
        v.col(hybrid_index(n + 1, kG)) = dressed_state(n, true, n_trunc);
    }
    return v;
}

/// Lab-frame JC pairs under sum_j Omega cos(eps_j t + vartheta_j) sigma_z
/// with eps_j = lambda sqrt(j+1). Returned in the JC interaction frame and
/// conjugated by the ideal hybridization, so the target acts on |n,e>.
inline MultiToneResult jc_multitone_snap(const std::vector<double> &thetas, double rabi, const SimConfig &cfg) {
    detail::check_inputs(thetas, rabi, cfg);
    const int n_max = static_cast<int>(thetas.size()) - 1;
    const long steps = detail::stage_steps(Backend::jc, n_max, rabi, cfg);
    const double dt = kPi / rabi / steps;
    const int nt = cfg.n_trunc;
    std::vector<double> eps(n_max + 1);
    for (int j = 0; j <= n_max; j++) {
        eps[j] = cfg.lam * std::sqrt(j + 1.0);
    }
    // Pair n in basis (|n+1,g>, |n,e>): H = (lam sqrt(n+1) / 2) X + Delta Z.
    const int pairs = nt - 1;
    std::vector<Mat2> blocks(pairs, Mat2::Identity());
    double singlet_phase = 0;
    double orphan_phase = 0;
    for (int stage = 0; stage < 2; stage++) {
        std::vector<double> vartheta(n_max + 1, 0.0);
        if (stage == 1) {
            for (int j = 0; j <= n_max; j++) {
                vartheta[j] = kPi + thetas[j];
            }
        }
        for (long step = 0; step < steps; step++) {
            const double t = (stage * steps + step + 0.5) * dt;
            double delta = 0;
            for (int j = 0; j <= n_max; j++) {
                delta += rabi * std::cos(eps[j] * t + vartheta[j]);
            }
            for (int n = 0; n < pairs; n++) {
                const double half = 0.5 * cfg.lam * std::sqrt(n + 1.0);
                blocks[n] = detail::su2_step(delta, cplx{half}, dt) * blocks[n];
            }
            singlet_phase -= delta * dt;
            orphan_phase += delta * dt;
        }
    }
    const double total = 2 * kPi / rabi;
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(nt);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    u(hybrid_index(0, kG), hybrid_index(0, kG)) = expi(singlet_phase);
    u(hybrid_index(nt - 1, kE), hybrid_index(nt - 1, kE)) = expi(orphan_phase);
    for (int n = 0; n < pairs; n++) {
        const double half = 0.5 * cfg.lam * std::sqrt(n + 1.0);
        Mat2 x;
        x << 0, 1, 1, 0;
        const Mat2 back = std::cos(half * total) * Mat2::Identity() + kI * std::sin(half * total) * x;
        const Mat2 blk = back * blocks[n];
        const Eigen::Index a = hybrid_index(n + 1, kG), b = hybrid_index(n, kE);
        u(a, a) = blk(0, 0);
        u(a, b) = blk(0, 1);
        u(b, a) = blk(1, 0);
        u(b, b) = blk(1, 1);
    }
    const Eigen::MatrixXcd v = ideal_hybridization(nt);
    MultiToneResult res;
    res.op.matrix = v.adjoint() * u * v;
    res.gate_time = total;
    res.dt = dt;
    res.steps = 2 * steps;
    return res;
}

inline MultiToneResult multitone_snap(const std::vector<double> &thetas, const MultiToneConfig &cfg) {
    return cfg.backend == Backend::jc ? jc_multitone_snap(thetas, cfg.rabi, cfg.sim)
                                      : dispersive_multitone_snap(thetas, cfg.rabi, cfg.sim);
}

/// Infidelity and leakage of a SNAP on levels 0..n_max; reference qubit g
/// for dispersive, e for JC.
struct SnapScore {
    double infidelity = 0;
    double leakage = 0;
};

inline SnapScore score_snap(const HybridOperator &op, const std::vector<double> &thetas, Backend backend) {
    const int n_max = static_cast<int>(thetas.size()) - 1;
    std::vector<cplx> target;
    for (double t : thetas) {
        target.push_back(expi(t));
    }
    const int ref = backend == Backend::jc ? kE : kG;
    return {1 - gate_fidelity(op, target, n_max, ref), qubit_leakage(op, n_max, ref)};
}

}  // namespace bqsp

#endif
