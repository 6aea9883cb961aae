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

#ifndef BQSP_HILBERT_HPP
#define BQSP_HILBERT_HPP

#include <Eigen/Dense>
#include <vector>

#include "bqsp/angles.hpp"

namespace bqsp {

// Basis ordering: |0,g>, |0,e>, |1,g>, |1,e>, ... ; for two modes the
// level index runs over (n_a, n_b) with n_b fastest.
enum Qubit : int { kG = 0, kE = 1 };

inline Eigen::Index hybrid_index(int level, int qubit) { return 2 * static_cast<Eigen::Index>(level) + qubit; }

struct SimConfig {
    double chi = 1.0;
    double lam = 1.0;
    double delta = 1.0;
    int n_trunc = 8;
    double dt = 0.0;
};

struct HybridOperator {
    Eigen::MatrixXcd matrix;
    bool unitary = true;

    int levels() const { return static_cast<int>(matrix.rows() / 2); }
};

struct HybridState {
    Eigen::VectorXcd amplitudes;
    double norm = 1.0;

    int levels() const { return static_cast<int>(amplitudes.size() / 2); }
};

using Qumode = Eigen::VectorXcd;

inline double unitarity_error(const Eigen::MatrixXcd &u) {
    Eigen::MatrixXcd e = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return e.cwiseAbs().maxCoeff();
}

inline std::vector<int> single_mode_numbers(int n_trunc) {
    std::vector<int> v(n_trunc);
    for (int n = 0; n < n_trunc; n++) {
        v[n] = n;
    }
    return v;
}

inline std::vector<int> two_mode_numbers(int n_trunc_mode) {
    std::vector<int> v;
    for (int a = 0; a < n_trunc_mode; a++) {
        for (int b = 0; b < n_trunc_mode; b++) {
            v.push_back(a + b);
        }
    }
    return v;
}

/// |n,g> -> e^{i chi_t n}|n,g>, |n,e> unchanged; `numbers` gives the boson
/// number of each level (total number for multi-mode spaces).
inline HybridOperator controlled_phase(double chi_t, const std::vector<int> &numbers) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(numbers.size());
    HybridOperator op{Eigen::MatrixXcd::Identity(dim, dim), true};
    for (size_t l = 0; l < numbers.size(); l++) {
        op.matrix(hybrid_index(static_cast<int>(l), kG), hybrid_index(static_cast<int>(l), kG)) = expi(chi_t * numbers[l]);
    }
    return op;
}

inline HybridOperator controlled_phase(double chi_t, const SimConfig &cfg) {
    return controlled_phase(chi_t, single_mode_numbers(cfg.n_trunc));
}

/// Qubit block e^{i(lambda+phi-pi)/2} e^{i(phi/2+pi/4) sz} e^{i theta sx} e^{i(lambda/2+pi/4) sz}
/// with sz = |g><g| - |e><e|.
inline Mat2 qubit_drive_block(double theta, double phi, double lam_angle) {
    auto zrot = [](double a) {
        Mat2 m = Mat2::Zero();
        m(0, 0) = expi(a);
        m(1, 1) = expi(-a);
        return m;
    };
    Mat2 x;
    x << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta);
    return expi((lam_angle + phi - kPi) / 2) * zrot(phi / 2 + kPi / 4) * x * zrot(lam_angle / 2 + kPi / 4);
}

inline HybridOperator block_diagonal(const Mat2 &block, int levels) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(levels);
    HybridOperator op{Eigen::MatrixXcd::Zero(dim, dim), true};
    for (int l = 0; l < levels; l++) {
        op.matrix.block<2, 2>(hybrid_index(l, kG), hybrid_index(l, kG)) = block;
    }
    return op;
}

inline HybridOperator qubit_drive(double theta, double phi, double lam_angle, int levels) {
    return block_diagonal(qubit_drive_block(theta, phi, lam_angle), levels);
}

inline HybridOperator qubit_drive(double theta, double phi, double lam_angle, const SimConfig &cfg) {
    return qubit_drive(theta, phi, lam_angle, cfg.n_trunc);
}

/// Exact JC step on the pairs {|n+1,g>, |n,e>}: |down_n> gets e^{+i Phi_n/2},
/// |up_n> gets e^{-i Phi_n/2}, Phi_n = lam_t sqrt(n+1). |0,g> is left alone,
/// and so is |n_trunc-1,e>, whose partner lies outside the truncation.
inline HybridOperator jc_evolution(double lam_t, const SimConfig &cfg) {
    const int nt = cfg.n_trunc;
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(nt);
    HybridOperator op{Eigen::MatrixXcd::Identity(dim, dim), true};
    for (int n = 0; n + 1 < nt; n++) {
        const double half = lam_t * std::sqrt(n + 1.0) / 2;
        const Eigen::Index a = hybrid_index(n + 1, kG), b = hybrid_index(n, kE);
        op.matrix(a, a) = std::cos(half);
        op.matrix(b, b) = std::cos(half);
        op.matrix(a, b) = -kI * std::sin(half);
        op.matrix(b, a) = -kI * std::sin(half);
    }
    return op;
}

/// e^{i delta_t sz}: |g> -> e^{i delta_t}|g>, |e> -> e^{-i delta_t}|e>.
inline HybridOperator detuning_rotation(double delta_t, const SimConfig &cfg) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(cfg.n_trunc);
    HybridOperator op{Eigen::MatrixXcd::Zero(dim, dim), true};
    for (int n = 0; n < cfg.n_trunc; n++) {
        op.matrix(hybrid_index(n, kG), hybrid_index(n, kG)) = expi(delta_t);
        op.matrix(hybrid_index(n, kE), hybrid_index(n, kE)) = expi(-delta_t);
    }
    return op;
}

/// |down_n> = (|n+1,g> - |n,e>)/sqrt2 and |up_n> = (|n+1,g> + |n,e>)/sqrt2.
inline Eigen::VectorXcd dressed_state(int n, bool up, int n_trunc) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * static_cast<Eigen::Index>(n_trunc));
    v(hybrid_index(n + 1, kG)) = 1 / std::sqrt(2.0);
    v(hybrid_index(n, kE)) = (up ? 1.0 : -1.0) / std::sqrt(2.0);
    return v;
}

struct SequenceResult {
    HybridOperator op;
    double interaction_time = 0;
};

/// T_M C T_{M-1} C ... C T_0 with C = controlled_phase(phase_step).
inline SequenceResult run_dispersive_sequence(const AngleSet &angles, const std::vector<int> &numbers, double chi = 1.0) {
    if (angles.convention != Convention::gqsp) {
        throw InputError("dispersive sequences use the gqsp convention");
    }
    const int levels = static_cast<int>(numbers.size());
    const HybridOperator c = controlled_phase(angles.phase_step, numbers);
    Eigen::MatrixXcd u = qubit_drive(angles.thetas[0], angles.phis[0], angles.lambdas[0], levels).matrix;
    for (size_t m = 1; m <= angles.rounds(); m++) {
        u = c.matrix.diagonal().asDiagonal() * u;
        u = qubit_drive(angles.thetas[m], angles.phis[m], angles.lambdas[m], levels).matrix * u;
    }
    return {HybridOperator{u, true}, static_cast<double>(angles.rounds()) * angles.phase_step / chi};
}

inline SequenceResult run_dispersive_sequence(const AngleSet &angles, const SimConfig &cfg) {
    return run_dispersive_sequence(angles, single_mode_numbers(cfg.n_trunc), cfg.chi);
}

/// Each round: detuning(theta_0), then M times [JC(phase_step), detuning(theta_m)].
inline SequenceResult run_jc_sequence(const std::vector<AngleSet> &rounds, const SimConfig &cfg) {
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(cfg.n_trunc);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    double time = 0;
    for (const auto &angles : rounds) {
        if (angles.convention != Convention::oqsp) {
            throw InputError("JC sequences use the oqsp convention");
        }
        const Eigen::MatrixXcd jc = jc_evolution(angles.phase_step, cfg).matrix;
        u = detuning_rotation(angles.thetas[0], cfg).matrix.diagonal().asDiagonal() * u;
        for (size_t m = 1; m <= angles.rounds(); m++) {
            u = jc * u;
            u = detuning_rotation(angles.thetas[m], cfg).matrix.diagonal().asDiagonal() * u;
        }
        time += static_cast<double>(angles.rounds()) * angles.phase_step / cfg.lam;
    }
    return {HybridOperator{u, true}, time};
}

/// |tr(V^dag U_sub)|^2 / d^2 over the given levels with the qubit fixed to
/// `ref`; `target` holds the diagonal of V.
inline double gate_fidelity(const HybridOperator &actual, const std::vector<int> &levels, const std::vector<cplx> &target,
                            int ref) {
    cplx tr = 0;
    for (size_t j = 0; j < levels.size(); j++) {
        Eigen::Index i = hybrid_index(levels[j], ref);
        tr += std::conj(target[j]) * actual.matrix(i, i);
    }
    const double d = static_cast<double>(levels.size());
    return std::norm(tr) / (d * d);
}

inline double gate_fidelity(const HybridOperator &actual, const std::vector<cplx> &target, int n_max, int ref = kG) {
    if (n_max + 2 > actual.levels()) {
        throw InputError("gate_fidelity needs n_max + 2 <= n_trunc");
    }
    std::vector<int> levels;
    for (int n = 0; n <= n_max; n++) {
        levels.push_back(n);
    }
    return gate_fidelity(actual, levels, target, ref);
}

/// Max over the listed levels of the population moved into the opposite
/// qubit state.
inline double qubit_leakage(const HybridOperator &actual, const std::vector<int> &levels, int ref) {
    double worst = 0;
    const int opp = 1 - ref;
    for (int n : levels) {
        Eigen::Index col = hybrid_index(n, ref);
        double total = 0;
        for (int m = 0; m < actual.levels(); m++) {
            total += std::norm(actual.matrix(hybrid_index(m, opp), col));
        }
        worst = std::max(worst, total);
    }
    return worst;
}

inline double qubit_leakage(const HybridOperator &actual, int n_max, int ref = kG) {
    std::vector<int> levels;
    for (int n = 0; n <= n_max; n++) {
        levels.push_back(n);
    }
    return qubit_leakage(actual, levels, ref);
}

struct CoherentState {
    Qumode amplitudes;
    double truncation_error = 0;
};

/// Truncated, renormalized |alpha>.
inline CoherentState coherent_state(cplx alpha, int n_trunc) {
    const double a = std::abs(alpha);
    if (a * a + 6 * a + 10 > n_trunc) {
        throw InputError("truncation too small for alpha");
    }
    Qumode c(n_trunc);
    c(0) = std::exp(-a * a / 2);
    for (int n = 1; n < n_trunc; n++) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    CoherentState out;
    out.truncation_error = 1 - c.squaredNorm();
    out.amplitudes = c / c.norm();
    return out;
}

inline Qumode fock_state(int n, int n_trunc) {
    Qumode v = Qumode::Zero(n_trunc);
    v(n) = 1.0;
    return v;
}

inline HybridState attach_qubit(const Qumode &mode, int qubit) {
    HybridState s;
    s.amplitudes = Eigen::VectorXcd::Zero(2 * mode.size());
    for (Eigen::Index n = 0; n < mode.size(); n++) {
        s.amplitudes(2 * n + qubit) = mode(n);
    }
    return s;
}

inline Qumode qubit_branch(const HybridState &s, int qubit) {
    Qumode v(s.levels());
    for (int n = 0; n < s.levels(); n++) {
        v(n) = s.amplitudes(hybrid_index(n, qubit));
    }
    return v;
}

inline HybridState apply(const HybridOperator &op, const HybridState &s) {
    return HybridState{op.matrix * s.amplitudes, s.norm};
}

/// |<a|b>|^2 for normalized qumode vectors.
inline double state_fidelity(const Qumode &a, const Qumode &b) { return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm()); }

}  // namespace bqsp

#endif
