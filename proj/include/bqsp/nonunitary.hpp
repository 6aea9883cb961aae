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

#ifndef BQSP_NONUNITARY_HPP
#define BQSP_NONUNITARY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "bqsp/gates.hpp"

namespace bqsp {

/// Target branch amplitudes: |n> -> A_n |n, a> + B_n |n', b>.
struct KrausSpec {
    std::vector<cplx> a_amps;
    std::vector<cplx> b_amps;
    Backend backend = Backend::dispersive;

    int n_max() const { return static_cast<int>(a_amps.size()) - 1; }
};

inline void validate(const KrausSpec &spec) {
    if (spec.a_amps.empty() || spec.a_amps.size() != spec.b_amps.size()) {
        throw InputError("Kraus amplitudes must be non-empty and of equal length");
    }
    for (size_t n = 0; n < spec.a_amps.size(); n++) {
        if (std::abs(spec.a_amps[n]) > 1 + 1e-12) {
            throw InputError("amplitude exceeds unity");
        }
        if (std::abs(std::norm(spec.a_amps[n]) + std::norm(spec.b_amps[n]) - 1) > 1e-10) {
            throw InputError("|A_n|^2 + |B_n|^2 must equal 1 at n = " + std::to_string(n));
        }
    }
}

/// A_n = G^{n - n_max}, B_n = sqrt(1 - A_n^2).
inline KrausSpec nla_amplitudes(double gain, int n_max, Backend backend = Backend::dispersive) {
    if (!(gain > 1)) {
        throw InputError("gain must exceed 1");
    }
    if (n_max < 0) {
        throw InputError("n_max must be non-negative");
    }
    KrausSpec spec;
    spec.backend = backend;
    for (int n = 0; n <= n_max; n++) {
        double a = std::pow(gain, n - n_max);
        spec.a_amps.push_back(a);
        spec.b_amps.push_back(std::sqrt(std::max(0.0, 1 - a * a)));
    }
    return spec;
}

/// A_n = 0, B_n = 1 when n mod k' = n_b; A_n = 1, B_n = 0 otherwise.
inline KrausSpec parity_projector_amplitudes(int k_prime, int n_b, int n_max, Backend backend = Backend::dispersive) {
    if (k_prime < 1 || n_b < 0 || n_b >= k_prime) {
        throw InputError("need 0 <= n_b < k'");
    }
    if (n_max < 0) {
        throw InputError("n_max must be non-negative");
    }
    if (backend == Backend::dispersive && (n_max + 1) % k_prime != 0) {
        throw InputError("k' must divide n_max+1 for the dispersive backend");
    }
    KrausSpec spec;
    spec.backend = backend;
    for (int n = 0; n <= n_max; n++) {
        bool hit = n % k_prime == n_b;
        spec.a_amps.push_back(hit ? 0.0 : 1.0);
        spec.b_amps.push_back(hit ? 1.0 : 0.0);
    }
    return spec;
}

/// Entangler plus the feed-forward SNAP applied after a B-branch outcome.
struct KrausGate {
    KrausSpec spec;
    CompiledGate entangler;
    CompiledGate correction;
    int input_qubit = kG;
    int a_branch = kG;
    int b_branch = kE;
    // Level offset of the B branch (|n,e> -> |n+1,g> for JC).
    int b_shift = 0;
};

namespace detail {

inline int kraus_sim_levels(const KrausGate &g, int input_levels) {
    if (g.spec.backend == Backend::jc) {
        return std::max(input_levels + 1, g.spec.n_max() + 2);
    }
    return input_levels;
}

inline Eigen::MatrixXcd gate_matrix(const CompiledGate &g, int n_trunc) { return simulate(g, n_trunc).op.matrix; }

}  // namespace detail

/// Realized B-branch amplitudes of an entangler, <n + shift, b| U |n, in>.
inline std::vector<cplx> entangler_b_amplitudes(const KrausGate &g, const Eigen::MatrixXcd &u) {
    std::vector<cplx> b;
    for (int n = 0; n <= g.spec.n_max(); n++) {
        b.push_back(u(hybrid_index(n + g.b_shift, g.b_branch), hybrid_index(n, g.input_qubit)));
    }
    return b;
}

/// Kernel sum over A_n, completion, angles, then a correction SNAP whose
/// phases move the realized B-branch phases onto arg B_n.
inline KrausGate kraus_compile(const KrausSpec &spec, const JcContext *ctx = nullptr) {
    validate(spec);
    KrausGate g;
    g.spec = spec;
    const int n_max = spec.n_max();
    std::optional<JcContext> own;
    if (spec.backend == Backend::dispersive) {
        const int k = n_max + 1;
        const Polynomial p = modk_amplitude_polynomial(spec.a_amps);
        const PolynomialPair pair = make_pair(p, complementary_polynomial(p, Convention::gqsp));
        const double step = 2 * kPi / k;
        g.entangler.backend = Backend::dispersive;
        g.entangler.angle_sets.push_back(gqsp_angles(pair, step, static_cast<size_t>(2 * k)));
        g.entangler.polynomials.push_back(pair);
        g.entangler.round_duration = step;
        g.entangler.total_time = 2 * k * step;
        g.entangler.spec.kind = GateKind::mod_k;
        g.entangler.spec.k = k;
        g.entangler.spec.n_max = n_max;
        g.input_qubit = kG;
        g.a_branch = kG;
        g.b_branch = kE;
        g.b_shift = 0;
    } else {
        if (ctx == nullptr) {
            own = make_jc_context(n_max);
            ctx = &*own;
        }
        if (ctx->kernels.n_max != n_max) {
            throw InputError("JC context built for a different n_max");
        }
        const PolynomialPair mid = detail::jc_pair(jc_amplitude_polynomial(spec.a_amps, ctx->kernels));
        const auto &hyb = ctx->hybridization;
        CompiledGate &e = g.entangler;
        e.backend = Backend::jc;
        e.angle_sets = {hyb.forward[0], hyb.forward[1], detail::jc_angles(mid, ctx->kernels), hyb.inverse[0],
                        hyb.inverse[1]};
        e.polynomials = {hyb.forward_pairs[0], hyb.forward_pairs[1], mid, hyb.inverse_pairs[0], hyb.inverse_pairs[1]};
        e.round_duration = jc_round_phase(n_max);
        e.total_time = 5.0 * ctx->kernels.degree() * e.round_duration;
        e.spec.kind = GateKind::jc_snap;
        e.spec.n_max = n_max;
        e.h = ctx->kernels.h;
        e.s = ctx->kernels.s;
        g.input_qubit = kE;
        g.a_branch = kE;
        g.b_branch = kG;
        g.b_shift = 1;
    }

    // Both backends act on the B branch with e^{-i Theta_n} up to a global
    // phase, so Theta_n = arg b_n - arg B_n.
    const auto realized = entangler_b_amplitudes(g, detail::gate_matrix(g.entangler, n_max + 1 + g.b_shift));
    std::vector<double> phases;
    for (int n = 0; n <= n_max; n++) {
        bool live = std::abs(spec.b_amps[n]) > 1e-12 && std::abs(realized[n]) > 1e-12;
        phases.push_back(live ? std::remainder(std::arg(realized[n]) - std::arg(spec.b_amps[n]), 2 * kPi) : 0.0);
    }
    if (spec.backend == Backend::dispersive) {
        g.correction = snap_compile(phases);
    } else {
        g.correction = jc_snap_compile(phases, *ctx);
    }
    return g;
}

enum class BranchRequest { g, e, sample };

struct MeasurementOutcome {
    int branch = kG;
    double probability = 0;
    Qumode post_state;
    std::uint64_t seed = 0;
};

/// Precomputed entangler and correction operators for a fixed input size.
class KrausSimulator {
  public:
    KrausSimulator(const KrausGate &gate, int input_levels)
        : gate_(gate), input_levels_(input_levels), levels_(detail::kraus_sim_levels(gate, input_levels)) {
        entangler_ = detail::gate_matrix(gate.entangler, levels_);
        correction_ = detail::gate_matrix(gate.correction, levels_);
    }

    int levels() const { return levels_; }

    /// Branch amplitudes (unnormalized) on each qubit outcome; the B branch
    /// already carries the correction.
    std::pair<Qumode, Qumode> branches(const Qumode &state) const {
        if (state.size() != input_levels_) {
            throw InputError("state size does not match the simulator");
        }
        Qumode padded = Qumode::Zero(levels_);
        padded.head(input_levels_) = state;
        HybridState out = apply(HybridOperator{entangler_, true}, attach_qubit(padded, gate_.input_qubit));
        Qumode a = qubit_branch(out, gate_.a_branch);
        HybridState b_only = attach_qubit(qubit_branch(out, gate_.b_branch), gate_.b_branch);
        Qumode b = qubit_branch(apply(HybridOperator{correction_, true}, b_only), gate_.b_branch);
        return {a, b};
    }

    MeasurementOutcome measure(const Qumode &state, BranchRequest req, std::mt19937_64 *rng) const {
        auto [a, b] = branches(state);
        const double pa = a.squaredNorm();
        const double pb = b.squaredNorm();
        int branch;
        if (req == BranchRequest::sample) {
            if (rng == nullptr) {
                throw InputError("sampling needs a generator");
            }
            branch = uniform01(*rng) * (pa + pb) < pa ? gate_.a_branch : gate_.b_branch;
        } else {
            branch = req == BranchRequest::g ? kG : kE;
        }
        const Qumode &v = branch == gate_.a_branch ? a : b;
        const double p = branch == gate_.a_branch ? pa : pb;
        if (p < 1e-14) {
            throw InputError("branch unreachable");
        }
        MeasurementOutcome out;
        out.branch = branch;
        out.probability = p;
        out.post_state = v / std::sqrt(p);
        return out;
    }

    /// Kraus operators M (A branch) and N (corrected B branch) as
    /// levels x input_levels matrices.
    std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> kraus_operators() const {
        Eigen::MatrixXcd m(levels_, input_levels_), n(levels_, input_levels_);
        for (int c = 0; c < input_levels_; c++) {
            auto [a, b] = branches(fock_state(c, input_levels_));
            m.col(c) = a;
            n.col(c) = b;
        }
        return {m, n};
    }

  private:
    KrausGate gate_;
    int input_levels_;
    int levels_;
    Eigen::MatrixXcd entangler_;
    Eigen::MatrixXcd correction_;
};

inline MeasurementOutcome apply_and_measure(const Qumode &state, const KrausGate &gate, BranchRequest req,
                                            std::uint64_t seed = 0) {
    if (std::abs(state.squaredNorm() - 1) > 1e-10) {
        throw InputError("state must be normalized");
    }
    std::mt19937_64 rng(seed);
    MeasurementOutcome out = KrausSimulator(gate, static_cast<int>(state.size())).measure(state, req, &rng);
    out.seed = seed;
    return out;
}

/// Realized amplitudes on levels 0..n_max; b is aligned to spec.b_amps by one
/// global phase.
struct KrausReport {
    std::vector<cplx> a;
    std::vector<cplx> b;
    double max_amplitude_error = 0;
    double completeness_error = 0;
};

inline KrausReport realized_kraus(const KrausGate &gate, int input_levels = 0) {
    const int n_max = gate.spec.n_max();
    if (input_levels <= 0) {
        input_levels = n_max + 1;
    }
    KrausSimulator sim(gate, input_levels);
    auto [m, n] = sim.kraus_operators();
    KrausReport rep;
    cplx overlap = 0;
    for (int j = 0; j <= n_max; j++) {
        rep.a.push_back(m(j, j));
        rep.b.push_back(n(j + gate.b_shift, j));
        overlap += std::conj(gate.spec.b_amps[j]) * rep.b.back();
    }
    const cplx align = std::abs(overlap) > 1e-12 ? std::conj(overlap) / std::abs(overlap) : cplx{1.0};
    for (int j = 0; j <= n_max; j++) {
        rep.b[j] *= align;
        rep.max_amplitude_error =
            std::max({rep.max_amplitude_error, std::abs(rep.a[j] - gate.spec.a_amps[j]), std::abs(rep.b[j] - gate.spec.b_amps[j])});
    }
    Eigen::MatrixXcd c = m.adjoint() * m + n.adjoint() * n - Eigen::MatrixXcd::Identity(input_levels, input_levels);
    rep.completeness_error = c.cwiseAbs().maxCoeff();
    return rep;
}

struct BosonNumberResult {
    int n = -1;
    std::vector<MeasurementOutcome> trajectory;
};

/// Generalized-parity measurements with k' = n_max+1 and n_b ascending from
/// 0 until a positive outcome. Projectors are compiled once per n_max.
class BosonNumberMeter {
  public:
    explicit BosonNumberMeter(int n_max) : n_max_(n_max) {
        if (n_max < 0) {
            throw InputError("n_max must be non-negative");
        }
        for (int nb = 0; nb <= n_max; nb++) {
            gates_.push_back(kraus_compile(parity_projector_amplitudes(n_max + 1, nb, n_max)));
        }
    }

    BosonNumberResult measure(const Qumode &state, std::uint64_t seed) const {
        if (std::abs(state.squaredNorm() - 1) > 1e-10) {
            throw InputError("state must be normalized");
        }
        double tail = 0;
        for (Eigen::Index n = n_max_ + 1; n < state.size(); n++) {
            tail += std::norm(state(n));
        }
        if (tail > 1e-10) {
            throw InputError("state has support above n_max");
        }
        const int levels = static_cast<int>(state.size());
        auto &sims = simulators_[levels];
        if (sims.empty()) {
            for (const auto &g : gates_) {
                sims.emplace_back(g, levels);
            }
        }
        std::mt19937_64 rng(seed);
        BosonNumberResult res;
        Qumode psi = state;
        for (int nb = 0; nb <= n_max_; nb++) {
            MeasurementOutcome o = sims[nb].measure(psi, BranchRequest::sample, &rng);
            o.seed = seed;
            res.trajectory.push_back(o);
            psi = o.post_state;
            if (o.branch == kE) {
                res.n = nb;
                return res;
            }
        }
        throw NumericError("no positive outcome after n_max+1 rounds");
    }

  private:
    int n_max_;
    std::vector<KrausGate> gates_;
    mutable std::map<int, std::vector<KrausSimulator>> simulators_;
};

inline BosonNumberResult boson_number_measurement(const Qumode &state, int n_max, std::uint64_t seed) {
    return BosonNumberMeter(n_max).measure(state, seed);
}

/// Renormalized |alpha> truncated to levels 0..n_levels-1.
inline Qumode truncated_coherent(cplx alpha, int n_levels) {
    Qumode c(n_levels);
    c(0) = 1.0;
    for (int n = 1; n < n_levels; n++) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return c / c.norm();
}

}  // namespace bqsp

#endif
