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

#ifndef BQSP_GATES_HPP
#define BQSP_GATES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "bqsp/angles.hpp"
#include "bqsp/completion.hpp"
#include "bqsp/hilbert.hpp"
#include "bqsp/kernels.hpp"

namespace bqsp {

enum class GateKind { mod_k, snap, two_mode_mod_k, rotation_code_phase, cat_prep, jc_snap };
enum class Backend { dispersive, jc };

inline std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::mod_k:
            return "mod_k";
        case GateKind::snap:
            return "snap";
        case GateKind::two_mode_mod_k:
            return "two_mode_mod_k";
        case GateKind::rotation_code_phase:
            return "rotation_code_phase";
        case GateKind::cat_prep:
            return "cat_prep";
        case GateKind::jc_snap:
            return "jc_snap";
    }
    return "?";
}

inline GateKind gate_kind_from_string(const std::string &s) {
    for (GateKind k : {GateKind::mod_k, GateKind::snap, GateKind::two_mode_mod_k, GateKind::rotation_code_phase,
                       GateKind::cat_prep, GateKind::jc_snap}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw InputError("unknown gate kind '" + s + "'");
}

inline std::string to_string(Backend b) { return b == Backend::jc ? "jc" : "dispersive"; }

inline Backend backend_from_string(const std::string &s) {
    if (s == "dispersive") {
        return Backend::dispersive;
    }
    if (s == "jc") {
        return Backend::jc;
    }
    throw InputError("unknown backend '" + s + "'");
}

/// Gate intent. `phases` holds Theta per residue (mod-k family) or per level
/// (snap, jc_snap); it is filled in by the compiler for kinds that derive
/// their phases (two-mode CPhase default, rotation code, cat).
struct GateSpec {
    GateKind kind = GateKind::mod_k;
    int k = 0;
    std::vector<double> phases;
    int n_max = -1;
    int d = 0;
    int L = 0;
    double theta = 0;
    bool check_window = true;
};

struct CompiledGate {
    Backend backend = Backend::dispersive;
    std::vector<AngleSet> angle_sets;
    std::vector<PolynomialPair> polynomials;
    double round_duration = 0;
    double total_time = 0;
    GateSpec spec;
    // JC kernel powers; zero for dispersive gates.
    int h = 0;
    int s = 0;
};

/// Theta_j = pi j^2 / d for j = 0..2d-2.
inline std::vector<double> qudit_cphase_phases(int d) {
    if (d < 2) {
        throw InputError("qudit dimension must be at least 2");
    }
    std::vector<double> out;
    for (int j = 0; j <= 2 * d - 2; j++) {
        out.push_back(kPi * j * j / d);
    }
    return out;
}

/// Mod-2L phases: 0 near even multiples of L, theta near odd multiples,
/// window half-width floor(L/2); ties go to the even window.
inline std::vector<double> rotation_code_phases(int L, double theta, bool check_window = true) {
    if (L < 1) {
        throw InputError("rotation code order must be positive");
    }
    const int k = 2 * L;
    const int w = check_window ? L / 2 : 0;
    std::vector<double> out(k, 0.0);
    for (int j = 0; j < k; j++) {
        int to_even = std::min(j, k - j);
        int to_odd = std::abs(j - L);
        if (to_even <= w) {
            out[j] = 0.0;
        } else if (to_odd <= w) {
            out[j] = theta;
        }
    }
    return out;
}

/// Theta_n = arg sum_l e^{i l(l-k) pi/k} e^{i 2 pi l n/k} / sqrt(k).
inline std::vector<double> cat_phases(int k) {
    if (k < 2) {
        throw InputError("cat preparation needs k >= 2");
    }
    std::vector<double> out;
    for (int n = 0; n < k; n++) {
        cplx sum = 0;
        for (int l = 0; l < k; l++) {
            sum += expi(kPi * l * (l - k) / k) * expi(2 * kPi * l * n / k);
        }
        sum /= std::sqrt(static_cast<double>(k));
        if (std::abs(std::abs(sum) - 1) > 1e-8) {
            throw NumericError("cat phase sum not unimodular");
        }
        out.push_back(std::arg(sum));
    }
    return out;
}

/// xi_l = p_l + p_{l+k} + [l = 0] p_{2k}.
inline std::vector<cplx> rotation_decomposition(const Polynomial &p, int k) {
    if (static_cast<int>(p.degree()) > 2 * k) {
        throw InputError("rotation decomposition needs deg P <= 2k");
    }
    std::vector<cplx> xi(k);
    for (int l = 0; l < k; l++) {
        xi[l] = p[l] + p[l + k] + (l == 0 ? p[2 * k] : cplx{0.0});
    }
    return xi;
}

/// Per-residue phases of a mod-k style spec.
inline std::vector<double> residue_phases(const GateSpec &spec) {
    switch (spec.kind) {
        case GateKind::two_mode_mod_k:
            return spec.phases.empty() ? qudit_cphase_phases(spec.d) : spec.phases;
        case GateKind::rotation_code_phase:
            return rotation_code_phases(spec.L, spec.theta, spec.check_window);
        case GateKind::cat_prep:
            return cat_phases(spec.k);
        default:
            return spec.phases;
    }
}

inline int modulus_of(const GateSpec &spec) {
    switch (spec.kind) {
        case GateKind::snap:
            return spec.n_max + 1;
        case GateKind::two_mode_mod_k:
            return 2 * spec.d - 1;
        case GateKind::rotation_code_phase:
            return 2 * spec.L;
        default:
            return spec.k;
    }
}

/// Kernel polynomial -> completion -> GQSP angles with phase step 2 pi / k.
inline CompiledGate synth_modk(const GateSpec &spec, double chi = 1.0) {
    GateSpec s = spec;
    s.k = modulus_of(spec);
    s.phases = residue_phases(s);
    if (s.k < 1) {
        throw InputError("modulus must be positive");
    }
    if (static_cast<int>(s.phases.size()) != s.k) {
        throw InputError("expected " + std::to_string(s.k) + " phases, got " + std::to_string(s.phases.size()));
    }
    for (double t : s.phases) {
        if (!std::isfinite(t)) {
            throw InputError("phases must be finite");
        }
    }
    if (s.kind == GateKind::snap) {
        s.n_max = s.k - 1;
    }
    Polynomial p = modk_polynomial(s.phases);
    Polynomial q = complementary_polynomial(p, Convention::gqsp);
    PolynomialPair pair = make_pair(p, q);
    const double step = 2 * kPi / s.k;
    CompiledGate g;
    g.backend = Backend::dispersive;
    g.angle_sets.push_back(gqsp_angles(pair, step, static_cast<size_t>(2 * s.k)));
    g.polynomials.push_back(pair);
    g.round_duration = step / chi;
    g.total_time = 2 * s.k * step / chi;
    g.spec = s;
    return g;
}

/// SNAP on levels 0..n_max as a mod-(n_max+1) gate.
inline CompiledGate snap_compile(const std::vector<double> &thetas, double chi = 1.0) {
    GateSpec spec;
    spec.kind = GateKind::snap;
    spec.n_max = static_cast<int>(thetas.size()) - 1;
    spec.k = spec.n_max + 1;
    spec.phases = thetas;
    return synth_modk(spec, chi);
}

inline CompiledGate two_mode_compile(int d, const std::vector<double> &phases = {}, double chi = 1.0) {
    GateSpec spec;
    spec.kind = GateKind::two_mode_mod_k;
    spec.d = d;
    spec.phases = phases.empty() ? qudit_cphase_phases(d) : phases;
    return synth_modk(spec, chi);
}

inline CompiledGate rotation_code_compile(int L, double theta, double chi = 1.0) {
    GateSpec spec;
    spec.kind = GateKind::rotation_code_phase;
    spec.L = L;
    spec.theta = theta;
    return synth_modk(spec, chi);
}

inline CompiledGate cat_compile(int k, double chi = 1.0) {
    GateSpec spec;
    spec.kind = GateKind::cat_prep;
    spec.k = k;
    return synth_modk(spec, chi);
}

/// Forward hybridization rounds [phase fix, Hadamard] plus their inverses.
struct Hybridization {
    std::vector<AngleSet> forward;
    std::vector<AngleSet> inverse;
    std::vector<PolynomialPair> forward_pairs;
    std::vector<PolynomialPair> inverse_pairs;
    // G_H(e^{i Phi_n}) = e^{i Upsilon_n} e^{i zeta_n} / sqrt2.
    std::vector<double> zeta;
};

namespace detail {

inline PolynomialPair jc_pair(const Polynomial &f) {
    return make_pair(f, complementary_polynomial(f, Convention::oqsp));
}

inline AngleSet jc_angles(const PolynomialPair &pair, const JcKernelSet &set) {
    return oqsp_angles(pair, jc_round_phase(set.n_max), static_cast<size_t>(set.degree()));
}

}  // namespace detail

/// Maps |n,e> to a phase times |down_n> for n <= n_max.
inline Hybridization jc_hybridization(const JcKernelSet &set) {
    Hybridization hyb;
    const PolynomialPair had = detail::jc_pair(hadamard_polynomial(set));
    std::vector<double> fix, unfix;
    for (int n = 0; n <= set.n_max; n++) {
        cplx gv = eval_on_circle(had.q, set.phase_nodes[n]);
        double zeta = std::remainder(std::arg(gv) - set.upsilon[n], 2 * kPi);
        hyb.zeta.push_back(zeta);
        fix.push_back(-zeta / 2);
        unfix.push_back(zeta / 2);
    }
    const PolynomialPair fix_pair = detail::jc_pair(jc_snap_polynomial(fix, set));
    const PolynomialPair unfix_pair = detail::jc_pair(jc_snap_polynomial(unfix, set));
    const PolynomialPair had_inv{had.p, had.q * cplx{-1.0}, had.defect};
    hyb.forward_pairs = {fix_pair, had};
    hyb.inverse_pairs = {had_inv, unfix_pair};
    for (const auto &pr : hyb.forward_pairs) {
        hyb.forward.push_back(detail::jc_angles(pr, set));
    }
    for (const auto &pr : hyb.inverse_pairs) {
        hyb.inverse.push_back(detail::jc_angles(pr, set));
    }
    return hyb;
}

/// Kernels and hybridization for one n_max, reusable across many gates.
struct JcContext {
    JcKernelSet kernels;
    Hybridization hybridization;
};

inline JcContext make_jc_context(int n_max) {
    JcContext ctx;
    ctx.kernels = jc_kernels(n_max);
    ctx.hybridization = jc_hybridization(ctx.kernels);
    return ctx;
}

/// Five-round JC SNAP with a pre-built context.
inline CompiledGate jc_snap_compile(const std::vector<double> &thetas, const JcContext &ctx, double lam = 1.0) {
    const JcKernelSet &set = ctx.kernels;
    if (static_cast<int>(thetas.size()) != set.n_max + 1) {
        throw InputError("expected n_max+1 phases");
    }
    const PolynomialPair mid = detail::jc_pair(jc_snap_polynomial(thetas, set));
    CompiledGate g;
    g.backend = Backend::jc;
    const auto &hyb = ctx.hybridization;
    g.angle_sets = {hyb.forward[0], hyb.forward[1], detail::jc_angles(mid, set), hyb.inverse[0], hyb.inverse[1]};
    g.polynomials = {hyb.forward_pairs[0], hyb.forward_pairs[1], mid, hyb.inverse_pairs[0], hyb.inverse_pairs[1]};
    g.round_duration = jc_round_phase(set.n_max) / lam;
    g.total_time = 5.0 * set.degree() * g.round_duration;
    g.spec.kind = GateKind::jc_snap;
    g.spec.n_max = set.n_max;
    g.spec.phases = thetas;
    g.h = set.h;
    g.s = set.s;
    return g;
}

inline CompiledGate jc_snap_compile(const std::vector<double> &thetas, int n_max, double lam = 1.0) {
    return jc_snap_compile(thetas, make_jc_context(n_max), lam);
}

/// 5 M T with M = 4 s n_max + 2 h and T = pi / (2 lambda sqrt(n_max+2)).
inline double jc_total_time(int n_max, int h, int s, double lam = 1.0) {
    return 5.0 * (4.0 * s * n_max + 2.0 * h) * kPi / (2 * lam * std::sqrt(n_max + 2.0));
}

inline CompiledGate compile_gate(const GateSpec &spec) {
    if (spec.kind == GateKind::jc_snap) {
        if (spec.n_max < 0 || static_cast<int>(spec.phases.size()) != spec.n_max + 1) {
            throw InputError("jc_snap needs n_max and n_max+1 phases");
        }
        return jc_snap_compile(spec.phases, spec.n_max);
    }
    if (spec.kind == GateKind::snap) {
        if (spec.phases.empty()) {
            throw InputError("snap needs phases");
        }
        if (spec.n_max >= 0 && static_cast<int>(spec.phases.size()) != spec.n_max + 1) {
            throw InputError("snap needs n_max+1 phases");
        }
        return snap_compile(spec.phases);
    }
    if (spec.kind == GateKind::two_mode_mod_k && spec.d < 2) {
        throw InputError("two_mode_mod_k needs d >= 2");
    }
    if (spec.kind == GateKind::rotation_code_phase && spec.L < 1) {
        throw InputError("rotation_code_phase needs L >= 1");
    }
    if ((spec.kind == GateKind::mod_k || spec.kind == GateKind::cat_prep) && spec.k < 1) {
        throw InputError("k must be positive");
    }
    if (spec.kind == GateKind::cat_prep && spec.k < 2) {
        throw InputError("cat_prep needs k >= 2");
    }
    return synth_modk(spec);
}

/// Default truncation used when simulating a compiled gate.
inline int default_truncation(const CompiledGate &g) {
    if (g.backend == Backend::jc) {
        return g.spec.n_max + 2;
    }
    if (g.spec.kind == GateKind::two_mode_mod_k) {
        return g.spec.d + 2;
    }
    return 2 * g.spec.k + 2;
}

inline SequenceResult simulate(const CompiledGate &g, int n_trunc = 0) {
    if (n_trunc <= 0) {
        n_trunc = default_truncation(g);
    }
    if (g.backend == Backend::jc) {
        SimConfig cfg;
        cfg.n_trunc = n_trunc;
        cfg.lam = jc_round_phase(g.spec.n_max) / g.round_duration;
        return run_jc_sequence(g.angle_sets, cfg);
    }
    const double chi = g.angle_sets.at(0).phase_step / g.round_duration;
    if (g.spec.kind == GateKind::two_mode_mod_k) {
        return run_dispersive_sequence(g.angle_sets.at(0), two_mode_numbers(n_trunc), chi);
    }
    return run_dispersive_sequence(g.angle_sets.at(0), single_mode_numbers(n_trunc), chi);
}

struct VerifyReport {
    double infidelity = 0;
    double leakage = 0;
    std::vector<double> node_errors;
    double normalization_defect = 0;
    double total_time = 0;

    double max_node_error() const {
        double m = 0;
        for (double e : node_errors) {
            m = std::max(m, e);
        }
        return m;
    }
};

/// Simulates the gate and scores it against its own spec: levels and target
/// phases follow the gate kind (residue phases on 0..n_trunc-2 for the
/// dispersive family, the qudit span for two-mode gates, 0..n_max with the
/// qubit in |e> for JC).
inline VerifyReport verify(const CompiledGate &g, int n_trunc = 0) {
    if (n_trunc <= 0) {
        n_trunc = default_truncation(g);
    }
    const SequenceResult run = simulate(g, n_trunc);
    VerifyReport rep;
    rep.total_time = g.total_time;
    std::vector<int> levels;
    std::vector<cplx> target;
    int ref = kG;
    if (g.backend == Backend::jc) {
        ref = kE;
        for (int n = 0; n <= g.spec.n_max; n++) {
            levels.push_back(n);
            target.push_back(expi(g.spec.phases[n]));
        }
    } else if (g.spec.kind == GateKind::two_mode_mod_k) {
        for (int a = 0; a < g.spec.d; a++) {
            for (int b = 0; b < g.spec.d; b++) {
                levels.push_back(a * n_trunc + b);
                target.push_back(expi(g.spec.phases[(a + b) % g.spec.k]));
            }
        }
    } else {
        for (int n = 0; n <= n_trunc - 2; n++) {
            levels.push_back(n);
            target.push_back(expi(g.spec.phases[n % g.spec.k]));
        }
    }
    rep.infidelity = 1 - gate_fidelity(run.op, levels, target, ref);
    rep.leakage = qubit_leakage(run.op, levels, ref);

    if (g.backend == Backend::jc) {
        const AngleSet &mid = g.angle_sets.at(2);
        const auto nodes = jc_phase_nodes(g.spec.n_max);
        const double ups_scale = mid.rounds() / 2.0;
        for (int n = 0; n <= g.spec.n_max; n++) {
            Mat2 u = reconstruct_sequence(mid, nodes[n]);
            rep.node_errors.push_back(std::abs(u(0, 0) * expi(-ups_scale * nodes[n]) - expi(g.spec.phases[n])));
        }
    } else {
        const AngleSet &a = g.angle_sets.at(0);
        for (int n = 0; n < g.spec.k; n++) {
            Mat2 u = reconstruct_sequence(a, n * a.phase_step);
            rep.node_errors.push_back(std::abs(u(0, 0) - expi(g.spec.phases[n])));
        }
    }
    for (const auto &pr : g.polynomials) {
        rep.normalization_defect = std::max(
            rep.normalization_defect, normalization_defect(pr.p, pr.q, default_grid_size(pr.p.degree() + pr.q.degree())));
    }
    return rep;
}

}  // namespace bqsp

#endif
