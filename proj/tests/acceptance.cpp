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

// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bqsp/baseline.hpp"
#include "bqsp/gates.hpp"
#include "bqsp/nonunitary.hpp"
#include "bqsp/wigner.hpp"

using namespace bqsp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<double> random_phases(std::mt19937_64 &rng, int count) {
    std::vector<double> out(count);
    for (auto &t : out) {
        t = 2 * kPi * uniform01(rng);
    }
    return out;
}

std::string fmt(const char *name, double v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s=%.3e ", name, v);
    return buf;
}

std::vector<double> node_angles(int k) {
    std::vector<double> out;
    for (int n = 0; n < k; n++) {
        out.push_back(2 * kPi * n / k);
    }
    return out;
}

Outcome kernel_nodes() {
    std::mt19937_64 rng(101);
    double node = 0, sup = 0;
    for (int k = 2; k <= 8; k++) {
        for (int t = 0; t < 200; t++) {
            auto th = random_phases(rng, k);
            Polynomial p = modk_polynomial(th);
            for (int n = 0; n < k; n++) {
                node = std::max(node, std::abs(p(root_of_unity(k, n)) - expi(th[n])));
            }
            sup = std::max(sup, sup_on_circle(p, 4096, node_angles(k)));
        }
    }
    return {node <= 1e-10 && sup <= 1 + 1e-9, fmt("max_node_error", node) + fmt("max_sup", sup)};
}

Outcome completion_round_trip() {
    std::mt19937_64 rng(101);
    double defect = 0, recon = 0;
    for (int k = 2; k <= 8; k++) {
        for (int t = 0; t < 200; t++) {
            Polynomial p = modk_polynomial(random_phases(rng, k));
            PolynomialPair pair = make_pair(p, complementary_polynomial(p, Convention::gqsp));
            defect = std::max(defect, normalization_defect(pair, 4096));
            AngleSet a = gqsp_angles(pair, 2 * kPi / k, static_cast<size_t>(2 * k));
            recon = std::max(recon, reconstruction_error(a, pair, 512));
        }
    }
    return {defect <= 1e-9 && recon <= 1e-8, fmt("max_defect", defect) + fmt("max_reconstruction", recon)};
}

Outcome dispersive_snap() {
    std::mt19937_64 rng(103);
    double inf = 0, leak = 0, time_err = 0;
    for (int t = 0; t < 50; t++) {
        CompiledGate g = snap_compile(random_phases(rng, 5));
        VerifyReport r = verify(g);
        inf = std::max(inf, r.infidelity);
        leak = std::max(leak, r.leakage);
        time_err = std::max(time_err, std::abs(g.total_time - 4 * kPi));
    }
    return {inf <= 1e-6 && leak <= 1e-6 && time_err <= 1e-12,
            fmt("max_infidelity", inf) + fmt("max_leakage", leak) + fmt("time_error", time_err)};
}

Outcome eparity() {
    const double theta = kPi / 3;
    GateSpec s;
    s.kind = GateKind::mod_k;
    s.k = 2;
    s.phases = {theta, -theta};
    CompiledGate g = compile_gate(s);
    // Operator check on levels 0..7 against e^{i theta} (even), e^{-i theta} (odd).
    const int n_max = 7;
    HybridOperator op = simulate(g, n_max + 2).op;
    std::vector<cplx> target;
    for (int n = 0; n <= n_max; n++) {
        target.push_back(expi(n % 2 == 0 ? theta : -theta));
    }
    const double inf = 1 - gate_fidelity(op, target, n_max);
    Polynomial p({std::cos(theta) / 2, kI * std::sin(theta), std::cos(theta) / 2});
    Polynomial q({std::cos(theta) / 2, 0.0, -std::cos(theta) / 2});
    const double defect = normalization_defect(p, q, 4096);
    return {inf <= 1e-10 && defect <= 1e-14, fmt("infidelity", inf) + fmt("closed_form_pair_defect", defect)};
}

Outcome qudit_cphase() {
    CompiledGate g = two_mode_compile(3);
    const int nt = 5;
    const auto u = simulate(g, nt).op.matrix;
    cplx tr = 0;
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            cplx want = expi(2 * kPi * a * b / 3) * expi(kPi * (a * a + b * b) / 3);
            Eigen::Index idx = hybrid_index(a * nt + b, kG);
            tr += std::conj(want) * u(idx, idx);
        }
    }
    const double fid = std::norm(tr) / 81;
    const double time_err = std::abs(g.total_time - 4 * kPi);
    return {fid >= 1 - 1e-6 && time_err <= 1e-12, fmt("infidelity", 1 - fid) + fmt("time_error", time_err)};
}

Outcome cat_generation() {
    const int k = 5, nt = 64;
    const double alpha = 4;
    CompiledGate g = cat_compile(k);
    Qumode in = coherent_state(alpha, nt).amplitudes;
    Qumode out = qubit_branch(apply(simulate(g, nt).op, attach_qubit(in, kG)), kG);
    Qumode target = Qumode::Zero(nt);
    for (int l = 0; l < k; l++) {
        target += expi(kPi * l * (l - k) / k) * coherent_state(alpha * expi(2 * kPi * l / k), nt).amplitudes;
    }
    const double fid = state_fidelity(out, target);
    double xi_err = 0;
    for (const auto &x : rotation_decomposition(g.polynomials.at(0).p, k)) {
        xi_err = std::max(xi_err, std::abs(std::abs(x) - 1 / std::sqrt(5.0)));
    }
    return {fid >= 1 - 1e-6 && xi_err <= 1e-9, fmt("infidelity", 1 - fid) + fmt("xi_modulus_error", xi_err)};
}

Outcome jc_pipeline() {
    const int n_max = 3;
    JcContext ctx = make_jc_context(n_max);
    std::mt19937_64 rng(107);
    SimConfig cfg;
    cfg.n_trunc = n_max + 2;
    double inf = 0, leak = 0, ratio = 0, base_min = 1;
    double qsp_time = 0;
    for (int t = 0; t < 50; t++) {
        auto th = random_phases(rng, n_max + 1);
        CompiledGate g = jc_snap_compile(th, ctx);
        VerifyReport r = verify(g, cfg.n_trunc);
        inf = std::max(inf, r.infidelity);
        leak = std::max(leak, r.leakage);
        qsp_time = g.total_time;
        // Baseline at the same gate time: two pi pulses of length pi / Omega.
        MultiToneResult mt = jc_multitone_snap(th, 2 * kPi / g.total_time, cfg);
        const double base = score_snap(mt.op, th, Backend::jc).infidelity;
        base_min = std::min(base_min, base);
        ratio = std::max(ratio, r.infidelity / base);
    }
    const double time_err = std::abs(jc_total_time(n_max, 34, 2) - 230 * kPi / std::sqrt(5.0));
    return {inf <= 1e-5 && leak <= 1e-5 && time_err <= 1e-12 && ratio <= 1e-2,
            fmt("max_infidelity", inf) + fmt("max_leakage", leak) + fmt("time_230_error", time_err) +
                fmt("compiled_time", qsp_time) + fmt("min_baseline_infidelity", base_min) +
                fmt("max_qsp_over_baseline", ratio)};
}

Outcome baseline_threshold() {
    const int n_max = 4;
    std::mt19937_64 rng(103);
    SimConfig cfg;
    cfg.n_trunc = n_max + 2;
    double worst = 1;
    const int points = 8;
    for (int t = 0; t < 50; t++) {
        auto th = random_phases(rng, n_max + 1);
        for (int i = 1; i <= points; i++) {
            const double time = 8 * kPi * i / points;
            MultiToneResult mt = dispersive_multitone_snap(th, 2 * kPi / time, cfg);
            worst = std::min(worst, score_snap(mt.op, th, Backend::dispersive).infidelity);
        }
    }
    return {worst > 1e-2, fmt("min_infidelity", worst)};
}

Outcome nla() {
    const double gain = 2;
    const int n_max = 7;
    KrausGate g = kraus_compile(nla_amplitudes(gain, n_max));
    Qumode in = truncated_coherent(0.5, n_max + 1);
    MeasurementOutcome o = apply_and_measure(in, g, BranchRequest::g);
    double p_expected = 0;
    for (int n = 0; n <= n_max; n++) {
        p_expected += std::pow(gain, 2.0 * (n - n_max)) * std::norm(in(n));
    }
    const double fid = state_fidelity(o.post_state, truncated_coherent(gain * 0.5, n_max + 1));
    const double p_err = std::abs(o.probability - p_expected);
    const double vac = apply_and_measure(fock_state(0, n_max + 1), g, BranchRequest::g).probability;
    const double vac_err = std::abs(vac - std::pow(2.0, -14));
    Qumode cat = truncated_coherent(0.8, n_max + 1) + truncated_coherent(-0.8, n_max + 1);
    cat /= cat.norm();
    WignerGrid grid;
    grid.n_points = 61;
    grid.x_min = grid.p_min = -3;
    grid.x_max = grid.p_max = 3;
    const double w_before = wigner(cat, grid).minCoeff();
    const double w_after = wigner(apply_and_measure(cat, g, BranchRequest::g).post_state, grid).minCoeff();
    return {fid >= 1 - 1e-6 && p_err <= 1e-8 && vac_err <= 1e-12 && w_after < w_before,
            fmt("infidelity", 1 - fid) + fmt("p_g_error", p_err) + fmt("vacuum_p_g_error", vac_err) +
                fmt("min_wigner_before", w_before) + fmt("min_wigner_after", w_after)};
}

Outcome boson_number() {
    const int n_max = 4;
    double completeness = 0;
    for (int nb = 0; nb <= n_max; nb++) {
        completeness =
            std::max(completeness, realized_kraus(kraus_compile(parity_projector_amplitudes(n_max + 1, nb, n_max)))
                                       .completeness_error);
    }
    completeness = std::max(completeness,
                            realized_kraus(kraus_compile(parity_projector_amplitudes(2, 1, 3))).completeness_error);
    BosonNumberMeter meter(n_max);
    double fock_dev = 0;
    bool fock_ok = true;
    for (int m = 0; m <= n_max; m++) {
        BosonNumberResult r = meter.measure(fock_state(m, n_max + 1), 7);
        fock_ok = fock_ok && r.n == m;
        double p = 1;
        for (const auto &o : r.trajectory) {
            p *= o.probability;
        }
        fock_dev = std::max(fock_dev, std::abs(1 - p));
    }
    Qumode psi(n_max + 1);
    psi << 0.4, cplx(0.0, 0.5), 0.3, std::sqrt(1 - 0.16 - 0.25 - 0.09 - 0.2), cplx(-std::sqrt(0.2), 0.0);
    const int trials = 10000;
    std::vector<int> counts(n_max + 1, 0);
    for (int t = 0; t < trials; t++) {
        counts[meter.measure(psi, 20260101ull + t).n]++;
    }
    double worst_z = 0;
    for (int n = 0; n <= n_max; n++) {
        const double p = std::norm(psi(n));
        const double sigma = std::sqrt(trials * p * (1 - p));
        worst_z = std::max(worst_z, std::abs(counts[n] - trials * p) / sigma);
    }
    return {completeness <= 1e-8 && fock_ok && fock_dev <= 1e-10 && worst_z <= 3,
            fmt("completeness_error", completeness) + fmt("fock_probability_deviation", fock_dev) +
                fmt("max_born_z", worst_z)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"kernel node exactness", kernel_nodes},
        {"completion and angle round trip", completion_round_trip},
        {"dispersive SNAP n_max=4", dispersive_snap},
        {"eParity reproduction", eparity},
        {"qudit CPhase d=3", qudit_cphase},
        {"cat generation k=5", cat_generation},
        {"JC pipeline n_max=3", jc_pipeline},
        {"multi-tone baseline threshold", baseline_threshold},
        {"noiseless linear amplification", nla},
        {"boson-number measurement", boson_number},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
