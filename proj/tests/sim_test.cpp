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

#include <gtest/gtest.h>

#include "bqsp/gates.hpp"
#include "bqsp/hilbert.hpp"
#include "bqsp/wigner.hpp"
#include "test_util.hpp"

using namespace bqsp;
using namespace bqsp_test;

namespace {

Eigen::Matrix2cd qubit_op(cplx gg, cplx ge, cplx eg, cplx ee) {
    Eigen::Matrix2cd m;
    m << gg, ge, eg, ee;
    return m;
}

Eigen::MatrixXcd number_op(int n_trunc) {
    Eigen::MatrixXcd a = annihilation(n_trunc);
    return a.adjoint() * a;
}

WignerGrid point(double x, double p) {
    WignerGrid g;
    g.x_min = g.x_max = x;
    g.p_min = g.p_max = p;
    g.n_points = 1;
    return g;
}

}  // namespace

TEST(Hilbert, controlled_phase_matches_hamiltonian) {
    const int nt = 6;
    const double chi = 0.7, t = 1.3;
    Eigen::MatrixXcd h = -chi * mode_qubit(number_op(nt), qubit_op(1, 0, 0, 0));
    Eigen::MatrixXcd want = expm_evolution(h, t);
    EXPECT_LT((controlled_phase(chi * t, single_mode_numbers(nt)).matrix - want).norm(), 1e-12);
}

TEST(Hilbert, jc_evolution_matches_hamiltonian) {
    const int nt = 6;
    const double lam = 1.0, t = 0.9;
    Eigen::MatrixXcd a = annihilation(nt);
    // sigma_+ = |e><g|, rows and columns ordered (g, e).
    Eigen::MatrixXcd h = 0.5 * lam * (mode_qubit(a, qubit_op(0, 0, 1, 0)) + mode_qubit(a.adjoint(), qubit_op(0, 1, 0, 0)));
    // The top |n_trunc-1, e> couples outside the truncation; drop that term.
    const Eigen::Index top_e = hybrid_index(nt - 1, kE);
    h.row(top_e).setZero();
    h.col(top_e).setZero();
    SimConfig cfg;
    cfg.n_trunc = nt;
    EXPECT_LT((jc_evolution(lam * t, cfg).matrix - expm_evolution(h, t)).norm(), 1e-12);
}

TEST(Hilbert, jc_dressed_eigenphases) {
    SimConfig cfg;
    cfg.n_trunc = 5;
    const double lam_t = 0.8;
    auto u = jc_evolution(lam_t, cfg).matrix;
    for (int n = 0; n < 4; n++) {
        const double phi = lam_t * std::sqrt(n + 1.0);
        auto down = dressed_state(n, false, 5);
        auto up = dressed_state(n, true, 5);
        EXPECT_LT((u * down - expi(phi / 2) * down).norm(), 1e-14);
        EXPECT_LT((u * up - expi(-phi / 2) * up).norm(), 1e-14);
    }
}

TEST(Hilbert, qubit_drive_equals_rotation) {
    for (auto [t, p, l] : {std::tuple{0.3, 1.1, -0.4}, std::tuple{1.5, -2.0, 0.9}, std::tuple{0.0, 0.0, 0.0}}) {
        EXPECT_LT((qubit_drive_block(t, p, l) - gqsp_rotation(t, p, l)).norm(), 1e-14);
    }
}

TEST(Hilbert, detuning_matches_hamiltonian) {
    SimConfig cfg;
    cfg.n_trunc = 3;
    Eigen::MatrixXcd h = -mode_qubit(Eigen::MatrixXcd::Identity(3, 3), qubit_op(1, 0, 0, -1));
    EXPECT_LT((detuning_rotation(0.6, cfg).matrix - expm_evolution(h, 0.6)).norm(), 1e-12);
}

TEST(Hilbert, gate_fidelity_of_identity) {
    HybridOperator id{Eigen::MatrixXcd::Identity(10, 10), true};
    std::vector<cplx> ones(3, 1.0);
    EXPECT_NEAR(gate_fidelity(id, ones, 2), 1, 1e-15);
    EXPECT_NEAR(qubit_leakage(id, 2), 0, 1e-15);
    EXPECT_THROW(gate_fidelity(id, std::vector<cplx>(5, 1.0), 4), InputError);
}

TEST(Hilbert, coherent_state_guard) {
    EXPECT_THROW(coherent_state(4.0, 20), InputError);
    auto c = coherent_state(1.0, 30);
    EXPECT_NEAR(c.amplitudes.norm(), 1, 1e-14);
    EXPECT_LT(c.truncation_error, 1e-12);
}

TEST(Wigner, vacuum_and_fock_one) {
    EXPECT_NEAR(wigner(fock_state(0, 6), point(0, 0))(0, 0), 2 / kPi, 1e-12);
    EXPECT_NEAR(wigner(fock_state(1, 6), point(0, 0))(0, 0), -2 / kPi, 1e-12);
}

TEST(Wigner, coherent_state_gaussian) {
    const cplx alpha(0.8, -0.3);
    Qumode psi = coherent_state(alpha, 40).amplitudes;
    for (auto [x, p] : {std::pair{0.8, -0.3}, std::pair{0.0, 0.0}, std::pair{1.2, 0.4}}) {
        double want = 2 / kPi * std::exp(-2 * std::norm(cplx(x, p) - alpha));
        EXPECT_NEAR(wigner(psi, point(x, p))(0, 0), want, 1e-10);
    }
}

TEST(Wigner, matches_displaced_parity) {
    const int big = 60;
    Qumode psi = Qumode::Zero(big);
    psi(0) = 0.6;
    psi(2) = cplx(0.0, 0.48);
    psi(3) = 0.64;
    Eigen::MatrixXcd a = annihilation(big);
    Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 0; n < big; n++) {
        parity(n, n) = n % 2 == 0 ? 1.0 : -1.0;
    }
    for (cplx beta : {cplx(0.3, 0.2), cplx(-0.5, 0.7)}) {
        Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
        Eigen::MatrixXcd d = gen.exp();
        cplx want = 2 / kPi * psi.dot(d * parity * d.adjoint() * psi);
        Qumode small = psi.head(6);
        EXPECT_NEAR(wigner(small, point(beta.real(), beta.imag()))(0, 0), want.real(), 1e-9);
    }
}

TEST(Wigner, csv_layout) {
    WignerGrid g;
    g.n_points = 2;
    g.x_min = g.p_min = -1;
    g.x_max = g.p_max = 1;
    std::ostringstream os;
    write_wigner_csv(os, wigner(fock_state(0, 3), g), g);
    std::string text = os.str();
    EXPECT_EQ(text.rfind("x,p,w\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(GateLibrary, k_one_is_identity) {
    GateSpec s;
    s.kind = GateKind::mod_k;
    s.k = 1;
    s.phases = {0.0};
    auto rep = verify(compile_gate(s));
    EXPECT_LT(rep.infidelity, 1e-10);
}

TEST(GateLibrary, eparity_operator) {
    const double theta = kPi / 3;
    GateSpec s;
    s.kind = GateKind::mod_k;
    s.k = 2;
    s.phases = {theta, -theta};
    CompiledGate g = compile_gate(s);
    const int nt = 8;
    auto u = simulate(g, nt).op.matrix;
    for (int n = 0; n < nt; n++) {
        cplx want = expi(n % 2 == 0 ? theta : -theta);
        EXPECT_LT(std::abs(u(hybrid_index(n, kG), hybrid_index(n, kG)) - want), 1e-10);
        EXPECT_LT(std::abs(u(hybrid_index(n, kE), hybrid_index(n, kG))), 1e-10);
    }
}

TEST(GateLibrary, modk_random_phases) {
    std::mt19937_64 rng(23);
    GateSpec s;
    s.kind = GateKind::mod_k;
    s.k = 5;
    s.phases = random_phases(rng, 5);
    CompiledGate g = compile_gate(s);
    auto rep = verify(g);
    EXPECT_LT(rep.infidelity, 1e-6);
    EXPECT_LT(rep.leakage, 1e-8);
    EXPECT_NEAR(g.total_time, 4 * kPi, 1e-12);
    EXPECT_EQ(g.angle_sets[0].rounds(), 10u);
}

TEST(GateLibrary, snap_wraps_modulo_k) {
    std::mt19937_64 rng(29);
    auto th = random_phases(rng, 5);
    CompiledGate g = snap_compile(th);
    EXPECT_EQ(g.spec.k, 5);
    auto u = simulate(g, 10).op.matrix;
    cplx got = u(hybrid_index(7, kG), hybrid_index(7, kG));
    EXPECT_LT(std::abs(got - expi(th[2])), 1e-9);
}

TEST(GateLibrary, qudit_cphase_phases) {
    auto th = qudit_cphase_phases(2);
    ASSERT_EQ(th.size(), 3u);
    EXPECT_NEAR(th[0], 0, 1e-15);
    EXPECT_NEAR(th[1], kPi / 2, 1e-15);
    EXPECT_NEAR(std::remainder(th[2], 2 * kPi), 0, 1e-12);
}

TEST(GateLibrary, qudit_cphase_d3) {
    CompiledGate g = two_mode_compile(3);
    EXPECT_NEAR(g.total_time, 4 * kPi, 1e-12);
    const int nt = 5;
    auto u = simulate(g, nt).op.matrix;
    cplx tr = 0;
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            cplx want = expi(2 * kPi * a * b / 3) * expi(kPi * (a * a + b * b) / 3);
            Eigen::Index idx = hybrid_index(a * nt + b, kG);
            tr += std::conj(want) * u(idx, idx);
        }
    }
    EXPECT_GT(std::norm(tr) / 81, 1 - 1e-6);
}

TEST(GateLibrary, rotation_code_phases) {
    auto l1 = rotation_code_phases(1, 0.7);
    EXPECT_EQ(l1, (std::vector<double>{0.0, 0.7}));
    auto l2 = rotation_code_phases(2, 0.7);
    EXPECT_EQ(l2, (std::vector<double>{0.0, 0.0, 0.7, 0.0}));
    auto l3 = rotation_code_phases(3, 0.7);
    EXPECT_EQ(l3, (std::vector<double>{0.0, 0.0, 0.7, 0.7, 0.7, 0.0}));
}

TEST(GateLibrary, rotation_code_logical_action) {
    const double theta = 1.1;
    CompiledGate g = rotation_code_compile(2, theta);
    const int nt = 7;
    auto u = simulate(g, nt).op;
    Qumode zero = Qumode::Zero(nt), one = Qumode::Zero(nt);
    zero(0) = zero(4) = 1 / std::sqrt(2.0);
    one(2) = 1;
    Qumode z_out = qubit_branch(apply(u, attach_qubit(zero, kG)), kG);
    Qumode o_out = qubit_branch(apply(u, attach_qubit(one, kG)), kG);
    EXPECT_GT(std::norm(zero.dot(z_out)), 1 - 1e-6);
    EXPECT_GT(std::norm(one.dot(o_out)), 1 - 1e-6);
    EXPECT_LT(std::abs(std::arg(one.dot(o_out) / zero.dot(z_out)) - theta), 1e-6);
}

TEST(GateLibrary, cat_phases_k2) {
    auto th = cat_phases(2);
    EXPECT_NEAR(th[0], -kPi / 4, 1e-12);
    EXPECT_NEAR(th[1], kPi / 4, 1e-12);
}

TEST(GateLibrary, rotation_decomposition_eparity) {
    const double theta = 0.9;
    Polynomial p({std::cos(theta) / 2, kI * std::sin(theta), std::cos(theta) / 2});
    auto xi = rotation_decomposition(p, 2);
    EXPECT_LT(std::abs(xi[0] - std::cos(theta)), 1e-15);
    EXPECT_LT(std::abs(xi[1] - kI * std::sin(theta)), 1e-15);
    EXPECT_THROW(rotation_decomposition(Polynomial::monomial(5), 2), InputError);
}

TEST(GateLibrary, rotation_decomposition_reconstructs_nodes) {
    CompiledGate g = cat_compile(5);
    const Polynomial &p = g.polynomials[0].p;
    auto xi = rotation_decomposition(p, 5);
    for (int n = 0; n < 5; n++) {
        cplx sum = 0;
        for (int l = 0; l < 5; l++) {
            sum += xi[l] * root_of_unity(5, static_cast<long long>(l) * n);
        }
        EXPECT_LT(std::abs(sum - p(root_of_unity(5, n))), 1e-9);
    }
    for (const auto &x : xi) {
        EXPECT_NEAR(std::abs(x), 1 / std::sqrt(5.0), 1e-9);
    }
}

TEST(GateLibrary, corrupted_angle_fails_verification) {
    std::mt19937_64 rng(31);
    CompiledGate g = snap_compile(random_phases(rng, 4));
    g.angle_sets[0].thetas[3] += 0.1;
    EXPECT_GT(verify(g).infidelity, 1e-4);
}

TEST(GateLibrary, input_validation) {
    GateSpec s;
    s.kind = GateKind::mod_k;
    s.k = 3;
    s.phases = {0.0, 1.0};
    EXPECT_THROW(compile_gate(s), InputError);
    s.phases = {0.0, 1.0, std::nan("")};
    EXPECT_THROW(compile_gate(s), InputError);
    EXPECT_THROW(gate_kind_from_string("nope"), InputError);
}

TEST(JcPipeline, hybridization_maps_to_down_state) {
    JcContext ctx = make_jc_context(2);
    SimConfig cfg;
    cfg.n_trunc = 4;
    auto u = run_jc_sequence(ctx.hybridization.forward, cfg).op.matrix;
    for (int n = 0; n <= 2; n++) {
        Eigen::VectorXcd out = u.col(hybrid_index(n, kE));
        EXPECT_GT(std::norm(dressed_state(n, false, 4).dot(out)), 1 - 1e-9) << n;
    }
}

TEST(JcPipeline, snap_on_excited_branch) {
    std::mt19937_64 rng(37);
    for (int n_max = 0; n_max <= 2; n_max++) {
        auto th = random_phases(rng, n_max + 1);
        CompiledGate g = jc_snap_compile(th, n_max);
        auto rep = verify(g);
        EXPECT_LT(rep.infidelity, 1e-5) << n_max;
        EXPECT_LT(rep.leakage, 1e-5) << n_max;
        EXPECT_NEAR(g.total_time, jc_total_time(n_max, g.h, g.s), 1e-9);
        EXPECT_EQ(g.angle_sets.size(), 5u);
    }
}
