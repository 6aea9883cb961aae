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

#include "bqsp/baseline.hpp"
#include "bqsp/nonunitary.hpp"
#include "bqsp/wigner.hpp"
#include "test_util.hpp"

using namespace bqsp;
using namespace bqsp_test;

namespace {

double nla_p_g(const Qumode &c, double gain, int n_max) {
    double p = 0;
    for (Eigen::Index n = 0; n < c.size(); n++) {
        p += std::pow(gain, 2.0 * (n - n_max)) * std::norm(c(n));
    }
    return p;
}

double min_wigner(const Qumode &psi) {
    WignerGrid g;
    g.n_points = 61;
    g.x_min = g.p_min = -3;
    g.x_max = g.p_max = 3;
    return wigner(psi, g).minCoeff();
}

}  // namespace

TEST(KrausSpec, validation) {
    KrausSpec s;
    s.a_amps = {1.2};
    s.b_amps = {0.0};
    EXPECT_THROW(validate(s), InputError);
    s.a_amps = {0.6};
    s.b_amps = {0.6};
    EXPECT_THROW(validate(s), InputError);
    EXPECT_THROW(nla_amplitudes(1.0, 3), InputError);
    EXPECT_THROW(parity_projector_amplitudes(3, 0, 4), InputError);
    EXPECT_THROW(parity_projector_amplitudes(2, 2, 3), InputError);
}

TEST(Kraus, nla_amplitudes_realized) {
    KrausGate g = kraus_compile(nla_amplitudes(2.0, 7));
    auto rep = realized_kraus(g);
    EXPECT_LT(rep.max_amplitude_error, 1e-8);
    EXPECT_LT(rep.completeness_error, 1e-8);
}

TEST(Kraus, jc_nla_amplitudes_realized) {
    KrausGate g = kraus_compile(nla_amplitudes(1.5, 1, Backend::jc));
    EXPECT_EQ(g.b_shift, 1);
    auto rep = realized_kraus(g);
    EXPECT_LT(rep.max_amplitude_error, 1e-6);
    EXPECT_LT(rep.completeness_error, 1e-6);
}

TEST(Kraus, nla_coherent_input) {
    KrausGate g = kraus_compile(nla_amplitudes(2.0, 7));
    Qumode in = truncated_coherent(0.5, 8);
    auto out = apply_and_measure(in, g, BranchRequest::g);
    EXPECT_NEAR(out.probability, nla_p_g(in, 2.0, 7), 1e-8);
    Qumode ideal = truncated_coherent(1.0, 8);
    EXPECT_GT(state_fidelity(out.post_state, ideal), 1 - 1e-6);
}

TEST(Kraus, nla_vacuum_probability) {
    KrausGate g = kraus_compile(nla_amplitudes(2.0, 7));
    auto out = apply_and_measure(fock_state(0, 8), g, BranchRequest::g);
    EXPECT_NEAR(out.probability, std::pow(2.0, -14), 1e-12);
}

TEST(Kraus, nla_deepens_cat_negativity) {
    KrausGate g = kraus_compile(nla_amplitudes(2.0, 7));
    Qumode cat = truncated_coherent(0.8, 8) + truncated_coherent(-0.8, 8);
    cat /= cat.norm();
    auto out = apply_and_measure(cat, g, BranchRequest::g);
    EXPECT_LT(min_wigner(out.post_state), min_wigner(cat));
}

TEST(Kraus, unreachable_branch_rejected) {
    KrausGate g = kraus_compile(parity_projector_amplitudes(2, 0, 3));
    EXPECT_THROW(apply_and_measure(fock_state(0, 4), g, BranchRequest::g), InputError);
    EXPECT_THROW(apply_and_measure(Qumode::Zero(4), g, BranchRequest::e), InputError);
}

TEST(Parity, projectors_are_complete) {
    for (int kp : {2, 4}) {
        for (int nb = 0; nb < kp; nb++) {
            KrausGate g = kraus_compile(parity_projector_amplitudes(kp, nb, 3));
            auto rep = realized_kraus(g);
            EXPECT_LT(rep.max_amplitude_error, 1e-8);
            EXPECT_LT(rep.completeness_error, 1e-8);
        }
    }
}

TEST(BosonNumber, fock_states_identified) {
    BosonNumberMeter meter(4);
    for (int m = 0; m <= 4; m++) {
        auto res = meter.measure(fock_state(m, 5), 1);
        EXPECT_EQ(res.n, m);
        EXPECT_EQ(res.trajectory.size(), static_cast<size_t>(m + 1));
        EXPECT_NEAR(res.trajectory.back().probability, 1, 1e-10);
    }
}

TEST(BosonNumber, born_statistics) {
    BosonNumberMeter meter(3);
    Qumode psi(4);
    psi << 0.5, 0.0, cplx(0.0, std::sqrt(0.5)), 0.5;
    const int trials = 4000;
    std::array<int, 4> counts{};
    for (int t = 0; t < trials; t++) {
        counts[meter.measure(psi, 1000 + t).n]++;
    }
    for (int n = 0; n < 4; n++) {
        const double p = std::norm(psi(n));
        const double sigma = std::sqrt(trials * p * (1 - p));
        EXPECT_LE(std::abs(counts[n] - trials * p), 3 * sigma + 1e-9) << n;
    }
}

TEST(BosonNumber, seeded_runs_repeat) {
    BosonNumberMeter meter(2);
    Qumode psi = Qumode::Constant(3, 1 / std::sqrt(3.0));
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        EXPECT_EQ(meter.measure(psi, seed).n, meter.measure(psi, seed).n);
    }
    EXPECT_THROW(meter.measure(fock_state(4, 5), 1), InputError);
}

TEST(Baseline, weak_drive_approaches_ideal) {
    std::mt19937_64 rng(41);
    auto th = random_phases(rng, 3);
    SimConfig cfg;
    cfg.n_trunc = 5;
    auto res = dispersive_multitone_snap(th, 0.01, cfg);
    EXPECT_LT(score_snap(res.op, th, Backend::dispersive).infidelity, 1e-3);
    EXPECT_NEAR(res.gate_time, 2 * kPi / 0.01, 1e-9);
}

TEST(Baseline, strong_drive_is_worse) {
    std::mt19937_64 rng(43);
    auto th = random_phases(rng, 5);
    SimConfig cfg;
    cfg.n_trunc = 7;
    double weak = score_snap(dispersive_multitone_snap(th, 0.05, cfg).op, th, Backend::dispersive).infidelity;
    double strong = score_snap(dispersive_multitone_snap(th, 0.5, cfg).op, th, Backend::dispersive).infidelity;
    EXPECT_GT(strong, weak);
    EXPECT_GT(strong, 1e-2);
}

TEST(Baseline, halving_dt_is_converged) {
    std::mt19937_64 rng(47);
    auto th = random_phases(rng, 5);
    for (Backend b : {Backend::dispersive, Backend::jc}) {
        SimConfig cfg;
        cfg.n_trunc = 7;
        MultiToneConfig mc;
        mc.backend = b;
        mc.rabi = 0.4;
        mc.sim = cfg;
        double coarse = score_snap(multitone_snap(th, mc).op, th, b).infidelity;
        mc.sim.dt = detail::dt_bound(b, 4, mc.rabi, cfg) / 2;
        double fine = score_snap(multitone_snap(th, mc).op, th, b).infidelity;
        EXPECT_LT(std::abs(fine - coarse), 0.01 * coarse) << to_string(b);
    }
}

TEST(Baseline, rejects_large_dt_and_small_truncation) {
    std::vector<double> th = {0.1, 0.2, 0.3};
    SimConfig cfg;
    cfg.n_trunc = 5;
    cfg.dt = 1.0;
    EXPECT_THROW(dispersive_multitone_snap(th, 0.1, cfg), InputError);
    cfg.dt = 0;
    cfg.n_trunc = 3;
    EXPECT_THROW(dispersive_multitone_snap(th, 0.1, cfg), InputError);
    cfg.n_trunc = 5;
    EXPECT_THROW(dispersive_multitone_snap(th, -1, cfg), InputError);
}

TEST(Baseline, operators_are_unitary_and_imperfect) {
    std::mt19937_64 rng(53);
    auto th = random_phases(rng, 3);
    SimConfig cfg;
    cfg.n_trunc = 5;
    for (Backend b : {Backend::dispersive, Backend::jc}) {
        MultiToneConfig mc;
        mc.backend = b;
        mc.rabi = 0.3;
        mc.sim = cfg;
        auto res = multitone_snap(th, mc);
        const auto &u = res.op.matrix;
        EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm(), 1e-9);
        EXPECT_GT(score_snap(res.op, th, b).infidelity, 1e-10);
    }
}
