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

#ifndef BQSP_ANGLES_HPP
#define BQSP_ANGLES_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "bqsp/completion.hpp"
#include "bqsp/polynomial.hpp"

namespace bqsp {

/// A QSP schedule: M rounds of phase shift Z_phi, M+1 rotations.
struct AngleSet {
    Convention convention = Convention::gqsp;
    double phase_step = 0;
    std::vector<double> thetas;
    std::vector<double> phis;
    std::vector<double> lambdas;

    size_t rounds() const { return thetas.empty() ? 0 : thetas.size() - 1; }
};

using Mat2 = Eigen::Matrix2cd;

/// R(theta, phi, lambda) = [[e^{i(lambda+phi)} cos, e^{i phi} sin], [e^{i lambda} sin, -cos]].
inline Mat2 gqsp_rotation(double theta, double phi, double lambda) {
    Mat2 r;
    r << expi(lambda + phi) * std::cos(theta), expi(phi) * std::sin(theta), expi(lambda) * std::sin(theta),
        -std::cos(theta);
    return r;
}

/// W(theta) = exp(i theta sigma_x).
inline Mat2 oqsp_rotation(double theta) {
    Mat2 w;
    w << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta);
    return w;
}

inline Mat2 phase_shift(double phi) {
    Mat2 z = Mat2::Identity();
    z(0, 0) = expi(phi);
    return z;
}

/// Product R_M Z_phi R_{M-1} ... Z_phi R_0.
inline Mat2 reconstruct_sequence(const AngleSet &angles, double phi) {
    auto rot = [&](size_t m) -> Mat2 {
        if (angles.convention == Convention::oqsp) {
            return oqsp_rotation(angles.thetas[m]);
        }
        return gqsp_rotation(angles.thetas[m], angles.phis[m], angles.lambdas[m]);
    };
    Mat2 u = rot(0);
    const Mat2 z = phase_shift(phi);
    for (size_t m = 1; m <= angles.rounds(); m++) {
        u = rot(m) * z * u;
    }
    return u;
}

namespace detail {

inline constexpr double kPeelZero = 1e-12;
inline constexpr double kPeelResidual = 1e-10;

inline std::vector<cplx> padded(const Polynomial &p, size_t rounds, const char *what) {
    if (p.degree() > rounds && !p.is_zero()) {
        throw InputError(std::string(what) + " degree exceeds the number of rounds");
    }
    std::vector<cplx> v(rounds + 1, 0.0);
    for (size_t m = 0; m <= p.degree() && m <= rounds; m++) {
        v[m] = p[m];
    }
    return v;
}

inline void renormalize(std::vector<cplx> &p, std::vector<cplx> &q) {
    double total = 0;
    for (size_t m = 0; m < p.size(); m++) {
        total += std::norm(p[m]) + std::norm(q[m]);
    }
    double scale = 1 / std::sqrt(total);
    for (size_t m = 0; m < p.size(); m++) {
        p[m] *= scale;
        q[m] *= scale;
    }
}

inline NumericError diverged(size_t d) {
    return NumericError("angle extraction diverged at round " + std::to_string(d));
}

inline cplx unit_or_one(cplx v) {
    double m = std::abs(v);
    return m > kPeelZero ? v / m : cplx{1.0};
}

}  // namespace detail

/// Layer-stripping angle finder for the GQSP convention. `rounds` defaults
/// to deg P; passing a larger value pads with zero leading coefficients.
inline AngleSet gqsp_angles(const PolynomialPair &pair, double phase_step, std::optional<size_t> rounds = {}) {
    const size_t big_m = rounds.value_or(pair.p.degree());
    auto p = detail::padded(pair.p, big_m, "P");
    auto q = detail::padded(pair.q, big_m, "Q");
    AngleSet out;
    out.convention = Convention::gqsp;
    out.phase_step = phase_step;
    out.thetas.assign(big_m + 1, 0.0);
    out.phis.assign(big_m + 1, 0.0);
    out.lambdas.assign(big_m + 1, 0.0);

    for (size_t d = big_m; d >= 1; d--) {
        detail::renormalize(p, q);
        const double lead = std::hypot(std::abs(p[d]), std::abs(q[d]));
        const double tail = std::hypot(std::abs(p[0]), std::abs(q[0]));
        double theta = 0;
        cplx w = 1.0;  // e^{-i phi}
        if (std::max(lead, tail) > detail::kPeelZero) {
            if (lead >= tail) {
                theta = std::atan2(std::abs(q[d]), std::abs(p[d]));
                w = detail::unit_or_one(q[d]) * std::conj(detail::unit_or_one(p[d]));
            } else {
                theta = std::atan2(std::abs(p[0]), std::abs(q[0]));
                w = -detail::unit_or_one(q[0]) * std::conj(detail::unit_or_one(p[0]));
            }
        }
        const double c = std::cos(theta), s = std::sin(theta);
        std::vector<cplx> top(d + 1), bottom(d + 1);
        for (size_t m = 0; m <= d; m++) {
            top[m] = w * c * p[m] + s * q[m];
            bottom[m] = w * s * p[m] - c * q[m];
        }
        if (std::abs(top[0]) > detail::kPeelResidual || std::abs(bottom[d]) > detail::kPeelResidual) {
            throw detail::diverged(d);
        }
        p.assign(top.begin() + 1, top.end());
        q.assign(bottom.begin(), bottom.end() - 1);
        out.thetas[d] = theta;
        out.phis[d] = -std::arg(w);
    }
    detail::renormalize(p, q);
    out.thetas[0] = std::atan2(std::abs(q[0]), std::abs(p[0]));
    out.lambdas[0] = std::abs(q[0]) > detail::kPeelZero ? std::arg(q[0]) : 0.0;
    out.phis[0] = std::abs(p[0]) > detail::kPeelZero ? std::arg(p[0]) - out.lambdas[0] : 0.0;
    return out;
}

/// Angle finder for the single-axis convention: F real, G = i * real.
inline AngleSet oqsp_angles(const PolynomialPair &pair, double phase_step, std::optional<size_t> rounds = {}) {
    if (realness_residual(pair.p) > kEpsReal || realness_residual(pair.q, true) > kEpsReal) {
        throw InputError("oqsp pair must have real F and imaginary G");
    }
    const size_t big_m = rounds.value_or(pair.p.degree());
    auto pc = detail::padded(pair.p, big_m, "F");
    auto qc = detail::padded(pair.q, big_m, "G");
    std::vector<double> f(big_m + 1), gam(big_m + 1);
    for (size_t m = 0; m <= big_m; m++) {
        f[m] = pc[m].real();
        gam[m] = qc[m].imag();
    }
    AngleSet out;
    out.convention = Convention::oqsp;
    out.phase_step = phase_step;
    out.thetas.assign(big_m + 1, 0.0);
    out.phis.assign(big_m + 1, 0.0);
    out.lambdas.assign(big_m + 1, 0.0);

    for (size_t d = big_m; d >= 1; d--) {
        double total = 0;
        for (size_t m = 0; m <= d; m++) {
            total += f[m] * f[m] + gam[m] * gam[m];
        }
        for (size_t m = 0; m <= d; m++) {
            f[m] /= std::sqrt(total);
            gam[m] /= std::sqrt(total);
        }
        const double lead = std::hypot(f[d], gam[d]);
        const double tail = std::hypot(f[0], gam[0]);
        double theta = 0;
        if (std::max(lead, tail) > detail::kPeelZero) {
            if (lead >= tail) {
                theta = std::abs(f[d]) > detail::kPeelZero ? std::atan(gam[d] / f[d]) : kPi / 2;
            } else {
                theta = std::abs(gam[0]) > detail::kPeelZero ? std::atan(-f[0] / gam[0]) : kPi / 2;
            }
        }
        const double c = std::cos(theta), s = std::sin(theta);
        std::vector<double> top(d + 1), bottom(d + 1);
        for (size_t m = 0; m <= d; m++) {
            top[m] = c * f[m] + s * gam[m];
            bottom[m] = c * gam[m] - s * f[m];
        }
        if (std::abs(top[0]) > detail::kPeelResidual || std::abs(bottom[d]) > detail::kPeelResidual) {
            throw detail::diverged(d);
        }
        f.assign(top.begin() + 1, top.end());
        gam.assign(bottom.begin(), bottom.end() - 1);
        out.thetas[d] = theta;
    }
    out.thetas[0] = std::atan2(gam[0], f[0]);
    return out;
}

inline AngleSet find_angles(const PolynomialPair &pair, Convention conv, double phase_step,
                            std::optional<size_t> rounds = {}) {
    return conv == Convention::oqsp ? oqsp_angles(pair, phase_step, rounds) : gqsp_angles(pair, phase_step, rounds);
}

/// Max over `samples` uniform phi of |U00 - P| + |U10 - Q|.
inline double reconstruction_error(const AngleSet &angles, const PolynomialPair &pair, size_t samples = 512) {
    double worst = 0;
    for (size_t j = 0; j < samples; j++) {
        double phi = 2 * kPi * static_cast<double>(j) / static_cast<double>(samples);
        Mat2 u = reconstruct_sequence(angles, phi);
        worst = std::max(worst, std::abs(u(0, 0) - eval_on_circle(pair.p, phi)) + std::abs(u(1, 0) - eval_on_circle(pair.q, phi)));
    }
    return worst;
}

}  // namespace bqsp

#endif
