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

#ifndef BQSP_COMPLETION_HPP
#define BQSP_COMPLETION_HPP

#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include <unsupported/Eigen/FFT>

#include "bqsp/polynomial.hpp"

namespace bqsp {

enum class Convention { oqsp, gqsp };

inline std::string to_string(Convention c) { return c == Convention::oqsp ? "oqsp" : "gqsp"; }

inline Convention convention_from_string(const std::string &s) {
    if (s == "oqsp") {
        return Convention::oqsp;
    }
    if (s == "gqsp") {
        return Convention::gqsp;
    }
    throw InputError("unknown convention '" + s + "'");
}

namespace detail {

inline constexpr double kOnCircleTol = 1e-6;
inline constexpr double kPairingTol = 1e-4;
inline constexpr double kSpectralFloor = 1e-6;

// Log-distance between two nonzero complex numbers.
inline double log_distance(cplx a, cplx b) {
    double dr = std::log(std::abs(a)) - std::log(std::abs(b));
    double da = std::remainder(std::arg(a) - std::arg(b), 2 * kPi);
    return std::hypot(dr, da);
}

inline cplx newton_polish(const Polynomial &f, const Polynomial &df, cplx r, int iters) {
    double res = std::abs(f(r));
    for (int it = 0; it < iters && res > 0; it++) {
        cplx d = df(r);
        if (d == cplx{0.0}) {
            break;
        }
        cplx cand = r - f(r) / d;
        double cand_res = std::abs(f(cand));
        if (!(cand_res < res)) {
            break;
        }
        r = cand;
        res = cand_res;
    }
    return r;
}

inline std::string format_root(cplx r) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << r.real() << (r.imag() < 0 ? "" : "+") << r.imag() << "i)";
    return os.str();
}


/// Completion by root selection on w^d (1 - |f|^2): keeps roots inside or on
/// the circle. Returns coefficients of the monic factor.
inline std::vector<cplx> root_completion(const std::vector<cplx> &s, size_t d) {
    double smag = 0;
    for (const auto &v : s) {
        smag = std::max(smag, std::abs(v));
    }
    size_t lo = 0;
    while (std::abs(s[lo]) <= kTrimEps * smag) {
        lo++;
    }
    const size_t hi = 2 * d - lo;
    std::vector<cplx> chosen(lo, cplx{0.0});
    if (hi > lo) {
        Polynomial sr(std::vector<cplx>(s.begin() + lo, s.begin() + hi + 1));
        Polynomial dsr = sr.derivative();
        Polynomial ddsr = dsr.derivative();
        std::vector<cplx> rts = roots(sr);

        std::vector<cplx> on, inside, outside;
        for (const auto &r : rts) {
            double m = std::abs(r);
            if (std::abs(m - 1) < kOnCircleTol) {
                on.push_back(r);
            } else if (m < 1) {
                inside.push_back(r);
            } else {
                outside.push_back(r);
            }
        }

        // On-circle roots are double: pair nearest neighbours, keep one copy.
        if (on.size() % 2 != 0) {
            throw NumericError("factorization unstable: unpaired unit-circle root " + format_root(on.back()));
        }
        std::vector<bool> used(on.size(), false);
        for (size_t i = 0; i < on.size(); i++) {
            if (used[i]) {
                continue;
            }
            used[i] = true;
            size_t best = on.size();
            double bd = 0;
            for (size_t j = 0; j < on.size(); j++) {
                if (!used[j] && (best == on.size() || std::abs(on[j] - on[i]) < bd)) {
                    best = j;
                    bd = std::abs(on[j] - on[i]);
                }
            }
            used[best] = true;
            cplx rep = 0.5 * (on[i] + on[best]);
            rep /= std::abs(rep);
            rep = newton_polish(dsr, ddsr, rep, 4);
            chosen.push_back(rep / std::abs(rep));
        }

        if (inside.size() != outside.size()) {
            throw NumericError("factorization unstable: " + std::to_string(inside.size()) + " roots inside vs " +
                               std::to_string(outside.size()) + " outside");
        }
        std::vector<bool> taken(outside.size(), false);
        for (const auto &r : inside) {
            cplx mirror = 1.0 / std::conj(r);
            size_t best = outside.size();
            double bd = 0;
            for (size_t j = 0; j < outside.size(); j++) {
                double dist = log_distance(outside[j], mirror);
                if (!taken[j] && (best == outside.size() || dist < bd)) {
                    best = j;
                    bd = dist;
                }
            }
            if (best == outside.size() || bd > kPairingTol) {
                throw NumericError("factorization unstable: root " + format_root(r) + " has no reciprocal partner");
            }
            taken[best] = true;
            cplx rep = 0.5 * (r + 1.0 / std::conj(outside[best]));
            chosen.push_back(newton_polish(sr, dsr, rep, 3));
        }
    }

    std::vector<cplx> qc{1.0};
    for (const auto &r : chosen) {
        std::vector<cplx> next(qc.size() + 1, 0.0);
        for (size_t m = 0; m < qc.size(); m++) {
            next[m + 1] += qc[m];
            next[m] -= r * qc[m];
        }
        qc = std::move(next);
    }
    return qc;
}

/// Completion through the outer factor exp(H[log sqrt(1 - |f|^2)]) computed
/// on an FFT grid, reversed so its roots sit inside the disk like
/// root_completion. Empty when 1 - |f|^2 gets too close to zero.
inline std::vector<cplx> spectral_completion(const Polynomial &f, size_t d) {
    size_t n = 4096;
    while (n < 16 * (d + 1)) {
        n *= 2;
    }
    std::vector<cplx> logmod(n), spec, analytic(n), outer;
    for (size_t j = 0; j < n; j++) {
        double t = 1.0 - std::norm(f(expi(2 * kPi * static_cast<double>(j) / static_cast<double>(n))));
        if (t < kSpectralFloor) {
            return {};
        }
        logmod[j] = 0.5 * std::log(t);
    }
    Eigen::FFT<double> fft;
    fft.fwd(spec, logmod);
    std::vector<cplx> causal(n, 0.0);
    causal[0] = spec[0];
    for (size_t m = 1; m < n / 2; m++) {
        causal[m] = 2.0 * spec[m];
    }
    fft.inv(analytic, causal);
    for (auto &v : analytic) {
        v = std::exp(v);
    }
    fft.fwd(outer, analytic);
    std::vector<cplx> qc(d + 1);
    for (size_t m = 0; m <= d; m++) {
        qc[m] = std::conj(outer[d - m]) / static_cast<double>(n);
    }
    return qc;
}
}  // namespace detail

/// Fejer-Riesz completion: returns Q with |P|^2 + |Q|^2 = 1 on the unit
/// circle and deg Q <= deg P.
///
/// In gqsp mode the leading coefficient of Q is real and positive. In oqsp
/// mode P must have real coefficients and Q = i * (real coefficients).
inline Polynomial complementary_polynomial(const Polynomial &p, Convention mode) {
    if (mode == Convention::oqsp && realness_residual(p) > kEpsReal) {
        throw InputError("oqsp completion needs real coefficients");
    }
    const size_t grid = default_grid_size(p.degree());
    if (sup_on_circle(p, grid) > 1 + kEpsNorm) {
        throw NumericError("polynomial not completable");
    }

    // Write P(z) = z^a f(z^g); only |f| matters, so complete f in w = z^g.
    const auto &pc = p.coeffs();
    const double cut = kTrimEps * p.max_abs_coeff();
    size_t a = 0;
    while (a < pc.size() && std::abs(pc[a]) <= cut) {
        a++;
    }
    if (a == pc.size()) {
        return Polynomial({mode == Convention::oqsp ? kI : cplx{1.0}});
    }
    size_t g = 0;
    for (size_t m = a + 1; m < pc.size(); m++) {
        if (std::abs(pc[m]) > cut) {
            g = std::gcd(g, m - a);
        }
    }
    if (g == 0) {
        g = 1;
    }
    std::vector<cplx> fc;
    for (size_t m = a; m < pc.size(); m += g) {
        fc.push_back(pc[m]);
    }
    const size_t d = fc.size() - 1;

    // w^d (1 - f(w) f*(1/w)).
    std::vector<cplx> s(2 * d + 1, 0.0);
    s[d] = 1.0;
    for (size_t i = 0; i <= d; i++) {
        for (size_t j = 0; j <= d; j++) {
            s[d + i - j] -= fc[i] * std::conj(fc[j]);
        }
    }

    // Target |Q|^2 on the grid, in w.
    std::vector<double> target(grid);
    std::vector<cplx> wgrid(grid);
    Polynomial f(fc);
    double smax = 0;
    for (size_t j = 0; j < grid; j++) {
        wgrid[j] = expi(2 * kPi * static_cast<double>(j) / static_cast<double>(grid));
        target[j] = std::max(0.0, 1.0 - std::norm(f(wgrid[j])));
        smax = std::max(smax, target[j]);
    }
    if (smax <= kEpsNorm) {
        return Polynomial();
    }

    // Candidates: spectral outer factor when |Q|^2 stays away from zero,
    // root selection unless that is already accurate. Keep the smaller defect.
    auto finish = [&](std::vector<cplx> qc) {
        if (mode == Convention::oqsp) {
            for (auto &v : qc) {
                v = v.real();
            }
        }
        // Least-squares modulus against the grid target.
        Polynomial qw(qc);
        double num = 0, den = 0;
        for (size_t j = 0; j < grid; j++) {
            double m2 = std::norm(qw(wgrid[j]));
            num += target[j] * m2;
            den += m2 * m2;
        }
        double scale = std::sqrt(num / den);
        if (mode == Convention::oqsp) {
            double lead = qc.back().real();
            cplx phase = (lead < 0 ? -1.0 : 1.0) * kI;
            qw = qw * (scale * phase);
        } else {
            cplx lead = qc.back();
            qw = qw * (scale * std::abs(lead) / lead);
        }
        return compose_power(qw, g);
    };

    Polynomial best;
    double best_defect = std::numeric_limits<double>::infinity();
    std::string failure;
    auto consider = [&](const std::vector<cplx> &qc) {
        Polynomial q = finish(qc);
        double defect = normalization_defect(p, q, grid);
        if (defect < best_defect) {
            best = std::move(q);
            best_defect = defect;
        }
    };
    std::vector<cplx> spectral = detail::spectral_completion(f, d);
    if (!spectral.empty()) {
        consider(spectral);
    }
    if (best_defect > kEpsReal) {
        try {
            consider(detail::root_completion(s, d));
        } catch (const NumericError &e) {
            failure = e.what();
        }
    }
    if (best_defect > kEpsNorm) {
        if (!failure.empty() && !std::isfinite(best_defect)) {
            throw NumericError(failure);
        }
        std::ostringstream os;
        os.precision(3);
        os << "factorization unstable: completion defect " << best_defect;
        throw NumericError(os.str());
    }
    return best;
}

}  // namespace bqsp

#endif
