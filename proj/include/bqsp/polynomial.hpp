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

#ifndef BQSP_POLYNOMIAL_HPP
#define BQSP_POLYNOMIAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bqsp/common.hpp"

namespace bqsp {

/// Complex polynomial in ascending-power order: coeffs()[m] multiplies z^m.
///
/// Leading coefficients at or below kTrimEps relative to the largest one are
/// dropped on construction, so degree() is the trimmed degree. The zero
/// polynomial is stored as a single 0 coefficient.
class Polynomial {
   public:
    Polynomial() : c_{cplx{0.0}} {}
    Polynomial(std::initializer_list<cplx> c) : c_(c) { trim(); }
    explicit Polynomial(std::vector<cplx> c) : c_(std::move(c)) { trim(); }

    static Polynomial monomial(size_t m, cplx coeff = 1.0) {
        std::vector<cplx> c(m + 1, 0.0);
        c[m] = coeff;
        return Polynomial(std::move(c));
    }

    const std::vector<cplx> &coeffs() const { return c_; }
    size_t degree() const { return c_.size() - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == cplx{0.0}; }

    cplx operator[](size_t m) const { return m < c_.size() ? c_[m] : cplx{0.0}; }

    double max_abs_coeff() const {
        double best = 0;
        for (const auto &v : c_) {
            best = std::max(best, std::abs(v));
        }
        return best;
    }

    cplx operator()(cplx z) const {
        cplx acc = 0;
        for (size_t m = c_.size(); m-- > 0;) {
            acc = acc * z + c_[m];
        }
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() == 1) {
            return Polynomial();
        }
        std::vector<cplx> d(c_.size() - 1);
        for (size_t m = 1; m < c_.size(); m++) {
            d[m - 1] = c_[m] * static_cast<double>(m);
        }
        return Polynomial(std::move(d));
    }

    Polynomial operator+(const Polynomial &o) const {
        std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (size_t m = 0; m < r.size(); m++) {
            r[m] = (*this)[m] + o[m];
        }
        return Polynomial(std::move(r));
    }
    Polynomial operator-(const Polynomial &o) const { return *this + o * cplx{-1.0}; }
    Polynomial operator*(cplx s) const {
        std::vector<cplx> r = c_;
        for (auto &v : r) {
            v *= s;
        }
        return Polynomial(std::move(r));
    }
    Polynomial operator*(const Polynomial &o) const;

    bool operator==(const Polynomial &o) const { return c_ == o.c_; }

   private:
    void trim() {
        if (c_.empty()) {
            c_.push_back(0.0);
            return;
        }
        for (const auto &v : c_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw InputError("polynomial coefficient is not finite");
            }
        }
        double cutoff = kTrimEps * max_abs_coeff();
        while (c_.size() > 1 && std::abs(c_.back()) <= cutoff) {
            c_.pop_back();
        }
        if (c_.size() == 1 && std::abs(c_[0]) <= cutoff) {
            c_[0] = 0.0;
        }
    }

    std::vector<cplx> c_;
};

/// Coefficient convolution.
inline Polynomial multiply(const Polynomial &a, const Polynomial &b) {
    const auto &x = a.coeffs();
    const auto &y = b.coeffs();
    std::vector<cplx> r(x.size() + y.size() - 1, 0.0);
    for (size_t i = 0; i < x.size(); i++) {
        for (size_t j = 0; j < y.size(); j++) {
            r[i + j] += x[i] * y[j];
        }
    }
    return Polynomial(std::move(r));
}

inline Polynomial Polynomial::operator*(const Polynomial &o) const { return multiply(*this, o); }

/// P(e^{i phi}).
inline cplx eval_on_circle(const Polynomial &poly, double phi) { return poly(expi(phi)); }

/// Substitutes z -> z^stride.
inline Polynomial compose_power(const Polynomial &poly, size_t stride) {
    std::vector<cplx> r(poly.degree() * stride + 1, 0.0);
    for (size_t m = 0; m <= poly.degree(); m++) {
        r[m * stride] = poly[m];
    }
    return Polynomial(std::move(r));
}

inline Polynomial real_part(const Polynomial &poly) {
    std::vector<cplx> r;
    for (const auto &v : poly.coeffs()) {
        r.emplace_back(v.real(), 0.0);
    }
    return Polynomial(std::move(r));
}

/// Max over m of |Im coeffs[m]| (or |Re| when `imaginary` is set), relative to
/// the largest coefficient modulus.
inline double realness_residual(const Polynomial &poly, bool imaginary = false) {
    double scale = std::max(poly.max_abs_coeff(), 1e-300);
    double worst = 0;
    for (const auto &v : poly.coeffs()) {
        worst = std::max(worst, std::abs(imaginary ? v.real() : v.imag()));
    }
    return worst / scale;
}

namespace detail {

// Diagonal similarity scaling by powers of two (Parlett-Reinsch), applied
// before the companion eigensolve.
inline void balance(Eigen::MatrixXcd &a) {
    const double radix = 2.0;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; i++) {
            double c = 0, r = 0;
            for (Eigen::Index j = 0; j < n; j++) {
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0 || r == 0) {
                continue;
            }
            double g = r / radix, f = 1, s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace detail

/// Roots with multiplicity, from the eigenvalues of the balanced companion
/// matrix followed by guarded Newton polishing.
inline std::vector<cplx> roots(const Polynomial &poly) {
    if (poly.degree() == 0) {
        throw InputError("no roots of a constant");
    }
    const auto &c = poly.coeffs();
    std::vector<cplx> out;
    size_t lo = 0;
    while (c[lo] == cplx{0.0}) {
        out.emplace_back(0.0);
        lo++;
    }
    const size_t n = poly.degree() - lo;
    if (n == 0) {
        return out;
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (size_t j = 0; j < n; j++) {
        comp(0, j) = -c[lo + n - 1 - j] / c[lo + n];
    }
    for (size_t i = 1; i < n; i++) {
        comp(i, i - 1) = 1.0;
    }
    detail::balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("companion eigensolve failed");
    }

    Polynomial reduced(std::vector<cplx>(c.begin() + lo, c.end()));
    Polynomial deriv = reduced.derivative();
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); k++) {
        cplx r = solver.eigenvalues()[k];
        double res = std::abs(reduced(r));
        for (int it = 0; it < 3 && res > 0; it++) {
            cplx d = deriv(r);
            if (d == cplx{0.0}) {
                break;
            }
            cplx cand = r - reduced(r) / d;
            double cand_res = std::abs(reduced(cand));
            if (!(cand_res < res)) {
                break;
            }
            r = cand;
            res = cand_res;
        }
        out.push_back(r);
    }
    return out;
}

/// A (P, Q) pair together with its measured normalization defect.
struct PolynomialPair {
    Polynomial p;
    Polynomial q;
    double defect = 0;
};

/// Max over phi_j = 2 pi j / samples of ||P|^2 + |Q|^2 - 1|.
inline double normalization_defect(const Polynomial &p, const Polynomial &q, size_t samples) {
    double worst = 0;
    for (size_t j = 0; j < samples; j++) {
        double phi = 2 * kPi * static_cast<double>(j) / static_cast<double>(samples);
        cplx z = expi(phi);
        worst = std::max(worst, std::abs(std::norm(p(z)) + std::norm(q(z)) - 1.0));
    }
    return worst;
}

inline double normalization_defect(const PolynomialPair &pair, size_t samples) {
    if (samples < 2 * (pair.p.degree() + pair.q.degree()) + 1) {
        throw InputError("too few samples for normalization_defect");
    }
    return normalization_defect(pair.p, pair.q, samples);
}

inline size_t default_grid_size(size_t degree) { return std::max<size_t>(4096, 8 * degree + 8); }

inline PolynomialPair make_pair(Polynomial p, Polynomial q) {
    PolynomialPair pair{std::move(p), std::move(q), 0.0};
    pair.defect = normalization_defect(pair.p, pair.q, default_grid_size(pair.p.degree() + pair.q.degree()));
    return pair;
}

/// Max of |P| over a uniform grid plus any extra angles.
inline double sup_on_circle(const Polynomial &p, size_t samples, const std::vector<double> &extra = {}) {
    double worst = 0;
    for (size_t j = 0; j < samples; j++) {
        worst = std::max(worst, std::abs(eval_on_circle(p, 2 * kPi * static_cast<double>(j) / static_cast<double>(samples))));
    }
    for (double phi : extra) {
        worst = std::max(worst, std::abs(eval_on_circle(p, phi)));
    }
    return worst;
}

}  // namespace bqsp

#endif
