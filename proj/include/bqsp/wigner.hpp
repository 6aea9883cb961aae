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

#ifndef BQSP_WIGNER_HPP
#define BQSP_WIGNER_HPP

#include <Eigen/Dense>
#include <iomanip>
#include <ostream>
#include <vector>

#include "bqsp/hilbert.hpp"

namespace bqsp {

struct WignerGrid {
    double x_min = -5;
    double x_max = 5;
    double p_min = -5;
    double p_max = 5;
    int n_points = 101;

    double x(int i) const { return n_points == 1 ? x_min : x_min + (x_max - x_min) * i / (n_points - 1); }
    double p(int j) const { return n_points == 1 ? p_min : p_min + (p_max - p_min) * j / (n_points - 1); }
};

/// W(i, j) at beta = x(i) + i p(j), normalized so W = (2/pi) <D Pi D^dag>
/// (vacuum peak 2/pi).
///
/// Uses the Laguerre recursion for <m|D Pi D^dag|n>; both triangles of the
/// density matrix are accumulated so the imaginary residue is a real check.
inline Eigen::MatrixXd wigner(const Qumode &psi, const WignerGrid &grid) {
    const int dim = static_cast<int>(psi.size());
    Eigen::MatrixXd out(grid.n_points, grid.n_points);
    std::vector<cplx> wl(dim);
    for (int i = 0; i < grid.n_points; i++) {
        for (int j = 0; j < grid.n_points; j++) {
            const cplx a(grid.x(i), grid.p(j));
            // wl[n] tracks the (m, n) matrix element of the kernel row m.
            wl[0] = std::exp(-2.0 * std::norm(a)) / kPi;
            cplx acc = std::norm(psi(0)) * wl[0];
            for (int n = 1; n < dim; n++) {
                wl[n] = 2.0 * a * wl[n - 1] / std::sqrt(static_cast<double>(n));
                cplx rho = psi(0) * std::conj(psi(n));
                acc += rho * wl[n] + std::conj(rho) * std::conj(wl[n]);
            }
            for (int m = 1; m < dim; m++) {
                cplx temp = wl[m];
                wl[m] = (2.0 * std::conj(a) * temp - std::sqrt(static_cast<double>(m)) * wl[m - 1]) /
                        std::sqrt(static_cast<double>(m));
                acc += std::norm(psi(m)) * wl[m];
                for (int n = m + 1; n < dim; n++) {
                    cplx temp2 = (2.0 * a * wl[n - 1] - std::sqrt(static_cast<double>(m)) * temp) /
                                 std::sqrt(static_cast<double>(n));
                    temp = wl[n];
                    wl[n] = temp2;
                    cplx rho = psi(m) * std::conj(psi(n));
                    acc += rho * wl[n] + std::conj(rho) * std::conj(wl[n]);
                }
            }
            acc *= 2.0;
            if (std::abs(acc.imag()) > 1e-6) {
                throw NumericError("truncation artifact in Wigner");
            }
            out(i, j) = acc.real();
        }
    }
    return out;
}

/// CSV with header x,p,w; x is the outer loop.
inline void write_wigner_csv(std::ostream &os, const Eigen::MatrixXd &w, const WignerGrid &grid) {
    os << "x,p,w\n" << std::setprecision(17);
    for (int i = 0; i < grid.n_points; i++) {
        for (int j = 0; j < grid.n_points; j++) {
            os << grid.x(i) << "," << grid.p(j) << "," << w(i, j) << "\n";
        }
    }
}

}  // namespace bqsp

#endif
