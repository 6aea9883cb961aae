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

#ifndef BQSP_COMMON_HPP
#define BQSP_COMMON_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bqsp {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Tolerances shared by the completion and angle-finding code.
inline constexpr double kEpsNorm = 1e-9;
inline constexpr double kEpsRoot = 1e-9;
inline constexpr double kEpsReal = 1e-10;
inline constexpr double kTrimEps = 1e-13;

// Bad user input (maps to CLI exit code 2).
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure during synthesis (maps to CLI exit code 3).
class NumericError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline cplx expi(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

// Uniform draw in [0, 1) from a 64-bit engine. std::uniform_real_distribution
// is implementation-defined, so this keeps seeded runs portable.
template <typename Engine>
double uniform01(Engine &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bqsp

#endif
