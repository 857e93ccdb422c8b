// Copyright 2026 The zeno-sim Authors
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

#ifndef ZENO_QMATH_HPP
#define ZENO_QMATH_HPP

#include <array>
#include <complex>
#include <cstddef>

namespace zeno {

using Complex = std::complex<double>;

/// Units used throughout: times in microseconds, angular frequencies in
/// rad/us, rates in 1/us. A frequency label f given in "MHz" maps to the
/// angular frequency f * kFrequencyLabelScale rad/us.
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFrequencyLabelScale = 2.0 * kPi;

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> m{};

    constexpr Mat2() = default;
    constexpr Mat2(Complex m00, Complex m01, Complex m10, Complex m11) : m{m00, m01, m10, m11} {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }

    constexpr Complex &operator()(std::size_t row, std::size_t col) { return m[2 * row + col]; }
    constexpr const Complex &operator()(std::size_t row, std::size_t col) const { return m[2 * row + col]; }

    Complex trace() const { return m[0] + m[3]; }
    Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
    Mat2 adjoint() const { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }
    bool is_finite() const;

    friend Mat2 operator*(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator+(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator-(const Mat2 &a, const Mat2 &b);
    friend Mat2 operator*(Complex s, const Mat2 &a);
    friend bool operator==(const Mat2 &, const Mat2 &) = default;
};

/// Largest element-wise modulus of a - b.
double max_abs_diff(const Mat2 &a, const Mat2 &b);

/// Induced 1-norm (max column sum).
double norm1(const Mat2 &a);

/// Pure state of a two-level system in the {|0>, |1>} basis.
struct TwoLevelState {
    Complex a0{1.0, 0.0};
    Complex a1{0.0, 0.0};

    static constexpr TwoLevelState ground() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static constexpr TwoLevelState excited() { return {{0.0, 0.0}, {1.0, 0.0}}; }

    double norm_squared() const { return std::norm(a0) + std::norm(a1); }
    double norm() const;
    double ground_population() const { return std::norm(a0); }
    double excited_population() const { return std::norm(a1); }
    bool is_finite() const;

    /// Throws std::domain_error on a zero or non-finite state.
    TwoLevelState normalized() const;

    friend bool operator==(const TwoLevelState &, const TwoLevelState &) = default;
};

TwoLevelState operator*(const Mat2 &u, const TwoLevelState &psi);

/// exp(-i * generator * t) by scaling and squaring with a fixed 18-term
/// Taylor series. The argument is scaled so that ||generator * t|| / 2^s <= 0.5.
/// Throws std::invalid_argument on non-finite entries or negative t.
Mat2 mat_exp(const Mat2 &generator, double t);

/// Integrates i d(psi)/dt = generator * psi over [0, t] with `steps` classical
/// fourth-order Runge-Kutta steps. Shares no code with mat_exp.
/// Throws std::invalid_argument when steps == 0, t < 0, or inputs are non-finite.
TwoLevelState fine_step_integrate(const Mat2 &generator, const TwoLevelState &psi0, double t, std::size_t steps);

/// Propagator built column by column from fine_step_integrate.
Mat2 fine_step_propagator(const Mat2 &generator, double t, std::size_t steps);

}  // namespace zeno

#endif
