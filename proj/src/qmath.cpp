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

#include "zeno/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr int kSeriesTerms = 18;
constexpr double kScaledNormTarget = 0.5;

}  // namespace

bool Mat2::is_finite() const {
    return std::all_of(m.begin(), m.end(), finite);
}

Mat2 operator*(const Mat2 &a, const Mat2 &b) {
    return {
        a.m[0] * b.m[0] + a.m[1] * b.m[2],
        a.m[0] * b.m[1] + a.m[1] * b.m[3],
        a.m[2] * b.m[0] + a.m[3] * b.m[2],
        a.m[2] * b.m[1] + a.m[3] * b.m[3],
    };
}

Mat2 operator+(const Mat2 &a, const Mat2 &b) {
    return {a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]};
}

Mat2 operator-(const Mat2 &a, const Mat2 &b) {
    return {a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]};
}

Mat2 operator*(Complex s, const Mat2 &a) {
    return {s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]};
}

double max_abs_diff(const Mat2 &a, const Mat2 &b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; k++) {
        worst = std::max(worst, std::abs(a.m[k] - b.m[k]));
    }
    return worst;
}

double norm1(const Mat2 &a) {
    return std::max(std::abs(a.m[0]) + std::abs(a.m[2]), std::abs(a.m[1]) + std::abs(a.m[3]));
}

double TwoLevelState::norm() const {
    return std::sqrt(norm_squared());
}

bool TwoLevelState::is_finite() const {
    return finite(a0) && finite(a1);
}

TwoLevelState TwoLevelState::normalized() const {
    double n = norm();
    if (!std::isfinite(n) || n == 0.0) {
        throw std::domain_error("cannot normalize a zero or non-finite state");
    }
    return {a0 / n, a1 / n};
}

TwoLevelState operator*(const Mat2 &u, const TwoLevelState &psi) {
    return {u.m[0] * psi.a0 + u.m[1] * psi.a1, u.m[2] * psi.a0 + u.m[3] * psi.a1};
}

Mat2 mat_exp(const Mat2 &generator, double t) {
    if (!generator.is_finite() || !std::isfinite(t)) {
        throw std::invalid_argument("mat_exp: non-finite input");
    }
    if (t < 0.0) {
        throw std::invalid_argument("mat_exp: negative time");
    }
    Mat2 a = Complex{0.0, -t} * generator;
    double norm = norm1(a);
    int squarings = 0;
    if (norm > kScaledNormTarget) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormTarget)));
    }
    a = Complex{std::ldexp(1.0, -squarings), 0.0} * a;

    // Horner form of sum_{k=0}^{N} a^k / k!.
    Mat2 result = Mat2::identity();
    for (int k = kSeriesTerms; k >= 1; k--) {
        result = Mat2::identity() + Complex{1.0 / k, 0.0} * (a * result);
    }
    for (int s = 0; s < squarings; s++) {
        result = result * result;
    }
    return result;
}

TwoLevelState fine_step_integrate(const Mat2 &generator, const TwoLevelState &psi0, double t, std::size_t steps) {
    if (steps == 0) {
        throw std::invalid_argument("fine_step_integrate: zero steps");
    }
    if (!generator.is_finite() || !psi0.is_finite() || !std::isfinite(t)) {
        throw std::invalid_argument("fine_step_integrate: non-finite input");
    }
    if (t < 0.0) {
        throw std::invalid_argument("fine_step_integrate: negative time");
    }
    const double h = t / static_cast<double>(steps);
    const Complex minus_i{0.0, -1.0};
    auto rhs = [&](const TwoLevelState &psi) {
        TwoLevelState d = generator * psi;
        return TwoLevelState{minus_i * d.a0, minus_i * d.a1};
    };
    auto axpy = [](const TwoLevelState &x, double s, const TwoLevelState &k) {
        return TwoLevelState{x.a0 + s * k.a0, x.a1 + s * k.a1};
    };

    TwoLevelState psi = psi0;
    for (std::size_t n = 0; n < steps; n++) {
        TwoLevelState k1 = rhs(psi);
        TwoLevelState k2 = rhs(axpy(psi, h / 2, k1));
        TwoLevelState k3 = rhs(axpy(psi, h / 2, k2));
        TwoLevelState k4 = rhs(axpy(psi, h, k3));
        psi.a0 += (h / 6) * (k1.a0 + 2.0 * k2.a0 + 2.0 * k3.a0 + k4.a0);
        psi.a1 += (h / 6) * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1);
    }
    return psi;
}

Mat2 fine_step_propagator(const Mat2 &generator, double t, std::size_t steps) {
    TwoLevelState c0 = fine_step_integrate(generator, TwoLevelState::ground(), t, steps);
    TwoLevelState c1 = fine_step_integrate(generator, TwoLevelState::excited(), t, steps);
    return {c0.a0, c1.a0, c0.a1, c1.a1};
}

}  // namespace zeno
