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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zeno/analysis.hpp"
#include "zeno/qmath.hpp"

using zeno::kPi;
namespace an = zeno::analysis;

namespace {

constexpr double kOmega = 2 * kPi;

std::vector<double> uniform_times(double lo, double hi, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; k++) t[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return t;
}

// Oracle curve, independent of both library evaluation paths.
an::SurvivalCurve oracle_curve(double omega, double gamma, const std::vector<double> &times) {
    an::SurvivalCurve c;
    for (double t : times) c.samples.push_back({t, oracle::survival_probability(omega, gamma, t)});
    return c;
}

}  // namespace

TEST_CASE("survival curves from both library paths agree with the oracle") {
    const auto times = uniform_times(0.0, 0.25, 26);
    for (auto source : {an::CurveSource::closed_form, an::CurveSource::matrix_exponential}) {
        an::SurvivalCurve c = an::continuous_survival_curve(kOmega, 120.0, times, source);
        REQUIRE(c.samples.size() == times.size());
        CHECK_FALSE(c.source.empty());
        for (const auto &s : c.samples) {
            CHECK(s.probability == doctest::Approx(oracle::survival_probability(kOmega, 120.0, s.time)).epsilon(1e-10));
        }
    }
}

TEST_CASE("log-linear fit recovers an exact exponential") {
    an::SurvivalCurve c;
    for (double t : uniform_times(0.0, 2.0, 41)) c.samples.push_back({t, 0.7 * std::exp(-1.3 * t)});
    an::DecayRateEstimate e = an::fit_decay_rate(c, 0.0, 2.0);
    CHECK(e.rate == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(e.residual < 1e-12);
    CHECK(e.t_min == 0.0);
    CHECK(e.t_max == 2.0);

    an::SurvivalCurve rising;
    for (double t : uniform_times(0.0, 1.0, 5)) rising.samples.push_back({t, std::exp(t)});
    CHECK_THROWS_AS(an::fit_decay_rate(rising, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(an::fit_decay_rate(c, 5.0, 6.0), std::invalid_argument);
}

TEST_CASE("asymptotic decay rate at gamma = 500") {
    // Fit over [2/gamma, T] of the oracle curve gives 0.316 per microsecond.
    const double gamma = 500.0;
    const auto fit = an::fit_decay_rate(oracle_curve(kOmega, gamma, uniform_times(2 / gamma, 0.25, 201)), 2 / gamma, 0.25);
    CHECK(fit.rate == doctest::Approx(0.316).epsilon(0.002));
    CHECK(an::continuous_decay_rate(kOmega, gamma) == doctest::Approx(0.316027087).epsilon(1e-8));
    CHECK(an::continuous_decay_rate(kOmega, gamma) == doctest::Approx(fit.rate).epsilon(0.002));
    // Large-gamma limit 4 omega^2 / gamma.
    CHECK(an::continuous_decay_rate(kOmega, 1e7) == doctest::Approx(4 * kOmega * kOmega / 1e7).epsilon(1e-6));
}

TEST_CASE("closed-form rate matches fitted oracle curves for gamma >= 10 omega") {
    for (double ratio : {10.0, 15.0, 30.0, 80.0, 200.0}) {
        const double gamma = ratio * kOmega;
        const double t_min = 2 / gamma, t_max = 1.0;
        const auto fit = an::fit_decay_rate(oracle_curve(kOmega, gamma, uniform_times(t_min, t_max, 401)), t_min, t_max);
        CAPTURE(ratio);
        CHECK(std::abs(fit.rate - an::continuous_decay_rate(kOmega, gamma)) / an::continuous_decay_rate(kOmega, gamma) <
              0.02);
    }
}

TEST_CASE("decay rate decreases with gamma and rejects the underdamped branch") {
    double last = INFINITY;
    for (int k = 0; k < 10; k++) {
        const double gamma = 50.0 + 50.0 * k;
        const double r = an::continuous_decay_rate(kOmega, gamma);
        CHECK(r < last);
        last = r;
    }
    CHECK_THROWS_AS(an::continuous_decay_rate(kOmega, 4 * kOmega), std::domain_error);
    CHECK_THROWS_AS(an::continuous_decay_rate(kOmega, 10.0), std::domain_error);
    CHECK_THROWS_AS(an::continuous_decay_rate(0.0, 10.0), std::invalid_argument);
}

TEST_CASE("pulsed and continuous rates under gamma dt = 4") {
    an::EquivalenceResult r = an::equivalence_check(4 * kPi, 0.02);
    CHECK(r.gamma_matched == doctest::Approx(200.0));
    CHECK(r.omega_continuous == doctest::Approx(2 * kPi));
    CHECK(r.rate_pulsed == doctest::Approx(16 * kPi * kPi * 0.02 / 4));
    CHECK(r.relative_gap < 0.05);

    // Halving dt halves the pulsed rate exactly.
    CHECK(an::equivalence_check(4 * kPi, 0.01).rate_pulsed == doctest::Approx(r.rate_pulsed / 2).epsilon(1e-15));

    double last = INFINITY;
    for (int k = 0; k <= 8; k++) {
        const double dt = 0.02 * std::pow(0.01, k / 8.0);
        an::EquivalenceResult e = an::equivalence_check(4 * kPi, dt);
        CHECK(e.relative_gap < last);
        last = e.relative_gap;
    }
    CHECK(an::equivalence_check(4 * kPi, 1e-7).rate_pulsed < 1e-4);
    CHECK_THROWS_AS(an::equivalence_check(4 * kPi, 0.5), std::domain_error);
    CHECK_THROWS_AS(an::equivalence_check(4 * kPi, 0.0), std::invalid_argument);
}

TEST_CASE("normal quantile") {
    CHECK(an::two_sided_z(0.95) == doctest::Approx(oracle::two_sided_z(0.95)).epsilon(1e-12));
    CHECK(an::two_sided_z(0.99) == doctest::Approx(oracle::two_sided_z(0.99)).epsilon(1e-12));
    CHECK_THROWS_AS(an::two_sided_z(1.0), std::invalid_argument);
    CHECK_THROWS_AS(an::two_sided_z(0.0), std::invalid_argument);
}

TEST_CASE("wilson interval") {
    SUBCASE("edge counts") {
        auto zero = an::binomial_ci(0, 50, 0.95);
        CHECK(zero.low == 0.0);
        CHECK(zero.high > 0.0);
        auto all = an::binomial_ci(50, 50, 0.95);
        CHECK(all.high == 1.0);
        CHECK(all.low < 1.0);
    }
    SUBCASE("500 of 1000") {
        auto ci = an::binomial_ci(500, 1000, 0.95);
        CHECK(ci.low == doctest::Approx(0.469).epsilon(0.001));
        CHECK(ci.high == doctest::Approx(0.531).epsilon(0.001));
        // Each endpoint p leaves about 2.5% of the binomial mass beyond the observed count.
        CHECK(1 - oracle::binomial_cdf(499, 1000, ci.low) == doctest::Approx(0.025).epsilon(0.15));
        CHECK(oracle::binomial_cdf(500, 1000, ci.high) == doctest::Approx(0.025).epsilon(0.15));
    }
    SUBCASE("matches score-test inversion") {
        for (std::size_t n : {1, 7, 100, 1000}) {
            for (std::size_t k : {std::size_t{0}, n / 3, n / 2, n - 1, n}) {
                for (double conf : {0.9, 0.95, 0.99}) {
                    auto ci = an::binomial_ci(k, n, conf);
                    auto want = oracle::score_interval(k, n, conf);
                    CAPTURE(n);
                    CAPTURE(k);
                    CHECK(ci.low == doctest::Approx(want[0]).epsilon(1e-9));
                    CHECK(ci.high == doctest::Approx(want[1]).epsilon(1e-9));
                    CHECK(ci.low <= static_cast<double>(k) / n);
                    CHECK(static_cast<double>(k) / n <= ci.high);
                }
            }
        }
    }
    SUBCASE("invalid counts") {
        CHECK_THROWS_AS(an::binomial_ci(0, 0, 0.95), std::invalid_argument);
        CHECK_THROWS_AS(an::binomial_ci(5, 4, 0.95), std::invalid_argument);
        CHECK_THROWS_AS(an::binomial_ci(1, 4, 1.5), std::invalid_argument);
    }
}
