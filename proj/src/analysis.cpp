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

#include "zeno/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

#include "zeno/continuous.hpp"
#include "zeno/qmath.hpp"

namespace zeno::analysis {

SurvivalCurve continuous_survival_curve(double omega, double gamma, std::span<const double> times,
                                        CurveSource source) {
    SurvivalCurve curve;
    curve.samples.reserve(times.size());
    if (source == CurveSource::closed_form) {
        curve.source = "closed-form survival amplitude, coefficient gamma/(4h)";
        for (double t : times) {
            curve.samples.push_back({t, std::norm(continuous::survival_amplitude(omega, gamma, t).value)});
        }
    } else {
        curve.source = "series matrix exponential";
        const Mat2 h = continuous::hamiltonian(omega, gamma);
        for (double t : times) {
            curve.samples.push_back({t, std::norm(mat_exp(h, t)(0, 0))});
        }
    }
    return curve;
}

DecayRateEstimate fit_decay_rate(const SurvivalCurve &curve, double t_min, double t_max) {
    double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (const SurvivalSample &s : curve.samples) {
        if (s.time < t_min || s.time > t_max || !(s.probability > 0.0)) continue;
        double y = std::log(s.probability);
        n += 1;
        st += s.time;
        sy += y;
        stt += s.time * s.time;
        sty += s.time * y;
    }
    if (n < 2) {
        throw std::invalid_argument("fit_decay_rate: fewer than two positive samples in the fit window");
    }
    const double denom = n * stt - st * st;
    if (!(denom > 0.0)) {
        throw std::invalid_argument("fit_decay_rate: samples do not span a time interval");
    }
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;

    double sq = 0;
    for (const SurvivalSample &s : curve.samples) {
        if (s.time < t_min || s.time > t_max || !(s.probability > 0.0)) continue;
        double r = std::log(s.probability) - (intercept + slope * s.time);
        sq += r * r;
    }
    if (slope > 0.0) {
        throw std::domain_error("fit_decay_rate: survival grows over the fit window");
    }
    return {-slope, t_min, t_max, std::sqrt(sq / n)};
}

double continuous_decay_rate(double omega, double gamma) {
    if (!(std::isfinite(omega) && omega > 0.0 && std::isfinite(gamma))) {
        throw std::invalid_argument("continuous_decay_rate: omega must be positive and rates finite");
    }
    const double quarter = gamma / 4.0;
    if (!(quarter > omega)) {
        throw std::domain_error("continuous_decay_rate: requires the overdamped branch gamma/4 > omega");
    }
    const double h = std::sqrt(quarter * quarter - omega * omega);
    // 2 (gamma/4 - h) = 2 omega^2 / (gamma/4 + h).
    return 2.0 * omega * omega / (quarter + h);
}

EquivalenceResult equivalence_check(double omega_pulsed, double dt) {
    if (!(std::isfinite(omega_pulsed) && omega_pulsed > 0.0 && std::isfinite(dt) && dt > 0.0)) {
        throw std::invalid_argument("equivalence_check: omega and dt must be positive");
    }
    EquivalenceResult r;
    r.dt = dt;
    r.omega_pulsed = omega_pulsed;
    r.omega_continuous = omega_pulsed / 2.0;
    r.gamma_matched = 4.0 / dt;
    if (!(r.gamma_matched / 4.0 > r.omega_continuous)) {
        throw std::domain_error("equivalence_check: gamma = 4/dt is not overdamped for omega_pulsed / 2");
    }
    r.rate_pulsed = omega_pulsed * omega_pulsed * dt / 4.0;
    r.rate_continuous = continuous_decay_rate(r.omega_continuous, r.gamma_matched);
    r.relative_gap = std::abs(r.rate_pulsed - r.rate_continuous) / r.rate_continuous;
    return r;
}

double two_sided_z(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("confidence must lie in (0, 1)");
    }
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
}

BinomialInterval binomial_ci(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0 || successes > trials) {
        throw std::invalid_argument("binomial_ci: need 0 <= successes <= trials and trials >= 1");
    }
    const double z = two_sided_z(confidence);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    BinomialInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.low = 0.0;
    if (successes == trials) ci.high = 1.0;
    return ci;
}

}  // namespace zeno::analysis
