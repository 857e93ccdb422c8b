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

#ifndef ZENO_ANALYSIS_HPP
#define ZENO_ANALYSIS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace zeno::analysis {

struct SurvivalSample {
    double time = 0.0;
    double probability = 0.0;
};

/// Time-ordered survival probabilities with a note on what produced them.
struct SurvivalCurve {
    std::vector<SurvivalSample> samples;
    std::string source;
};

enum class CurveSource { closed_form, matrix_exponential };

/// |<0|exp(-i H t)|0>|^2 of the continuous-scheme generator at each time.
SurvivalCurve continuous_survival_curve(double omega, double gamma, std::span<const double> times, CurveSource source);

struct DecayRateEstimate {
    double rate = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    /// RMS residual of the log-linear fit.
    double residual = 0.0;
};

/// Least-squares fit of log p = a - rate * t over samples with t in
/// [t_min, t_max]. Throws std::invalid_argument with fewer than two usable
/// samples and std::domain_error if the fitted rate is negative.
DecayRateEstimate fit_decay_rate(const SurvivalCurve &curve, double t_min, double t_max);

/// Asymptotic decay rate 2 (gamma/4 - h) of |A0(t)|^2 on the overdamped
/// branch; tends to 4 omega^2 / gamma for gamma >> omega.
/// Throws std::domain_error unless gamma / 4 > omega.
double continuous_decay_rate(double omega, double gamma);

/// Pulsed versus continuous effective decay under gamma = 4 / dt.
///
/// The pulsed scheme's omega is the Rabi angular frequency; the continuous
/// generator's coupling is half of it. That conversion happens here and
/// nowhere else.
struct EquivalenceResult {
    double dt = 0.0;
    double omega_pulsed = 0.0;
    double omega_continuous = 0.0;
    double gamma_matched = 0.0;
    double rate_pulsed = 0.0;
    double rate_continuous = 0.0;
    /// |rate_pulsed - rate_continuous| / rate_continuous.
    double relative_gap = 0.0;
};

/// Throws std::invalid_argument for non-positive inputs and std::domain_error
/// when gamma / 4 <= omega_pulsed / 2.
EquivalenceResult equivalence_check(double omega_pulsed, double dt);

struct BinomialInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval. Throws std::invalid_argument unless
/// successes <= trials, trials >= 1 and 0 < confidence < 1.
BinomialInterval binomial_ci(std::size_t successes, std::size_t trials, double confidence);

/// Two-sided standard normal quantile z with P(|Z| <= z) = confidence.
double two_sided_z(double confidence);

}  // namespace zeno::analysis

#endif
