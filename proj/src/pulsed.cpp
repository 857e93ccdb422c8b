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

#include "zeno/pulsed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/parallel.hpp"
#include "zeno/qmath.hpp"

namespace zeno::pulsed {

namespace {

constexpr double kCommensurateTolerance = 1e-9;
constexpr double kSmallAngleLimit = 0.5;

void require(bool ok, const char *what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

PulsedProtocol PulsedProtocol::half_period(double omega, std::size_t n_probes) {
    require(omega > 0.0 && std::isfinite(omega), "half_period: omega must be positive");
    PulsedProtocol p;
    p.omega = omega;
    p.n_probes = n_probes;
    p.window = kPi / omega;
    return p;
}

void PulsedProtocol::validate() const {
    require(std::isfinite(omega) && omega >= 0.0, "pulsed protocol: omega must be finite and non-negative");
    require(n_probes >= 1, "pulsed protocol: n_probes must be at least 1");
    require(std::isfinite(window) && window > 0.0, "pulsed protocol: window must be positive");
    require(interval() > 0.0, "pulsed protocol: probe interval must be positive");
    if (probe_duration) {
        require(*probe_duration > 0.0 && *probe_duration < interval(),
                "pulsed protocol: probe duration must be positive and shorter than the probe interval");
    }
    if (imperfections) {
        require(imperfections->false_switch_prob >= 0.0 && imperfections->false_switch_prob < 1.0,
                "pulsed protocol: false-switch probability must lie in [0, 1)");
        require(imperfections->miss_prob >= 0.0 && imperfections->miss_prob < 1.0,
                "pulsed protocol: miss probability must lie in [0, 1)");
    }
}

double survival_exact(std::size_t n) {
    require(n >= 1, "survival_exact: n must be at least 1");
    // A single probe at the half period always finds |1>; cos(pi / 2) itself
    // would round to 6e-17.
    if (n == 1) return 0.0;
    // cos^2 x = 1 - 2 sin^2(x/2) through log1p, so raising to the n-th power
    // does not amplify the rounding of cos^2 x.
    const double nd = static_cast<double>(n);
    const double s = std::sin(kPi / (4.0 * nd));
    return std::exp(2.0 * nd * std::log1p(-2.0 * s * s));
}

double survival_approx(std::size_t n) {
    require(n >= 1, "survival_approx: n must be at least 1");
    return std::exp(-kPi * kPi / (4.0 * static_cast<double>(n)));
}

double survival_vs_time(double omega, double dt, double t, CurveMode mode) {
    require(std::isfinite(omega), "survival_vs_time: omega must be finite");
    require(std::isfinite(dt) && dt > 0.0, "survival_vs_time: dt must be positive");
    require(std::isfinite(t) && t >= 0.0, "survival_vs_time: t must be non-negative");
    if (mode == CurveMode::approx) {
        return std::exp(-(omega * omega * dt / 4.0) * t);
    }
    double ratio = t / dt;
    double steps = std::round(ratio);
    if (std::abs(ratio - steps) > kCommensurateTolerance) {
        throw std::invalid_argument("survival_vs_time: t = " + std::to_string(t) +
                                    " is not a whole number of probe intervals dt = " + std::to_string(dt));
    }
    if (steps == 0.0) return 1.0;
    const double s = std::sin(omega * dt / 2.0);
    return std::exp(steps * std::log1p(-s * s));
}

double effective_decay_time(double omega, double dt) {
    require(std::isfinite(omega) && omega > 0.0, "effective_decay_time: omega must be positive");
    require(std::isfinite(dt) && dt > 0.0, "effective_decay_time: dt must be positive");
    return 4.0 / (omega * omega * dt);
}

ExcitedPopulation mean_excited_population(double omega, double tau) {
    require(std::isfinite(tau) && tau > 0.0, "mean_excited_population: tau must be positive");
    require(std::isfinite(omega) && omega >= 0.0, "mean_excited_population: omega must be finite and non-negative");
    const double x = omega * tau;
    ExcitedPopulation out;
    if (x < 1e-3) {
        // 1/2 (1 - sin x / x) without cancellation.
        double x2 = x * x;
        out.exact = x2 / 12.0 - x2 * x2 / 240.0;
    } else {
        out.exact = 0.5 * (1.0 - std::sin(x) / x);
    }
    out.small_angle = x * x / 12.0;
    out.outside_small_angle_regime = x >= kSmallAngleLimit;
    return out;
}

PulsedRunResult simulate_pulsed_run(const PulsedProtocol &protocol, RngStream &rng) {
    protocol.validate();
    const ProbeImperfections errors = protocol.imperfections.value_or(ProbeImperfections{});
    const double half_angle = protocol.omega * protocol.interval() / 2.0;
    const double flip = std::sin(half_angle) * std::sin(half_angle);
    const double stay = std::cos(half_angle) * std::cos(half_angle);

    bool excited = false;
    PulsedRunResult result;
    for (std::size_t k = 0; k < protocol.n_probes; k++) {
        double born = rng.next_uniform();
        double readout = rng.next_uniform();
        bool found_excited = born < (excited ? stay : flip);
        bool switched = found_excited ? readout >= errors.miss_prob : readout < errors.false_switch_prob;
        if (switched) {
            result.switch_index = k;
            result.probes_completed = k + 1;
            return result;
        }
        excited = found_excited;
    }
    result.survived = true;
    result.probes_completed = protocol.n_probes;
    return result;
}

double survival_probability(const PulsedProtocol &protocol) {
    protocol.validate();
    const ProbeImperfections errors = protocol.imperfections.value_or(ProbeImperfections{});
    const double half_angle = protocol.omega * protocol.interval() / 2.0;
    const double flip = std::sin(half_angle) * std::sin(half_angle);
    const double stay = std::cos(half_angle) * std::cos(half_angle);
    double ground = 1.0;
    double excited = 0.0;
    for (std::size_t k = 0; k < protocol.n_probes; k++) {
        double found_ground = ground * (1.0 - flip) + excited * (1.0 - stay);
        double found_excited = ground * flip + excited * stay;
        ground = found_ground * (1.0 - errors.false_switch_prob);
        excited = found_excited * errors.miss_prob;
    }
    return ground + excited;
}

PulsedEnsemble run_pulsed_ensemble(const PulsedProtocol &protocol, std::size_t runs, std::uint64_t seed,
                                   std::size_t threads) {
    protocol.validate();
    require(runs >= 1, "run_pulsed_ensemble: runs must be at least 1");
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (runs + kChunk - 1) / kChunk;
    std::vector<std::size_t> survived(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::size_t end = std::min(runs, (c + 1) * kChunk);
        std::size_t count = 0;
        for (std::size_t i = c * kChunk; i < end; i++) {
            RngStream rng(seed, i);
            count += simulate_pulsed_run(protocol, rng).survived ? 1 : 0;
        }
        survived[c] = count;
    });
    PulsedEnsemble out;
    out.runs = runs;
    for (std::size_t s : survived) out.survived += s;
    return out;
}

}  // namespace zeno::pulsed
