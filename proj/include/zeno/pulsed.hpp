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

// Pulsed projective-measurement scheme.
//
// A resonantly driven qubit starts in |0> and is probed n times at equal
// intervals dt = T / n. Each probe is instantaneous and selective: finding |1>
// switches the junction and ends the run. Here omega is the Rabi angular
// frequency with population period 2*pi/omega, so the ground population after
// free evolution for dt is cos^2(omega * dt / 2).

#ifndef ZENO_PULSED_HPP
#define ZENO_PULSED_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "zeno/rng.hpp"

namespace zeno::pulsed {

/// Readout errors of a single probe.
struct ProbeImperfections {
    /// A ground-state qubit switches anyway.
    double false_switch_prob = 0.0;
    /// An excited-state qubit fails to switch; it is left projected on |1>.
    double miss_prob = 0.0;

    /// Symmetric split of a 96% single-shot fidelity.
    static constexpr ProbeImperfections suggested() { return {0.02, 0.02}; }
};

struct PulsedProtocol {
    double omega = 0.0;
    std::size_t n_probes = 1;
    double window = 0.0;
    /// Only used for mean_excited_population; never enters the evolution.
    std::optional<double> probe_duration;
    std::optional<ProbeImperfections> imperfections;

    /// Window defaults to the half Rabi period pi / omega.
    static PulsedProtocol half_period(double omega, std::size_t n_probes);

    double interval() const { return window / static_cast<double>(n_probes); }

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

struct PulsedRunResult {
    bool survived = false;
    std::size_t probes_completed = 0;
    /// Zero-based probe index at which the junction switched.
    std::optional<std::size_t> switch_index;
};

/// [cos^2(pi / 2n)]^n. Throws std::invalid_argument for n == 0.
double survival_exact(std::size_t n);

/// exp(-pi^2 / 4n). Throws std::invalid_argument for n == 0.
double survival_approx(std::size_t n);

enum class CurveMode { exact, approx };

/// Survival probability of |0> at time t with probes every dt.
/// Exact mode needs t to be a whole number of intervals (|t/dt - k| <= 1e-9)
/// and returns cos^(2k)(omega dt / 2); approx mode returns exp(-omega^2 dt t / 4).
double survival_vs_time(double omega, double dt, double t, CurveMode mode);

/// t_c = 4 / (omega^2 dt).
double effective_decay_time(double omega, double dt);

struct ExcitedPopulation {
    /// (1/tau) * integral_0^tau sin^2(omega t / 2) dt.
    double exact = 0.0;
    /// omega^2 tau^2 / 12.
    double small_angle = 0.0;
    /// omega * tau >= 0.5; the small-angle form is not trustworthy.
    bool outside_small_angle_regime = false;
};

ExcitedPopulation mean_excited_population(double omega, double tau);

/// One stochastic realization of the probe sequence.
///
/// Draws come from `rng` in a fixed pattern, two per probe (Born-rule outcome,
/// then readout error), so a run is a pure function of (protocol, stream).
PulsedRunResult simulate_pulsed_run(const PulsedProtocol &protocol, RngStream &rng);

/// Probability that simulate_pulsed_run survives, from the two-state Markov
/// chain of projected states. Equals survival_vs_time(exact) for ideal probes.
double survival_probability(const PulsedProtocol &protocol);

struct PulsedEnsemble {
    std::size_t runs = 0;
    std::size_t survived = 0;
};

/// Run i uses RngStream(seed, i); the result does not depend on `threads`.
PulsedEnsemble run_pulsed_ensemble(const PulsedProtocol &protocol, std::size_t runs, std::uint64_t seed,
                                   std::size_t threads);

}  // namespace zeno::pulsed

#endif
