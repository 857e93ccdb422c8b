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

// Continuous-measurement scheme.
//
// The bias lets only |1> tunnel, at rate gamma. Between tunneling events the
// qubit evolves under the non-Hermitian generator
//
//     H = [[0, omega], [omega, -i gamma / 2]]
//
// Note the coupling convention: with gamma = 0 the population transfer
// |0> -> |1> completes at t = pi / (2 omega), i.e. omega here is half the Rabi
// angular frequency used by zeno::pulsed.

#ifndef ZENO_CONTINUOUS_HPP
#define ZENO_CONTINUOUS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "zeno/qmath.hpp"
#include "zeno/rng.hpp"
#include "zeno/simd.hpp"

namespace zeno::continuous {

enum class Stepping {
    /// psi <- (1 - i H dt) psi, renormalized.
    first_order,
    /// psi <- exp(-i H dt) psi, renormalized.
    exact_exponential,
};

std::string_view to_string(Stepping stepping);

struct ContinuousParams {
    double omega = 0.0;
    double gamma = 0.0;
    double window = 0.0;
    double step = 0.0;
    Stepping stepping = Stepping::exact_exponential;

    /// min(0.01 / gamma, 0.01 / omega, window / 100).
    static double default_step(double omega, double gamma, double window);
    static ContinuousParams with_default_step(double omega, double gamma, double window,
                                              Stepping stepping = Stepping::exact_exponential);

    /// Throws ConfigError naming the offending product when gamma * step or
    /// omega * step exceeds 0.01, std::invalid_argument for other bad values.
    void validate() const;

    /// ceil(window / step); the last step is shortened to end exactly at window.
    std::size_t step_count() const;
    double step_length(std::size_t k) const;
    double step_end(std::size_t k) const;
};

/// Throws std::invalid_argument unless omega > 0 and gamma >= 0.
Mat2 hamiltonian(double omega, double gamma);

enum class Branch { overdamped, critical, underdamped };

std::string_view to_string(Branch branch);

/// Coefficient of sinh(ht) in the survival amplitude.
enum class AmplitudeCoefficient {
    /// gamma / (4h): follows from diagonalizing the generator.
    derived,
    /// gamma / (2h): the variant kept for comparison reports.
    printed,
};

std::string_view to_string(AmplitudeCoefficient c);

struct SurvivalAmplitude {
    Complex value;
    /// sqrt(|(gamma/4)^2 - omega^2|).
    double h = 0.0;
    Branch branch = Branch::overdamped;
};

/// <0| exp(-i H t) |0> = e^{-gamma t / 4} [cosh(ht) + coefficient * sinh(ht)],
/// continued analytically to the critical and underdamped branches.
SurvivalAmplitude survival_amplitude(double omega, double gamma, double t,
                                     AmplitudeCoefficient coefficient = AmplitudeCoefficient::derived);

/// Closed-form exp(-i H t) on all three branches.
Mat2 propagator(double omega, double gamma, double t);

/// No-jump evolution matrix for one step of length dt.
Mat2 no_jump_step_matrix(double omega, double gamma, double dt, Stepping stepping);

struct Jump {};
using StepOutcome = std::variant<Jump, TwoLevelState>;

/// One Monte Carlo wave-function step of length params.step.
///
/// Draws r from `rng` and jumps when r < gamma * step * |a1|^2; otherwise
/// applies the no-jump step and renormalizes. Requires a unit-norm state
/// (within 1e-9) and throws ConfigError when the jump probability is >= 0.1.
StepOutcome mcwf_step(const TwoLevelState &state, const ContinuousParams &params, RngStream &rng);

struct TrajectoryOutcome {
    bool jumped = false;
    /// End of the step in which the jump was drawn.
    std::optional<double> jump_time;
    /// Normalized state at the end of the window; only present without a jump.
    std::optional<TwoLevelState> final_state;
    /// Projective readout at the end of the window found |1>. Only meaningful
    /// without a jump; drawn as one extra uniform against |a1|^2.
    bool readout_excited = false;
    std::uint64_t stream_id = 0;

    /// No jump during the window and |0> at the final readout. Its probability
    /// is |<0|exp(-i H T)|0>|^2, whereas the no-jump probability alone is the
    /// full norm |A0|^2 + |A1|^2.
    bool no_tunnel() const { return !jumped && !readout_excited; }

    friend bool operator==(const TrajectoryOutcome &, const TrajectoryOutcome &) = default;
};

/// Runs one trajectory from |0> to the first jump or the end of the window,
/// followed by the final readout when no jump occurred.
TrajectoryOutcome run_trajectory(const ContinuousParams &params, RngStream &rng);

struct EnsembleOptions {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    /// Trajectory i draws from RngStream(seed, stream_offset + i).
    std::uint64_t stream_offset = 0;
    /// Kernel set; defaults to simd::active_kernels().
    std::optional<simd::Isa> isa;
};

/// Runs `runs` trajectories in SIMD batches. Each outcome is bit-identical to
/// run_trajectory on the same stream, for any thread count and kernel set.
std::vector<TrajectoryOutcome> run_ensemble(const ContinuousParams &params, std::size_t runs,
                                            const EnsembleOptions &options);

struct SweepPoint {
    double gamma = 0.0;
    double step = 0.0;
    /// Trajectories with TrajectoryOutcome::no_tunnel().
    std::size_t no_jump_count = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// runs * |A0(T)|^2 from the shipped closed form.
    double analytic_count = 0.0;
    /// runs * |<0|mat_exp(H, T)|0>|^2.
    double oracle_count = 0.0;
};

struct SweepOptions {
    Stepping stepping = Stepping::exact_exponential;
    /// Overrides the default step policy when set.
    std::optional<double> step;
    std::size_t threads = 1;
    std::optional<simd::Isa> isa;
    double confidence = 0.95;
};

/// No-jump counts over a grid of tunneling rates. Trajectory i uses stream
/// (seed, i) at every grid point, so neighbouring points share random numbers.
/// Throws std::invalid_argument on an empty grid or zero runs.
std::vector<SweepPoint> sweep_gamma(double omega, double window, std::span<const double> gamma_grid,
                                    std::size_t runs, std::uint64_t seed, const SweepOptions &options);

}  // namespace zeno::continuous

#endif
