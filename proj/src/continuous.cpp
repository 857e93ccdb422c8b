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

#include "zeno/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zeno/analysis.hpp"
#include "zeno/errors.hpp"
#include "zeno/parallel.hpp"

namespace zeno::continuous {

namespace {

constexpr double kMaxProductPerStep = 0.01;
constexpr double kStepGuardSlack = 1e-12;
constexpr double kMaxJumpProbability = 0.1;
constexpr double kUnitNormTolerance = 1e-9;
constexpr std::size_t kBatchLanes = 256;

void require(bool ok, const std::string &what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_rates(double omega, double gamma) {
    require(std::isfinite(omega) && omega > 0.0, "omega must be positive and finite");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be non-negative and finite");
}

// e^{-gamma t / 4} times the even and odd parts of exp(-i K t), where
// K = H + i gamma / 4 has K^2 = -h^2 (h^2 = (gamma/4)^2 - omega^2):
//   even = cosh(ht),  odd = sinh(ht) / h,  continued to h^2 <= 0.
struct DampedParts {
    double even;
    double odd;
    double h;
    Branch branch;
};

DampedParts damped_parts(double omega, double gamma, double t) {
    const double quarter = gamma / 4.0;
    const double h2 = quarter * quarter - omega * omega;
    DampedParts p{};
    if (h2 > 0.0) {
        const double h = std::sqrt(h2);
        // h - gamma/4 = -omega^2 / (gamma/4 + h), without cancellation.
        const double slow = std::exp(-omega * omega / (quarter + h) * t);
        const double fast = std::exp(-2.0 * h * t);
        p = {slow * (1.0 + fast) / 2.0, slow * (-std::expm1(-2.0 * h * t)) / (2.0 * h), h, Branch::overdamped};
    } else if (h2 < 0.0) {
        const double h = std::sqrt(-h2);
        const double decay = std::exp(-quarter * t);
        p = {decay * std::cos(h * t), decay * std::sin(h * t) / h, h, Branch::underdamped};
    } else {
        const double decay = std::exp(-quarter * t);
        p = {decay, decay * t, 0.0, Branch::critical};
    }
    return p;
}

void check_unit_norm(const TwoLevelState &state) {
    double n = state.norm();
    if (!(std::abs(n - 1.0) <= kUnitNormTolerance)) {
        throw std::invalid_argument("mcwf_step: state norm " + std::to_string(n) + " is not 1");
    }
}

// Shared by mcwf_step and run_trajectory so that single-trajectory and
// batched ensembles perform the same floating-point operations.
bool step_lane(const simd::KernelTable &k, simd::LaneSpan lane, double gamma_dt, const Mat2 &u, RngStream &rng) {
    double population = 0.0;
    k.excited_population(lane, std::span(&population, 1));
    const double jump_probability = gamma_dt * population;
    if (!(jump_probability < kMaxJumpProbability)) {
        throw ConfigError("mcwf_step: gamma*step*|a1|^2 = " + std::to_string(jump_probability) +
                          " is not below 0.1; reduce the step");
    }
    if (rng.next_uniform() < jump_probability) {
        return true;
    }
    k.propagate_normalize(u, lane);
    return false;
}

struct StepPlan {
    std::size_t count;
    double full_dt;
    double last_dt;
    Mat2 full;
    Mat2 last;

    explicit StepPlan(const ContinuousParams &p)
        : count(p.step_count()),
          full_dt(p.step),
          last_dt(p.step_length(count - 1)),
          full(no_jump_step_matrix(p.omega, p.gamma, p.step, p.stepping)),
          last(no_jump_step_matrix(p.omega, p.gamma, last_dt, p.stepping)) {}

    bool is_last(std::size_t k) const { return k + 1 == count; }
    double dt(std::size_t k) const { return is_last(k) ? last_dt : full_dt; }
    const Mat2 &matrix(std::size_t k) const { return is_last(k) ? last : full; }
};

const simd::KernelTable &select_kernels(const std::optional<simd::Isa> &isa) {
    return isa ? simd::kernels(*isa) : simd::active_kernels();
}

}  // namespace

std::string_view to_string(Stepping stepping) {
    return stepping == Stepping::first_order ? "first_order" : "exact_exponential";
}

std::string_view to_string(Branch branch) {
    switch (branch) {
    case Branch::overdamped:
        return "overdamped";
    case Branch::critical:
        return "critical";
    case Branch::underdamped:
        return "underdamped";
    }
    return "unknown";
}

std::string_view to_string(AmplitudeCoefficient c) {
    return c == AmplitudeCoefficient::derived ? "gamma/(4h)" : "gamma/(2h)";
}

double ContinuousParams::default_step(double omega, double gamma, double window) {
    double step = window / 100.0;
    if (gamma > 0.0) step = std::min(step, kMaxProductPerStep / gamma);
    if (omega > 0.0) step = std::min(step, kMaxProductPerStep / omega);
    return step;
}

ContinuousParams ContinuousParams::with_default_step(double omega, double gamma, double window, Stepping stepping) {
    ContinuousParams p;
    p.omega = omega;
    p.gamma = gamma;
    p.window = window;
    p.step = default_step(omega, gamma, window);
    p.stepping = stepping;
    p.validate();
    return p;
}

void ContinuousParams::validate() const {
    require_rates(omega, gamma);
    require(std::isfinite(window) && window > 0.0, "window must be positive and finite");
    require(std::isfinite(step) && step > 0.0, "step must be positive and finite");
    const double limit = kMaxProductPerStep * (1.0 + kStepGuardSlack);
    if (gamma * step > limit) {
        throw ConfigError("gamma*step = " + std::to_string(gamma * step) + " exceeds 0.01");
    }
    if (omega * step > limit) {
        throw ConfigError("omega*step = " + std::to_string(omega * step) + " exceeds 0.01");
    }
}

std::size_t ContinuousParams::step_count() const {
    double ratio = window / step;
    auto n = static_cast<std::size_t>(std::ceil(ratio * (1.0 - kStepGuardSlack)));
    return std::max<std::size_t>(n, 1);
}

double ContinuousParams::step_length(std::size_t k) const {
    std::size_t n = step_count();
    if (k + 1 < n) return step;
    return window - static_cast<double>(n - 1) * step;
}

double ContinuousParams::step_end(std::size_t k) const {
    std::size_t n = step_count();
    if (k + 1 >= n) return window;
    return static_cast<double>(k + 1) * step;
}

Mat2 hamiltonian(double omega, double gamma) {
    require_rates(omega, gamma);
    return {0.0, omega, omega, Complex{0.0, -gamma / 2.0}};
}

SurvivalAmplitude survival_amplitude(double omega, double gamma, double t, AmplitudeCoefficient coefficient) {
    require_rates(omega, gamma);
    require(std::isfinite(t) && t >= 0.0, "survival_amplitude: t must be non-negative");
    DampedParts p = damped_parts(omega, gamma, t);
    const double c = coefficient == AmplitudeCoefficient::derived ? gamma / 4.0 : gamma / 2.0;
    return {Complex{p.even + c * p.odd, 0.0}, p.h, p.branch};
}

Mat2 propagator(double omega, double gamma, double t) {
    require_rates(omega, gamma);
    require(std::isfinite(t) && t >= 0.0, "propagator: t must be non-negative");
    DampedParts p = damped_parts(omega, gamma, t);
    const double quarter = gamma / 4.0;
    const Complex off{0.0, -omega * p.odd};
    return {p.even + quarter * p.odd, off, off, p.even - quarter * p.odd};
}

Mat2 no_jump_step_matrix(double omega, double gamma, double dt, Stepping stepping) {
    if (stepping == Stepping::exact_exponential) {
        return propagator(omega, gamma, dt);
    }
    return Mat2::identity() - Complex{0.0, dt} * hamiltonian(omega, gamma);
}

StepOutcome mcwf_step(const TwoLevelState &state, const ContinuousParams &params, RngStream &rng) {
    params.validate();
    check_unit_norm(state);
    simd::LaneBuffer buffer(1);
    buffer.set(0, state);
    const Mat2 u = no_jump_step_matrix(params.omega, params.gamma, params.step, params.stepping);
    if (step_lane(simd::kernels(simd::Isa::scalar), buffer.lanes(), params.gamma * params.step, u, rng)) {
        return Jump{};
    }
    return buffer.get(0);
}

TrajectoryOutcome run_trajectory(const ContinuousParams &params, RngStream &rng) {
    params.validate();
    const StepPlan plan(params);
    const simd::KernelTable &k = simd::kernels(simd::Isa::scalar);
    simd::LaneBuffer buffer(1);
    buffer.set(0, TwoLevelState::ground());

    TrajectoryOutcome out;
    out.stream_id = rng.stream_index();
    for (std::size_t s = 0; s < plan.count; s++) {
        if (step_lane(k, buffer.lanes(), params.gamma * plan.dt(s), plan.matrix(s), rng)) {
            out.jumped = true;
            out.jump_time = params.step_end(s);
            return out;
        }
    }
    out.final_state = buffer.get(0);
    out.readout_excited = rng.next_uniform() < std::norm(out.final_state->a1);
    return out;
}

namespace {

void run_batch(const ContinuousParams &params, const StepPlan &plan, const simd::KernelTable &k,
               const EnsembleOptions &options, std::size_t first, std::span<TrajectoryOutcome> out) {
    const std::size_t count = out.size();
    simd::LaneBuffer buffer(count);
    std::vector<std::size_t> ids(count);
    std::vector<RngStream> streams;
    streams.reserve(count);
    std::vector<double> population(count);
    for (std::size_t j = 0; j < count; j++) {
        buffer.set(j, TwoLevelState::ground());
        ids[j] = j;
        streams.emplace_back(options.seed, options.stream_offset + first + j);
        out[j] = TrajectoryOutcome{};
        out[j].stream_id = options.stream_offset + first + j;
    }

    std::size_t active = count;
    for (std::size_t s = 0; s < plan.count && active > 0; s++) {
        const double gamma_dt = params.gamma * plan.dt(s);
        k.excited_population(buffer.lanes(active), std::span(population).first(active));
        std::size_t j = 0;
        while (j < active) {
            // Same guard as step_lane; unreachable for validated params.
            const double jump_probability = gamma_dt * population[j];
            if (!(jump_probability < kMaxJumpProbability)) {
                throw ConfigError("mcwf_step: gamma*step*|a1|^2 = " + std::to_string(jump_probability) +
                                  " is not below 0.1; reduce the step");
            }
            if (streams[j].next_uniform() < jump_probability) {
                TrajectoryOutcome &o = out[ids[j]];
                o.jumped = true;
                o.jump_time = params.step_end(s);
                // Swap-remove; the moved lane has not drawn yet this step.
                active--;
                buffer.move_lane(active, j);
                ids[j] = ids[active];
                streams[j] = streams[active];
                population[j] = population[active];
                continue;
            }
            j++;
        }
        k.propagate_normalize(plan.matrix(s), buffer.lanes(active));
    }
    for (std::size_t j = 0; j < active; j++) {
        TrajectoryOutcome &o = out[ids[j]];
        o.final_state = buffer.get(j);
        o.readout_excited = streams[j].next_uniform() < std::norm(o.final_state->a1);
    }
}

}  // namespace

std::vector<TrajectoryOutcome> run_ensemble(const ContinuousParams &params, std::size_t runs,
                                            const EnsembleOptions &options) {
    params.validate();
    const StepPlan plan(params);
    const simd::KernelTable &k = select_kernels(options.isa);
    std::vector<TrajectoryOutcome> outcomes(runs);
    const std::size_t batches = (runs + kBatchLanes - 1) / kBatchLanes;
    parallel_for(batches, options.threads, [&](std::size_t b) {
        std::size_t first = b * kBatchLanes;
        std::size_t count = std::min(kBatchLanes, runs - first);
        run_batch(params, plan, k, options, first, std::span(outcomes).subspan(first, count));
    });
    return outcomes;
}

std::vector<SweepPoint> sweep_gamma(double omega, double window, std::span<const double> gamma_grid,
                                    std::size_t runs, std::uint64_t seed, const SweepOptions &options) {
    require(!gamma_grid.empty(), "sweep_gamma: empty gamma grid");
    require(runs >= 1, "sweep_gamma: runs must be at least 1");
    std::vector<SweepPoint> points;
    points.reserve(gamma_grid.size());
    for (double gamma : gamma_grid) {
        ContinuousParams params;
        params.omega = omega;
        params.gamma = gamma;
        params.window = window;
        params.step = options.step.value_or(ContinuousParams::default_step(omega, gamma, window));
        params.stepping = options.stepping;
        params.validate();

        EnsembleOptions ensemble;
        ensemble.seed = seed;
        ensemble.threads = options.threads;
        ensemble.isa = options.isa;
        std::vector<TrajectoryOutcome> outcomes = run_ensemble(params, runs, ensemble);

        SweepPoint p;
        p.gamma = gamma;
        p.step = params.step;
        p.no_jump_count = static_cast<std::size_t>(
            std::count_if(outcomes.begin(), outcomes.end(), [](const TrajectoryOutcome &o) { return o.no_tunnel(); }));
        auto ci = analysis::binomial_ci(p.no_jump_count, runs, options.confidence);
        p.ci_low = ci.low;
        p.ci_high = ci.high;
        const double n = static_cast<double>(runs);
        p.analytic_count = n * std::norm(survival_amplitude(omega, gamma, window).value);
        p.oracle_count = n * std::norm(mat_exp(hamiltonian(omega, gamma), window)(0, 0));
        points.push_back(p);
    }
    return points;
}

}  // namespace zeno::continuous
