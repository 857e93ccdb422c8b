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

// Experiment runners behind the command-line tool. Each returns a Document
// whose metadata echoes every parameter that affects the data. Execution
// settings (thread count, SIMD kernel set) never change results and are not
// recorded.

#ifndef ZENO_EXPERIMENTS_HPP
#define ZENO_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zeno/continuous.hpp"
#include "zeno/output.hpp"
#include "zeno/qmath.hpp"

namespace zeno::experiments {

inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunContext {
    std::uint64_t seed = kDefaultSeed;
    /// "default", "env:ZENO_SEED" or "flag".
    std::string seed_source = "default";
    std::size_t threads = 1;
    std::optional<simd::Isa> isa;
    std::string timestamp;
};

struct Fig2Config {
    std::size_t n_max = 100;
};

/// Columns: n, survival_exact, survival_approx, abs_diff for n = 1..n_max.
io::Document run_fig2(const Fig2Config &config, const RunContext &ctx);

struct Fig3Config {
    /// Rabi angular frequency (population period 2 pi / omega).
    double omega = kFrequencyLabelScale;
    /// Probe intervals; empty means {pi/(50 omega), pi/(100 omega)}.
    std::vector<double> dt_list;
    /// End time; unset means one Rabi period 2 pi / omega.
    std::optional<double> t_max;
};

/// Rows on the grid of the smallest dt. Per-dt stepwise columns are empty at
/// times that are not probe boundaries for that dt.
io::Document run_fig3(const Fig3Config &config, const RunContext &ctx);

struct Fig4Config {
    /// Coupling of the continuous-scheme generator.
    double omega = kFrequencyLabelScale;
    /// Unset means pi / (2 omega).
    std::optional<double> window;
    double gamma_min = 50.0;
    double gamma_max = 500.0;
    std::size_t gamma_steps = 10;
    std::size_t runs = 1000;
    continuous::Stepping stepping = continuous::Stepping::exact_exponential;
    /// Unset means the default step policy.
    std::optional<double> step;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t steps);
std::vector<double> geometric_grid(double lo, double hi, std::size_t steps);

/// Columns: gamma, no_jump_count, ci_low, ci_high, analytic_count, oracle_count.
io::Document run_fig4(const Fig4Config &config, const RunContext &ctx);

struct PulsedSimConfig {
    double omega = kFrequencyLabelScale;
    std::size_t n_probes = 10;
    std::size_t runs = 100000;
    double epsilon0 = 0.0;
    double eta = 0.0;
    /// Unset means pi / omega.
    std::optional<double> window;
};

io::Document run_pulsed_sim(const PulsedSimConfig &config, const RunContext &ctx);

struct EquivalenceConfig {
    double omega_pulsed = 2.0 * kFrequencyLabelScale;
    double dt_max = 0.02;
    double dt_min = 0.0002;
    std::size_t dt_steps = 9;
};

io::Document run_equivalence(const EquivalenceConfig &config, const RunContext &ctx);

struct ValidateConfig {
    std::vector<double> omegas{kPi, 2.0 * kPi, 4.0 * kPi};
    std::vector<double> gammas{0.0, 10.0, 50.0, 200.0, 500.0};
    std::vector<double> times{0.0, 0.05, 0.25};
    std::size_t fine_steps = 100000;
    double oracle_tolerance = 1e-8;
    double coefficient_tolerance = 1e-10;
    EquivalenceConfig equivalence;
};

/// JSON report: oracle deviations over the grid, the survival-amplitude
/// coefficient decision, and the pulsed/continuous equivalence table.
io::Document run_validate(const ValidateConfig &config, const RunContext &ctx);

}  // namespace zeno::experiments

#endif
