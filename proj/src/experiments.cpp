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

#include "zeno/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zeno/analysis.hpp"
#include "zeno/pulsed.hpp"

namespace zeno::experiments {

namespace {

constexpr double kCommensurateTolerance = 1e-9;
constexpr double kConfidence = 0.95;

void require(bool ok, const std::string &what) {
    if (!ok) throw std::invalid_argument(what);
}

io::Cell count_cell(std::size_t n) {
    return io::Cell{static_cast<std::int64_t>(n)};
}

io::Document make_document(std::string experiment, const RunContext &ctx) {
    io::Document doc;
    doc.experiment = std::move(experiment);
    doc.timestamp = ctx.timestamp;
    return doc;
}

void add_seed(io::Metadata &meta, const RunContext &ctx) {
    meta.add("seed", ctx.seed);
    meta.add("seed_source", ctx.seed_source);
    meta.add("rng", "philox4x32-10, draw k of run i at counter (k, i), key seed");
}

std::string join(const std::vector<double> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); i++) {
        if (i) out += ' ';
        out += io::format_double(values[i]);
    }
    return out;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
    require(steps >= 1, "grid needs at least one point");
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "grid bounds must satisfy lo <= hi");
    if (steps == 1) return {lo};
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; i++) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    grid.back() = hi;
    return grid;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t steps) {
    require(steps >= 1, "grid needs at least one point");
    require(lo > 0.0 && hi >= lo && std::isfinite(hi), "geometric grid needs 0 < lo <= hi");
    if (steps == 1) return {lo};
    std::vector<double> grid(steps);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < steps; i++) {
        grid[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

io::Document run_fig2(const Fig2Config &config, const RunContext &ctx) {
    require(config.n_max >= 2, "fig2: n-max must be at least 2");
    io::Document doc = make_document("fig2", ctx);
    doc.metadata.add("n_max", config.n_max);
    doc.metadata.add("window", "half Rabi period, probes at T/n");
    doc.table.columns = {"n", "survival_exact", "survival_approx", "abs_diff"};
    for (std::size_t n = 1; n <= config.n_max; n++) {
        double exact = pulsed::survival_exact(n);
        double approx = pulsed::survival_approx(n);
        doc.table.rows.push_back({count_cell(n), exact, approx, std::abs(exact - approx)});
    }
    return doc;
}

io::Document run_fig3(const Fig3Config &config, const RunContext &ctx) {
    require(std::isfinite(config.omega) && config.omega > 0.0, "fig3: omega must be positive");
    std::vector<double> dts = config.dt_list;
    if (dts.empty()) {
        dts = {kPi / (50.0 * config.omega), kPi / (100.0 * config.omega)};
    }
    for (double dt : dts) {
        require(std::isfinite(dt) && dt > 0.0, "fig3: every dt must be positive");
    }
    const double t_max = config.t_max.value_or(2.0 * kPi / config.omega);
    require(std::isfinite(t_max) && t_max > 0.0, "fig3: t-max must be positive");
    const double sample_dt = *std::min_element(dts.begin(), dts.end());
    const auto samples = static_cast<std::size_t>(std::floor(t_max / sample_dt + kCommensurateTolerance));

    io::Document doc = make_document("fig3", ctx);
    doc.metadata.add("omega", config.omega);
    doc.metadata.add("omega_convention", "Rabi angular frequency, population period 2*pi/omega");
    for (std::size_t i = 0; i < dts.size(); i++) {
        doc.metadata.add("dt_" + std::to_string(i + 1), dts[i]);
    }
    doc.metadata.add("t_max", t_max);
    doc.metadata.add("sample_dt", sample_dt);

    doc.table.columns = {"t", "rabi_undamped"};
    for (std::size_t i = 0; i < dts.size(); i++) {
        doc.table.columns.push_back("stepwise_exact_" + std::to_string(i + 1));
        doc.table.columns.push_back("exponential_approx_" + std::to_string(i + 1));
    }
    for (std::size_t k = 0; k <= samples; k++) {
        const double t = static_cast<double>(k) * sample_dt;
        const double c = std::cos(config.omega * t / 2.0);
        std::vector<io::Cell> row{t, c * c};
        for (double dt : dts) {
            double ratio = t / dt;
            if (std::abs(ratio - std::round(ratio)) <= kCommensurateTolerance) {
                row.emplace_back(pulsed::survival_vs_time(config.omega, dt, t, pulsed::CurveMode::exact));
            } else {
                row.emplace_back(std::monostate{});
            }
            row.emplace_back(pulsed::survival_vs_time(config.omega, dt, t, pulsed::CurveMode::approx));
        }
        doc.table.rows.push_back(std::move(row));
    }
    return doc;
}

io::Document run_fig4(const Fig4Config &config, const RunContext &ctx) {
    require(config.runs >= 1, "fig4: runs must be at least 1");
    require(std::isfinite(config.omega) && config.omega > 0.0, "fig4: omega must be positive");
    const double window = config.window.value_or(kPi / (2.0 * config.omega));
    const std::vector<double> grid = linear_grid(config.gamma_min, config.gamma_max, config.gamma_steps);

    continuous::SweepOptions options;
    options.stepping = config.stepping;
    options.step = config.step;
    options.threads = ctx.threads;
    options.isa = ctx.isa;
    options.confidence = kConfidence;
    const auto points = continuous::sweep_gamma(config.omega, window, grid, config.runs, ctx.seed, options);

    io::Document doc = make_document("fig4", ctx);
    add_seed(doc.metadata, ctx);
    doc.metadata.add("omega", config.omega);
    doc.metadata.add("omega_convention", "generator coupling, full transfer at pi/(2*omega)");
    doc.metadata.add("window", window);
    doc.metadata.add("gamma_min", config.gamma_min);
    doc.metadata.add("gamma_max", config.gamma_max);
    doc.metadata.add("gamma_steps", config.gamma_steps);
    doc.metadata.add("runs", config.runs);
    doc.metadata.add("stepping", std::string(continuous::to_string(config.stepping)));
    if (config.step) {
        doc.metadata.add("step_policy", "fixed");
        doc.metadata.add("step", *config.step);
    } else {
        doc.metadata.add("step_policy", "min(0.01/gamma, 0.01/omega, window/100)");
    }
    doc.metadata.add("amplitude_coefficient",
                     std::string(continuous::to_string(continuous::AmplitudeCoefficient::derived)));
    doc.metadata.add("confidence", kConfidence);
    doc.metadata.add("ci_method", "Wilson score, reported in counts");
    doc.metadata.add("streams", "trajectory i uses stream i at every gamma");
    doc.metadata.add("count_definition", "no jump in window and |0> at projective readout at T");

    doc.table.columns = {"gamma", "no_jump_count", "ci_low", "ci_high", "analytic_count", "oracle_count"};
    const double runs = static_cast<double>(config.runs);
    for (const auto &p : points) {
        doc.table.rows.push_back({p.gamma, count_cell(p.no_jump_count), runs * p.ci_low, runs * p.ci_high,
                                  p.analytic_count, p.oracle_count});
    }
    return doc;
}

io::Document run_pulsed_sim(const PulsedSimConfig &config, const RunContext &ctx) {
    require(config.runs >= 1, "pulsed-sim: runs must be at least 1");
    pulsed::PulsedProtocol protocol;
    protocol.omega = config.omega;
    protocol.n_probes = config.n_probes;
    if (config.window) {
        protocol.window = *config.window;
    } else {
        require(config.omega > 0.0, "pulsed-sim: omega must be positive unless --window is given");
        protocol.window = kPi / config.omega;
    }
    if (config.epsilon0 != 0.0 || config.eta != 0.0) {
        protocol.imperfections = pulsed::ProbeImperfections{config.epsilon0, config.eta};
    }
    protocol.validate();

    const auto ensemble = pulsed::run_pulsed_ensemble(protocol, config.runs, ctx.seed, ctx.threads);
    const auto ci = analysis::binomial_ci(ensemble.survived, ensemble.runs, kConfidence);
    const double ideal =
        pulsed::survival_vs_time(protocol.omega, protocol.interval(), protocol.window, pulsed::CurveMode::exact);

    io::Document doc = make_document("pulsed-sim", ctx);
    add_seed(doc.metadata, ctx);
    doc.metadata.add("omega", config.omega);
    doc.metadata.add("omega_convention", "Rabi angular frequency, population period 2*pi/omega");
    doc.metadata.add("window", protocol.window);
    doc.metadata.add("n_probes", config.n_probes);
    doc.metadata.add("interval", protocol.interval());
    doc.metadata.add("runs", config.runs);
    doc.metadata.add("epsilon0", config.epsilon0);
    doc.metadata.add("eta", config.eta);
    doc.metadata.add("confidence", kConfidence);
    doc.metadata.add("ci_method", "Wilson score, reported as fractions");

    doc.table.columns = {"n_probes",  "runs",    "survived",  "fraction", "ci_low",
                         "ci_high",   "predicted_probability", "ideal_survival"};
    doc.table.rows.push_back({count_cell(config.n_probes), count_cell(ensemble.runs), count_cell(ensemble.survived),
                              static_cast<double>(ensemble.survived) / static_cast<double>(ensemble.runs), ci.low,
                              ci.high, pulsed::survival_probability(protocol), ideal});
    return doc;
}

io::Document run_equivalence(const EquivalenceConfig &config, const RunContext &ctx) {
    std::vector<double> dts = geometric_grid(config.dt_min, config.dt_max, config.dt_steps);
    std::reverse(dts.begin(), dts.end());

    io::Document doc = make_document("equivalence", ctx);
    doc.metadata.add("omega_pulsed", config.omega_pulsed);
    doc.metadata.add("omega_continuous", config.omega_pulsed / 2.0);
    doc.metadata.add("convention", "omega_continuous = omega_pulsed / 2, gamma = 4 / dt");
    doc.metadata.add("dt_max", config.dt_max);
    doc.metadata.add("dt_min", config.dt_min);
    doc.metadata.add("dt_steps", config.dt_steps);
    doc.metadata.add("rate_pulsed", "omega_pulsed^2 * dt / 4");
    doc.metadata.add("rate_continuous", "2 * (gamma/4 - h)");

    doc.table.columns = {"dt", "gamma_matched", "rate_pulsed", "rate_continuous", "relative_gap"};
    for (double dt : dts) {
        auto r = analysis::equivalence_check(config.omega_pulsed, dt);
        doc.table.rows.push_back({r.dt, r.gamma_matched, r.rate_pulsed, r.rate_continuous, r.relative_gap});
    }
    return doc;
}

io::Document run_validate(const ValidateConfig &config, const RunContext &ctx) {
    require(!config.omegas.empty() && !config.gammas.empty() && !config.times.empty(), "validate: empty grid");
    using json = nlohmann::ordered_json;
    using continuous::AmplitudeCoefficient;

    double dev_closed_series = 0, dev_closed_fine = 0, dev_series_fine = 0;
    double dev_derived = 0, dev_printed = 0;
    for (double omega : config.omegas) {
        for (double gamma : config.gammas) {
            const Mat2 h = continuous::hamiltonian(omega, gamma);
            for (double t : config.times) {
                const Mat2 closed = continuous::propagator(omega, gamma, t);
                const Mat2 series = mat_exp(h, t);
                const Mat2 fine = fine_step_propagator(h, t, config.fine_steps);
                dev_closed_series = std::max(dev_closed_series, max_abs_diff(closed, series));
                dev_closed_fine = std::max(dev_closed_fine, max_abs_diff(closed, fine));
                dev_series_fine = std::max(dev_series_fine, max_abs_diff(series, fine));
                auto a_derived = continuous::survival_amplitude(omega, gamma, t, AmplitudeCoefficient::derived);
                auto a_printed = continuous::survival_amplitude(omega, gamma, t, AmplitudeCoefficient::printed);
                dev_derived = std::max(dev_derived, std::abs(a_derived.value - series(0, 0)));
                dev_printed = std::max(dev_printed, std::abs(a_printed.value - series(0, 0)));
            }
        }
    }
    const double worst = std::max({dev_closed_series, dev_closed_fine, dev_series_fine});

    json grid;
    grid["omega"] = config.omegas;
    grid["gamma"] = config.gammas;
    grid["t"] = config.times;
    grid["fine_steps"] = config.fine_steps;
    grid["max_dev_propagator_vs_mat_exp"] = dev_closed_series;
    grid["max_dev_propagator_vs_fine_step"] = dev_closed_fine;
    grid["max_dev_mat_exp_vs_fine_step"] = dev_series_fine;
    grid["tolerance"] = config.oracle_tolerance;
    grid["pass"] = worst < config.oracle_tolerance;

    const bool derived_matches = dev_derived < config.coefficient_tolerance;
    const bool printed_matches = dev_printed < config.coefficient_tolerance;
    json coeff;
    coeff["tolerance"] = config.coefficient_tolerance;
    coeff["candidates"] = json::array({
        json{{"variant", std::string(continuous::to_string(AmplitudeCoefficient::derived))},
             {"max_dev_vs_mat_exp", dev_derived},
             {"matches_oracle", derived_matches}},
        json{{"variant", std::string(continuous::to_string(AmplitudeCoefficient::printed))},
             {"max_dev_vs_mat_exp", dev_printed},
             {"matches_oracle", printed_matches}},
    });
    std::string selected = "none";
    json rejected = json::array();
    if (derived_matches) {
        selected = continuous::to_string(AmplitudeCoefficient::derived);
    } else if (printed_matches) {
        selected = continuous::to_string(AmplitudeCoefficient::printed);
    }
    if (!derived_matches) rejected.push_back(std::string(continuous::to_string(AmplitudeCoefficient::derived)));
    if (!printed_matches) rejected.push_back(std::string(continuous::to_string(AmplitudeCoefficient::printed)));
    coeff["selected"] = selected;
    coeff["rejected"] = rejected;
    coeff["shipped"] = std::string(continuous::to_string(AmplitudeCoefficient::derived));
    {
        const double omega = 2.0 * kPi, gamma = 50.0, t = 0.25;
        const double oracle = std::norm(mat_exp(continuous::hamiltonian(omega, gamma), t)(0, 0));
        const double derived =
            std::norm(continuous::survival_amplitude(omega, gamma, t, AmplitudeCoefficient::derived).value);
        const double printed =
            std::norm(continuous::survival_amplitude(omega, gamma, t, AmplitudeCoefficient::printed).value);
        coeff["spot_check"] = json{{"omega", omega},
                                   {"gamma", gamma},
                                   {"t", t},
                                   {"survival_mat_exp", oracle},
                                   {"survival_derived", derived},
                                   {"survival_printed", printed}};
    }

    const EquivalenceConfig &eq = config.equivalence;
    std::vector<double> dts = geometric_grid(eq.dt_min, eq.dt_max, eq.dt_steps);
    std::reverse(dts.begin(), dts.end());
    json table = json::array();
    double max_gap_strong = 0.0;
    bool shrinking = true;
    double previous_gap = INFINITY;
    for (double dt : dts) {
        auto r = analysis::equivalence_check(eq.omega_pulsed, dt);
        table.push_back(json{{"dt", r.dt},
                             {"gamma_matched", r.gamma_matched},
                             {"rate_pulsed", r.rate_pulsed},
                             {"rate_continuous", r.rate_continuous},
                             {"relative_gap", r.relative_gap}});
        if (r.gamma_matched >= 20.0 * r.omega_continuous) {
            max_gap_strong = std::max(max_gap_strong, r.relative_gap);
        }
        shrinking = shrinking && r.relative_gap < previous_gap;
        previous_gap = r.relative_gap;
    }
    json equivalence;
    equivalence["omega_pulsed"] = eq.omega_pulsed;
    equivalence["omega_continuous"] = eq.omega_pulsed / 2.0;
    equivalence["table"] = table;
    equivalence["max_relative_gap_gamma_ge_20_omega"] = max_gap_strong;
    equivalence["gap_shrinks_with_dt"] = shrinking;

    io::Document doc = make_document("validate", ctx);
    doc.metadata.add("fine_steps", config.fine_steps);
    doc.metadata.add("omega_grid", join(config.omegas));
    doc.metadata.add("gamma_grid", join(config.gammas));
    doc.metadata.add("t_grid", join(config.times));
    doc.metadata.add("omega_pulsed", eq.omega_pulsed);
    doc.metadata.add("dt_max", eq.dt_max);
    doc.metadata.add("dt_min", eq.dt_min);
    doc.metadata.add("dt_steps", eq.dt_steps);
    json report;
    report["oracle_grid"] = grid;
    report["amplitude_coefficient"] = coeff;
    report["equivalence"] = equivalence;
    doc.report = std::move(report);
    return doc;
}

}  // namespace zeno::experiments
