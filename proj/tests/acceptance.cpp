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

// Acceptance criteria, one line each:
//     [PASS] 3 fig4 full scale ... (1.23 s)
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "oracles.hpp"
#include "zeno/analysis.hpp"
#include "zeno/experiments.hpp"
#include "zeno/pulsed.hpp"

using zeno::kPi;
namespace ex = zeno::experiments;
namespace io = zeno::io;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " FAILED: " << what << ';';
        }
    }
};

double number(const io::Cell &c) {
    if (const double *d = std::get_if<double>(&c)) return *d;
    if (const std::int64_t *i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    return std::nan("");
}

ex::RunContext context(std::size_t threads) {
    ex::RunContext ctx;
    ctx.threads = threads;
    ctx.timestamp = io::current_timestamp_utc();
    return ctx;
}

void criterion_fig2(Verdict &v) {
    const auto doc = ex::run_fig2({100}, context(1));
    v.require(doc.table.rows.size() == 100, "100 rows");
    v.require(number(doc.table.rows[0][1]) == 0.0, "exact(1) == 0");
    double worst = 0.0, last = -1.0;
    bool monotone = true;
    for (const auto &row : doc.table.rows) {
        const double n = number(row[0]), exact = number(row[1]), approx = number(row[2]);
        monotone = monotone && exact > last;
        last = exact;
        // Independent evaluation of both closed forms.
        const double c = std::cos(kPi / (2 * n));
        v.require(std::abs(exact - std::pow(c * c, n)) < 1e-12, "exact column matches [cos^2(pi/2n)]^n");
        v.require(std::abs(approx - std::exp(-kPi * kPi / (4 * n))) < 1e-14, "approx column matches exp(-pi^2/4n)");
        if (n >= 10) worst = std::max(worst, std::abs(exact - approx));
    }
    v.require(monotone, "exact increases with n");
    v.require(worst < 0.002, "gap below 0.002 for n >= 10");
    v.detail << " max gap n>=10 = " << worst << ';';
}

void criterion_fig3(Verdict &v) {
    const double omega = 2 * kPi;
    const auto doc = ex::run_fig3({}, context(1));
    // Columns: t, rabi, (stepwise, approx) for dt = pi/50omega then pi/100omega.
    const double dts[2] = {kPi / (50 * omega), kPi / (100 * omega)};
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto &row : doc.table.rows) {
        const double t = number(row[0]);
        if (t > kPi / omega * (1 + 1e-12)) break;
        for (std::size_t i = 0; i < 2; i++) {
            const io::Cell &stepwise = row[2 + 2 * i];
            if (std::holds_alternative<std::monostate>(stepwise)) continue;
            const double exact = number(stepwise), approx = number(row[3 + 2 * i]);
            const double k = std::round(t / dts[i]);
            v.require(std::abs(exact - std::pow(std::cos(omega * dts[i] / 2), 2 * k)) < 1e-13,
                      "stepwise column matches cos^(2k)(omega dt / 2)");
            worst = std::max(worst, std::abs(exact - approx) / exact);
            checked++;
        }
    }
    v.require(checked == 51 + 101, "every probe boundary up to pi/omega present");
    v.require(worst < 0.01, "stepwise vs exponential within 1%");
    const double tc = zeno::pulsed::effective_decay_time(omega, dts[0]);
    v.require(std::abs(tc - 200 / (kPi * omega)) <= 1e-14 * tc, "t_c = 200/(pi omega)");
    v.detail << " boundaries = " << checked << ", max rel gap = " << worst << ", t_c = " << tc << ';';
}

void criterion_fig4(Verdict &v) {
    const double omega = 2 * kPi, window = kPi / (2 * omega);
    ex::Fig4Config cfg;
    const auto doc = ex::run_fig4(cfg, context(1));
    v.require(doc.table.rows.size() == 10, "10 grid points");
    double last = -1.0, worst_sigma = 0.0;
    for (const auto &row : doc.table.rows) {
        const double gamma = number(row[0]), count = number(row[1]);
        const double p = oracle::survival_probability(omega, gamma, window);
        v.require(std::abs(number(row[5]) - 1000 * p) < 1e-7, "oracle_count matches test-side oracle");
        const double sigma = std::sqrt(1000 * p * (1 - p));
        worst_sigma = std::max(worst_sigma, std::abs(count - 1000 * p) / sigma);
        v.require(count > last, "counts increase with gamma");
        last = count;
    }
    const double p50 = oracle::survival_probability(omega, 50.0, window);
    const double p500 = oracle::survival_probability(omega, 500.0, window);
    v.require(std::abs(p50 - 0.50) < 0.01, "|A0(T)|^2 near 0.50 at gamma = 50");
    v.require(std::abs(p500 - 0.92) < 0.01, "|A0(T)|^2 near 0.92 at gamma = 500");
    v.require(worst_sigma <= 3.0, "every count within 3 sigma");
    v.require(last >= 900, "counts approach 1000 at large gamma");
    v.detail << " worst |z| = " << worst_sigma << ", count(500) = " << last << ';';
}

void criterion_oracles(Verdict &v) {
    const auto doc = ex::run_validate({}, context(1));
    const auto &r = *doc.report;
    const auto &grid = r["oracle_grid"];
    const double d1 = grid["max_dev_propagator_vs_mat_exp"].get<double>();
    const double d2 = grid["max_dev_propagator_vs_fine_step"].get<double>();
    v.require(d1 < 1e-8 && d2 < 1e-8, "closed form within 1e-8 of both oracles");
    v.require(grid["pass"].get<bool>(), "report marks the grid as passing");
    const auto &coeff = r["amplitude_coefficient"];
    v.require(coeff["selected"] == "gamma/(4h)", "derived coefficient selected");
    v.require(coeff["candidates"][0]["max_dev_vs_mat_exp"].get<double>() < 1e-10, "selected variant within 1e-10");
    v.require(coeff["rejected"].size() == 1 && coeff["rejected"][0] == "gamma/(2h)", "printed variant flagged");

    // Test-side long-double oracle on the same grid.
    double d3 = 0.0;
    for (double omega : {kPi, 2 * kPi, 4 * kPi}) {
        for (double gamma : {0.0, 10.0, 50.0, 200.0, 500.0}) {
            for (double t : {0.0, 0.05, 0.25}) {
                d3 = std::max(d3, std::abs(oracle::survival_probability(omega, gamma, t) -
                                           std::norm(zeno::continuous::survival_amplitude(omega, gamma, t).value)));
            }
        }
    }
    v.require(d3 < 1e-10, "shipped amplitude matches the long-double oracle");
    v.detail << " dev mat_exp = " << d1 << ", dev fine-step = " << d2 << ", dev oracle = " << d3 << ';';
}

void criterion_rate_equivalence(Verdict &v) {
    const double omega_pulsed = 4 * kPi;
    const auto dts = ex::geometric_grid(0.0002, 0.02, 9);
    double last = INFINITY, worst = 0.0;
    for (auto it = dts.rbegin(); it != dts.rend(); ++it) {
        const auto r = zeno::analysis::equivalence_check(omega_pulsed, *it);
        v.require(r.gamma_matched >= 20 * r.omega_continuous, "grid satisfies gamma >= 20 omega_c");
        // Independent evaluation of both rates.
        const double q = r.gamma_matched / 4, oc = omega_pulsed / 2;
        const double rate_c = 2 * (q - std::sqrt(q * q - oc * oc));
        v.require(std::abs(rate_c - r.rate_continuous) < 1e-9 * rate_c, "continuous rate matches 2(gamma/4 - h)");
        v.require(std::abs(omega_pulsed * omega_pulsed * *it / 4 - r.rate_pulsed) < 1e-12, "pulsed rate");
        v.require(r.relative_gap < last, "gap shrinks as dt decreases");
        last = r.relative_gap;
        worst = std::max(worst, r.relative_gap);
    }
    v.require(worst < 0.05, "gap below 5%");
    v.detail << " max gap = " << worst << ", gap at dt_min = " << last << ';';
}

void criterion_statistics(Verdict &v) {
    ex::PulsedSimConfig cfg;
    cfg.runs = 100000;
    cfg.n_probes = 10;
    const auto doc = ex::run_pulsed_sim(cfg, context(4));
    const double survived = number(doc.table.rows[0][2]);
    const double p = zeno::pulsed::survival_exact(10);
    const double z = std::abs(survived - 1e5 * p) / std::sqrt(1e5 * p * (1 - p));
    v.require(z <= 3.0, "pulsed ensemble within 3 sigma of survival_exact(10)");

    std::string reference;
    for (std::size_t threads : {1, 2, 8}) {
        const std::string text = io::strip_timestamp(io::render(ex::run_fig4({}, context(threads)), io::Format::csv));
        if (reference.empty()) {
            reference = text;
        } else {
            v.require(text == reference, "fig4 byte-identical at " + std::to_string(threads) + " threads");
        }
    }
    v.detail << " pulsed |z| = " << z << ';';
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<void(Verdict &)> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria{
        {"1 fig2 survival vs probe count", criterion_fig2, 1.0},
        {"2 fig3 survival vs time", criterion_fig3, 1.0},
        {"3 fig4 full scale", criterion_fig4, 60.0},
        {"4 oracle equivalence and amplitude coefficient", criterion_oracles, 0.0},
        {"5 pulsed/continuous rate equivalence", criterion_rate_equivalence, 0.0},
        {"6 statistics and determinism", criterion_statistics, 0.0},
    };
    int failed = 0;
    for (const Criterion &c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception &e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0) {
            std::ostringstream budget;
            budget << "runtime below " << c.budget_seconds << " s";
            v.require(seconds < c.budget_seconds, budget.str());
        }
        std::printf("[%s] %s:%s (%.3f s)\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.str().c_str(), seconds);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
