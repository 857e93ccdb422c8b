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

// zeno: reproduces the Zeno-effect figures and checks as data files.
//
// Exit codes: 0 success, 2 usage, 3 invalid-argument, 4 domain, 5 config,
// 6 io, 1 internal. Failures print one line to stderr:
//     error: <category>: <message>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"

namespace {

using namespace zeno;

struct Common {
    std::optional<std::uint64_t> seed;
    std::string output = "-";
    std::string format = "csv";
    std::size_t threads = default_threads();
    std::string config;
    std::string simd = "auto";

    static std::size_t default_threads() {
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--seed", c.seed, "Master seed (default: $ZENO_SEED or 1)");
    sub->add_option("--output", c.output, "Output path, '-' for stdout")->capture_default_str();
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--config", c.config, "Plain-text key=value config file; flags take precedence");
    sub->add_option("--simd", c.simd, "Kernel set")->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// key = value lines; '#' starts a comment. Keys are long flag names.
std::vector<std::pair<std::string, std::string>> read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.starts_with("--")) key.erase(0, 2);
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

bool given_on_command_line(const std::vector<std::string> &args, const std::string &flag) {
    for (const auto &a : args) {
        if (a == flag || a.starts_with(flag + "=")) return true;
    }
    return false;
}

// Splices config-file entries in front of the user's flags for every option
// the user did not set, so flags > config file > built-in defaults.
std::vector<std::string> apply_config(CLI::App &app, const std::vector<std::string> &args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        if (args[i].starts_with("--config=")) config_path = args[i].substr(9);
    }
    if (config_path.empty() || args.empty()) return args;
    CLI::App *sub = nullptr;
    for (CLI::App *candidate : app.get_subcommands({})) {
        if (candidate->get_name() == args[0]) sub = candidate;
    }
    if (sub == nullptr) return args;

    std::vector<std::string> merged{args[0]};
    for (const auto &[key, value] : read_config(config_path)) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) {
            throw UsageError("config key '" + key + "' is not an option of '" + args[0] + "'");
        }
        if (given_on_command_line(args, flag)) continue;
        merged.push_back(flag);
        std::istringstream values(value);
        for (std::string v; values >> v;) merged.push_back(v);
    }
    merged.insert(merged.end(), args.begin() + 1, args.end());
    return merged;
}

experiments::RunContext make_context(const Common &c) {
    experiments::RunContext ctx;
    if (c.seed) {
        ctx.seed = *c.seed;
        ctx.seed_source = "flag";
    } else if (const char *env = std::getenv("ZENO_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            ctx.seed = std::stoull(env, &used, 0);
            if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        } catch (const std::exception &) {
            throw std::invalid_argument(std::string("ZENO_SEED is not an unsigned 64-bit integer: ") + env);
        }
        ctx.seed_source = "env:ZENO_SEED";
    }
    ctx.threads = c.threads;
    if (c.simd != "auto") {
        ctx.isa = simd::parse_isa(c.simd);
        if (!simd::isa_available(*ctx.isa)) {
            throw std::invalid_argument("SIMD kernel set '" + c.simd + "' is not available on this machine");
        }
    }
    ctx.timestamp = io::current_timestamp_utc();
    return ctx;
}

int fail(const char *category, const std::string &message, int code) {
    std::string one_line = message;
    for (char &ch : one_line) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    std::cerr << "error: " << category << ": " << one_line << '\n';
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum Zeno effect simulations: pulsed probes and continuous tunneling measurement"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::tool_version()));

    Common common;
    experiments::Fig2Config fig2;
    experiments::Fig3Config fig3;
    experiments::Fig4Config fig4;
    experiments::PulsedSimConfig pulsed_sim;
    experiments::EquivalenceConfig equivalence;
    experiments::ValidateConfig validate;
    std::string stepping = "exact";

    auto *fig2_cmd = app.add_subcommand("fig2", "Survival after n probes in a half Rabi period, exact vs exponential");
    add_common(fig2_cmd, common);
    fig2_cmd->add_option("--n-max", fig2.n_max, "Largest probe count")->capture_default_str();

    auto *fig3_cmd = app.add_subcommand("fig3", "Survival vs time under periodic probing");
    add_common(fig3_cmd, common);
    fig3_cmd->add_option("--omega", fig3.omega, "Rabi angular frequency, rad/us")->capture_default_str();
    fig3_cmd->add_option("--dt", fig3.dt_list, "Probe intervals, us (default pi/(50 omega) pi/(100 omega))");
    fig3_cmd->add_option("--t-max", fig3.t_max, "Last sample time, us (default 2 pi/omega)");

    auto *fig4_cmd = app.add_subcommand("fig4", "Monte Carlo no-jump counts vs tunneling rate");
    add_common(fig4_cmd, common);
    fig4_cmd->add_option("--omega", fig4.omega, "Generator coupling, rad/us")->capture_default_str();
    fig4_cmd->add_option("--window", fig4.window, "Window T, us (default pi/(2 omega))");
    fig4_cmd->add_option("--gamma-min", fig4.gamma_min, "Smallest tunneling rate, 1/us")->capture_default_str();
    fig4_cmd->add_option("--gamma-max", fig4.gamma_max, "Largest tunneling rate, 1/us")->capture_default_str();
    fig4_cmd->add_option("--gamma-steps", fig4.gamma_steps, "Grid points")->capture_default_str();
    fig4_cmd->add_option("--runs", fig4.runs, "Trajectories per grid point")->capture_default_str();
    fig4_cmd->add_option("--stepping", stepping, "No-jump update")
        ->check(CLI::IsMember({"exact", "first-order"}))
        ->capture_default_str();
    fig4_cmd->add_option("--step", fig4.step, "Fixed time step, us (default min(0.01/gamma, 0.01/omega, T/100))");

    auto *pulsed_cmd = app.add_subcommand("pulsed-sim", "Stochastic selective-probe ensemble");
    add_common(pulsed_cmd, common);
    pulsed_cmd->add_option("--omega", pulsed_sim.omega, "Rabi angular frequency, rad/us")->capture_default_str();
    pulsed_cmd->add_option("--n-probes", pulsed_sim.n_probes, "Probes per window")->capture_default_str();
    pulsed_cmd->add_option("--runs", pulsed_sim.runs, "Runs")->capture_default_str();
    pulsed_cmd->add_option("--epsilon0", pulsed_sim.epsilon0, "Ground-state false-switch probability")
        ->capture_default_str();
    pulsed_cmd->add_option("--eta", pulsed_sim.eta, "Excited-state miss probability")->capture_default_str();
    pulsed_cmd->add_option("--window", pulsed_sim.window, "Window T, us (default pi/omega)");

    auto *eq_cmd = app.add_subcommand("equivalence", "Pulsed vs continuous decay rates under gamma = 4/dt");
    add_common(eq_cmd, common);
    eq_cmd->add_option("--omega-pulsed", equivalence.omega_pulsed, "Rabi angular frequency, rad/us")
        ->capture_default_str();
    eq_cmd->add_option("--dt-min", equivalence.dt_min, "Smallest probe interval, us")->capture_default_str();
    eq_cmd->add_option("--dt-max", equivalence.dt_max, "Largest probe interval, us")->capture_default_str();
    eq_cmd->add_option("--dt-steps", equivalence.dt_steps, "Geometric grid points")->capture_default_str();

    auto *validate_cmd = app.add_subcommand("validate", "Oracle cross-checks and amplitude coefficient report (JSON)");
    add_common(validate_cmd, common);
    validate_cmd->add_option("--fine-steps", validate.fine_steps, "RK4 steps for the fine-step oracle")
        ->capture_default_str();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what(), 2);
    } catch (const UsageError &e) {
        return fail("usage", e.what(), 2);
    } catch (const IoError &e) {
        return fail("io", e.what(), 6);
    }

    try {
        experiments::RunContext ctx = make_context(common);
        auto format = *io::parse_format(common.format);
        io::Document doc;
        if (*fig2_cmd) {
            doc = experiments::run_fig2(fig2, ctx);
        } else if (*fig3_cmd) {
            doc = experiments::run_fig3(fig3, ctx);
        } else if (*fig4_cmd) {
            fig4.stepping = stepping == "first-order" ? continuous::Stepping::first_order
                                                      : continuous::Stepping::exact_exponential;
            doc = experiments::run_fig4(fig4, ctx);
        } else if (*pulsed_cmd) {
            doc = experiments::run_pulsed_sim(pulsed_sim, ctx);
        } else if (*eq_cmd) {
            doc = experiments::run_equivalence(equivalence, ctx);
        } else if (*validate_cmd) {
            if (format == io::Format::csv && validate_cmd->count("--format") > 0) {
                return fail("usage", "validate writes a JSON report; --format csv is not supported", 2);
            }
            format = io::Format::json;
            doc = experiments::run_validate(validate, ctx);
        }
        io::write_document(doc, format, common.output);
    } catch (const IoError &e) {
        return fail("io", e.what(), 6);
    } catch (const ConfigError &e) {
        return fail("config", e.what(), 5);
    } catch (const std::domain_error &e) {
        return fail("domain", e.what(), 4);
    } catch (const std::invalid_argument &e) {
        return fail("invalid-argument", e.what(), 3);
    } catch (const std::exception &e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
