// Copyright 2026 The HQCD Authors
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

#include "hqcd/cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hqcd/fixtures.h"
#include "hqcd/harness.h"
#include "hqcd/report_io.h"

namespace hqcd {

namespace {

// Raised for bad user input that CLI11 itself cannot catch.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string grid;
    std::string method = "hqcd";
    int bits = 3;
    int layers = 5;
    double beta = 2.0;
    double noise = 0.0;
    int shots = 1024;
    std::uint64_t seed = 1;
    std::string out = "out";
    std::string mode = "per_interval";
    bool exact = false;
    std::string levels = "0,0.05,0.10";
    int seeds = 1;
    int scenarios = 10;
    double error_frac = 0.15;
};

void add_solver_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--grid", o.grid, "Grid file (JSON)")->required();
    cmd->add_option("--bits", o.bits, "Qubits per encoded variable")->capture_default_str()->check(CLI::Range(1, 16));
    cmd->add_option("--layers", o.layers, "Ansatz layers")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--beta", o.beta, "Noise-adaptive weighting strength")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    cmd->add_option("--noise", o.noise, "Readout flip probability per bit")->capture_default_str()->check(
        CLI::Range(0.0, 0.5));
    cmd->add_option("--shots", o.shots, "Shots per expectation estimate")->capture_default_str()->check(
        CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--mode", o.mode, "Solve mode")
        ->capture_default_str()
        ->check(CLI::IsMember({"per_interval", "full_horizon"}));
    cmd->add_flag("--exact", o.exact, "Exact expectations instead of shot sampling");
    cmd->add_option("--scenarios", o.scenarios, "Scenarios for the scenario baseline")->capture_default_str()->check(
        CLI::PositiveNumber);
    cmd->add_option("--error-frac", o.error_frac, "Renewable forecast error fraction")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 0.999));
}

GridModel load_valid_grid(const std::string &path) {
    GridModel grid = load_grid(path);
    auto problems = validate_grid(grid);
    if (!problems.empty()) {
        std::string msg = "invalid grid '" + path + "':";
        for (const auto &p : problems) {
            msg += "\n  " + p;
        }
        throw UsageError(msg);
    }
    return grid;
}

ExperimentConfig make_config(const Options &o, int n_seeds) {
    ExperimentConfig cfg;
    cfg.grid_path = o.grid;
    cfg.optimizer.seed = o.seed;
    cfg.optimizer.n_layers = o.layers;
    cfg.optimizer.encoding.bits_per_variable = o.bits;
    cfg.optimizer.mode = o.mode == "full_horizon" ? SolveMode::full_horizon : SolveMode::per_interval;
    cfg.nacf.beta = o.beta;
    cfg.noise.readout_flip_prob = o.noise;
    cfg.noise.n_shots = o.shots;
    cfg.noise.exact = o.exact;
    cfg.n_scenarios = o.scenarios;
    cfg.error_frac = o.error_frac;
    cfg.seeds.clear();
    for (int i = 0; i < n_seeds; i++) {
        cfg.seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
    }
    try {
        cfg.optimizer.check();
        cfg.noise.check();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::vector<double> parse_levels(const std::string &csv) {
    std::vector<double> levels;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            if (!(v >= 0.0 && v <= 0.5)) {
                throw UsageError("--levels: " + item + " is outside [0, 0.5]");
            }
            levels.push_back(v);
        } catch (const std::logic_error &) {
            throw UsageError("--levels: cannot parse '" + item + "'");
        }
    }
    if (levels.empty()) {
        throw UsageError("--levels: at least one level is required");
    }
    return levels;
}

void print_summary(const RunReport &report) {
    for (const auto &m : report.methods) {
        std::printf("%-9s TDC %.6f  RUR %.3f%%  iterations %d\n", m.method.c_str(), m.metrics.tdc, m.metrics.rur,
            m.metrics.cs.iterations_to_convergence);
        for (const auto &[base, d] : m.metrics.delta_vs) {
            std::printf("          delta vs %s: %.3f%%\n", base.c_str(), d);
        }
    }
    for (const auto &r : report.sweep) {
        std::printf("%-9s level %.3f  median %.6f  IQR %.6f  degradation %.3f%%\n", r.method.c_str(), r.level,
            r.median, r.iqr, 100.0 * r.degradation);
    }
}

int execute(CLI::App &app, const std::string &sub, Options &o, const std::string &fixture_name) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    if (sub == "gen-fixture") {
        std::filesystem::path dir = o.out;
        GridModel grid;
        try {
            grid = gen_fixture(fixture_name);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        std::filesystem::create_directories(dir);
        auto path = dir / (fixture_name + ".grid");
        std::ofstream out(path, std::ios::binary);
        out << serialize_grid(grid);
        if (!out) {
            throw std::runtime_error("failed writing '" + path.string() + "'");
        }
        std::cerr << "wrote " << path.string() << "\n";
        return 0;
    }
    if (sub == "validate") {
        GridModel grid = load_grid(o.grid);
        auto problems = validate_grid(grid);
        for (const auto &p : problems) {
            std::cerr << p << "\n";
        }
        if (!problems.empty()) {
            return 1;
        }
        std::cout << "ok\n";
        return 0;
    }

    GridModel grid = load_valid_grid(o.grid);
    RunReport report;
    if (sub == "run") {
        Method method;
        try {
            method = parse_method(o.method);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        report = run_methods(grid, make_config(o, o.seeds), {method});
    } else if (sub == "compare") {
        report = compare_methods(grid, make_config(o, o.seeds));
    } else if (sub == "sweep") {
        if (o.seeds < 3) {
            throw UsageError("sweep needs --seeds >= 3");
        }
        auto levels = parse_levels(o.levels);
        ExperimentConfig cfg = make_config(o, o.seeds);
        auto sweep = noise_sweep(grid, {Method::hqcd, Method::plain}, levels, o.seeds, cfg);
        report.config = cfg;
        report.sweep_cells = std::move(sweep.cells);
        report.sweep = std::move(sweep.rows);
    } else {
        std::cerr << app.help();
        return 1;
    }
    write_report(report, o.out);
    print_summary(report);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::fprintf(stderr, "%s finished in %.2f s; results in %s\n", sub.c_str(), secs, o.out.c_str());
    return 0;
}

}  // namespace

int cli_run(int argc, const char *const *argv) {
    CLI::App app{"Hybrid quantum-classical economic dispatch", "hqcd"};
    app.require_subcommand(1);
    Options o;
    std::string fixture_name;

    auto *run = app.add_subcommand("run", "Solve one grid with one method and write a report");
    add_solver_flags(run, o);
    run->add_option("--method", o.method, "Method")
        ->capture_default_str()
        ->check(CLI::IsMember({"hqcd", "plain", "ced", "scenario"}));
    run->add_option("--seeds", o.seeds, "Number of consecutive seeds starting at --seed")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    auto *compare = app.add_subcommand("compare", "Run every method on the same grid and seeds");
    add_solver_flags(compare, o);
    compare->add_option("--seeds", o.seeds, "Number of consecutive seeds starting at --seed")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    auto *sweep = app.add_subcommand("sweep", "Readout-noise sweep of the variational methods");
    add_solver_flags(sweep, o);
    sweep->add_option("--levels", o.levels, "Comma-separated flip probabilities")->capture_default_str();
    sweep->add_option("--seeds", o.seeds, "Seeds per level (>= 3)")->default_str("10");

    auto *validate = app.add_subcommand("validate", "Check a grid file");
    validate->add_option("--grid", o.grid, "Grid file (JSON)")->required();

    auto *gen = app.add_subcommand("gen-fixture", "Write a bundled fixture grid");
    gen->add_option("name", fixture_name, "toy2, bus3 or micro24")->required();
    gen->add_option("--out", o.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "sweep" && sweep->count("--seeds") == 0) {
        o.seeds = 10;
    }

    try {
        return execute(app, sub, o, fixture_name);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GridError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const QubitBudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hqcd
