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

#include "hqcd/harness.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hqcd/baselines.h"

namespace hqcd {

const char *to_string(Method m) {
    switch (m) {
        case Method::hqcd:
            return "hqcd";
        case Method::plain:
            return "plain";
        case Method::ced:
            return "ced";
        case Method::scenario:
            return "scenario";
    }
    return "?";
}

Method parse_method(const std::string &name) {
    for (Method m : {Method::hqcd, Method::plain, Method::ced, Method::scenario}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown method '" + name + "' (expected hqcd, plain, ced or scenario)");
}

DispatchSolution run_method(Method method, const GridModel &grid, const ExperimentConfig &cfg, std::uint64_t seed) {
    OptimizerConfig opt = cfg.optimizer;
    opt.seed = seed;
    switch (method) {
        case Method::hqcd:
            return run_hqcd(grid, opt, cfg.penalties, cfg.nacf, cfg.noise);
        case Method::plain:
            return run_plain_vqa(grid, opt, cfg.penalties, cfg.noise);
        case Method::ced:
            return solve_ced(grid);
        case Method::scenario:
            return solve_scenario_avg(grid, cfg.n_scenarios, cfg.error_frac, seed);
    }
    throw std::logic_error("run_method: unhandled method");
}

namespace {

double median_of(std::vector<double> v) {
    return quantile(std::move(v), 0.5);
}

ConvergenceStability trace_stability(const ConvergenceTrace &trace, const OptimizerConfig &opt) {
    ConvergenceStability total;
    if (trace.entries.empty()) {
        total.iterations_to_convergence = 1;
        return total;
    }
    std::map<int, std::vector<double>> blocks;
    for (const auto &e : trace.entries) {
        blocks[e.block].push_back(e.j_noisy);
    }
    double osc = 0.0;
    for (const auto &[b, j] : blocks) {
        double tol = opt.tol_delta_j * std::max(std::abs(j.front()), 1e-300);
        ConvergenceStability cs = convergence_stability(j, tol, opt.patience);
        total.iterations_to_convergence += cs.iterations_to_convergence;
        osc += cs.oscillation_score;
    }
    total.oscillation_score = osc / static_cast<double>(blocks.size());
    return total;
}

}  // namespace

MetricsBundle compute_metrics(
    const std::vector<DispatchSolution> &runs, const GridModel &grid, const OptimizerConfig &optimizer) {
    if (runs.empty()) {
        throw std::invalid_argument("compute_metrics: no runs");
    }
    MetricsBundle m;
    std::vector<double> tdc;
    std::vector<double> rur;
    std::vector<double> expected;
    for (const auto &r : runs) {
        tdc.push_back(total_dispatch_cost(r, grid));
        rur.push_back(renewable_utilization_rate(r, grid));
        if (r.expected_cost) {
            expected.push_back(*r.expected_cost);
        }
    }
    m.tdc = median_of(tdc);
    m.rur = median_of(rur);
    if (!expected.empty()) {
        m.expected_cost = median_of(expected);
    }
    try {
        m.sv = solution_variance(runs);
    } catch (const std::invalid_argument &) {
        m.sv.reset();
    }
    m.cs = trace_stability(runs.front().trace, optimizer);
    return m;
}

RunReport run_methods(const GridModel &grid, const ExperimentConfig &cfg, const std::vector<Method> &methods) {
    if (cfg.seeds.empty()) {
        throw std::invalid_argument("run_methods: at least one seed is required");
    }
    RunReport report;
    report.config = cfg;
    for (Method method : methods) {
        MethodResult mr;
        mr.method = to_string(method);
        bool seeded = method != Method::ced;
        for (std::uint64_t seed : cfg.seeds) {
            mr.seeds.push_back(seed);
            mr.runs.push_back(run_method(method, grid, cfg, seed));
            if (!seeded) {
                break;
            }
        }
        mr.metrics = compute_metrics(mr.runs, grid, cfg.optimizer);
        report.methods.push_back(std::move(mr));
        if (method == Method::scenario) {
            report.notes.push_back(
                "scenario: scenario-averaged deterministic dispatch, used as a substitute for SDDP");
        }
    }
    auto hqcd = std::find_if(report.methods.begin(), report.methods.end(), [](const MethodResult &r) {
        return r.method == "hqcd";
    });
    if (hqcd != report.methods.end()) {
        for (const auto &other : report.methods) {
            if (other.method != "hqcd" && other.metrics.tdc > 0.0) {
                hqcd->metrics.delta_vs[other.method] = improvement_delta(other.metrics.tdc, hqcd->metrics.tdc);
            }
        }
    }
    return report;
}

RunReport compare_methods(const GridModel &grid, const ExperimentConfig &cfg) {
    return run_methods(grid, cfg, {Method::hqcd, Method::plain, Method::ced, Method::scenario});
}

SweepResult noise_sweep(
    const GridModel &grid, const std::vector<Method> &methods, const std::vector<double> &levels, int n_seeds,
    const ExperimentConfig &cfg) {
    if (n_seeds < 3) {
        throw std::invalid_argument("noise_sweep: n_seeds must be >= 3");
    }
    for (double level : levels) {
        if (!(level >= 0.0 && level <= 0.5)) {
            throw std::invalid_argument("noise_sweep: levels must lie in [0, 0.5]");
        }
    }
    SweepResult out;
    for (Method method : methods) {
        std::vector<SweepRow> rows;
        for (double level : levels) {
            ExperimentConfig c = cfg;
            c.noise.readout_flip_prob = level;
            c.noise.exact = level == 0.0;
            std::vector<double> costs;
            for (int i = 0; i < n_seeds; i++) {
                std::uint64_t seed = cfg.optimizer.seed + static_cast<std::uint64_t>(i);
                DispatchSolution sol = run_method(method, grid, c, seed);
                out.cells.push_back({to_string(method), level, seed, sol.total_cost});
                costs.push_back(sol.total_cost);
            }
            SweepRow row;
            row.method = to_string(method);
            row.level = level;
            row.median = median_of(costs);
            row.iqr = quantile(costs, 0.75) - quantile(costs, 0.25);
            rows.push_back(row);
        }
        if (!rows.empty()) {
            auto ref = std::min_element(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
                return a.level < b.level;
            });
            const double base = ref->median;
            for (auto &row : rows) {
                row.degradation = row.level == ref->level ? 0.0 : (row.median - base) / base;
            }
        }
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }
    return out;
}

}  // namespace hqcd
