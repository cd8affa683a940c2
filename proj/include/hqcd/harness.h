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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqcd/grid_model.h"
#include "hqcd/hybrid_loop.h"
#include "hqcd/metrics.h"
#include "hqcd/solution.h"

namespace hqcd {

enum class Method { hqcd, plain, ced, scenario };

const char *to_string(Method m);
/// Throws std::invalid_argument for an unknown name.
Method parse_method(const std::string &name);

struct ExperimentConfig {
    std::string grid_path;
    OptimizerConfig optimizer;
    PenaltyConfig penalties;
    NacfConfig nacf;
    NoiseSpec noise;
    std::vector<std::uint64_t> seeds{1};
    int n_scenarios = 10;
    double error_frac = 0.15;

    bool operator==(const ExperimentConfig &) const = default;
};

/// One solve of `method` with the optimizer seed (or scenario seed) set to `seed`.
DispatchSolution run_method(Method method, const GridModel &grid, const ExperimentConfig &cfg, std::uint64_t seed);

struct MetricsBundle {
    double tdc = 0.0;  // median over runs
    double rur = 0.0;  // median over runs
    std::optional<SolutionVariance> sv;
    ConvergenceStability cs;
    // improvement of HQCD over each baseline, percent (HQCD entry only)
    std::map<std::string, double> delta_vs;
    std::optional<double> expected_cost;  // scenario baseline only

    bool operator==(const MetricsBundle &) const = default;
};

struct MethodResult {
    std::string method;
    std::vector<std::uint64_t> seeds;
    std::vector<DispatchSolution> runs;
    MetricsBundle metrics;

    bool operator==(const MethodResult &) const = default;
};

struct SweepCell {
    std::string method;
    double level = 0.0;
    std::uint64_t seed = 0;
    double final_cost = 0.0;

    bool operator==(const SweepCell &) const = default;
};

struct SweepRow {
    std::string method;
    double level = 0.0;
    double median = 0.0;
    double iqr = 0.0;
    // (median - reference median) / reference median, reference being the
    // method's lowest listed level (level 0 when present).
    double degradation = 0.0;

    bool operator==(const SweepRow &) const = default;
};

struct RunReport {
    ExperimentConfig config;
    std::vector<MethodResult> methods;
    std::vector<SweepCell> sweep_cells;
    std::vector<SweepRow> sweep;
    std::vector<std::string> notes;

    bool operator==(const RunReport &) const = default;
};

/// Metrics over the runs of one method. Convergence stability is evaluated
/// per solve block with the optimizer's stopping rule, summing iterations and
/// averaging oscillation scores.
MetricsBundle compute_metrics(
    const std::vector<DispatchSolution> &runs, const GridModel &grid, const OptimizerConfig &optimizer);

/// Runs the listed methods for every seed and fills metrics; HQCD (when
/// present) gets improvement deltas against every other method.
RunReport run_methods(const GridModel &grid, const ExperimentConfig &cfg, const std::vector<Method> &methods);

/// HQCD, plain VQA, CED and the scenario baseline on the same grid and seeds.
RunReport compare_methods(const GridModel &grid, const ExperimentConfig &cfg);

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepRow> rows;
};

/// For each (method, level, seed): final zero-penalty cost. Level 0 runs the
/// exact simulator; other levels sample cfg.noise.n_shots shots with that
/// readout flip probability. Seeds are cfg.optimizer.seed + i, i < n_seeds.
SweepResult noise_sweep(
    const GridModel &grid, const std::vector<Method> &methods, const std::vector<double> &levels, int n_seeds,
    const ExperimentConfig &cfg);

}  // namespace hqcd
