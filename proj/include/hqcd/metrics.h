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

#include <optional>
#include <span>
#include <vector>

#include "hqcd/grid_model.h"
#include "hqcd/solution.h"

namespace hqcd {

/// Sum over intervals and generators of the quadratic cost times interval_hours.
double total_dispatch_cost(const DispatchSolution &sol, const GridModel &grid);

/// 100 * used / available over the solution's intervals; 100 when nothing was
/// available.
double renewable_utilization_rate(const DispatchSolution &sol, const GridModel &grid);

struct SolutionVariance {
    // Variance of each generator's output across runs, averaged over
    // (generator, interval). Needs >= 2 runs.
    std::optional<double> across_runs;
    // Variance of each generator's output over intervals within a run,
    // averaged over generators and runs. Needs >= 2 intervals.
    std::optional<double> within_run;
    double headline = 0.0;

    bool operator==(const SolutionVariance &) const = default;
};

/// Unbiased variances. Throws std::invalid_argument when neither component is
/// defined.
SolutionVariance solution_variance(std::span<const DispatchSolution> runs);

struct ConvergenceStability {
    int iterations_to_convergence = 0;
    double oscillation_score = 0.0;

    bool operator==(const ConvergenceStability &) const = default;
};

/// iterations_to_convergence is the first 1-based iteration at which
/// `patience` consecutive |dJ| < tol have been seen (trace length if never);
/// oscillation_score is the fraction of consecutive dJ pairs of opposite sign.
ConvergenceStability convergence_stability(std::span<const double> objective, double tol, int patience = 10);

/// (j_base - j_hqcd) / j_base * 100. Throws std::invalid_argument if j_base <= 0.
double improvement_delta(double j_base, double j_hqcd);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace hqcd
