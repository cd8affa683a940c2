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
#include <optional>
#include <vector>

#include "hqcd/grid_model.h"
#include "hqcd/hybrid_loop.h"
#include "hqcd/solution.h"

namespace hqcd {

/// Equal-incremental-cost thermal dispatch meeting `demand` within unit boxes.
/// Throws InfeasibleError if demand lies outside [sum p_min, sum p_max].
std::vector<double> lambda_dispatch(const std::vector<Generator> &generators, double demand);

/// Deterministic economic dispatch: renewables first (curtailed only below
/// minimum thermal output), a price-threshold storage heuristic around the
/// horizon-median incremental cost, lambda-iteration for thermal units, then
/// feasibility projection. Optimal without storage and network.
/// `realization` replaces the grid's renewable series when given.
DispatchSolution solve_ced(
    const GridModel &grid, const std::optional<std::vector<RenewableSeries>> &realization = std::nullopt);

/// Scenario-averaged stochastic baseline (stands in for SDDP): CED on the mean
/// of n_scenarios sampled renewable realizations, scored by the mean cost of
/// the plan re-projected onto each scenario (`expected_cost`).
DispatchSolution solve_scenario_avg(const GridModel &grid, int n_scenarios, double error_frac, std::uint64_t seed);

/// Per-scenario renewable draws used by solve_scenario_avg.
std::vector<std::vector<RenewableSeries>> draw_scenarios(
    const GridModel &grid, int n_scenarios, double error_frac, std::uint64_t seed);

/// Cost of `plan` once its renewable output is set to the scenario's
/// availability and the result projected onto the scenario's operating set.
double scenario_cost(const GridModel &grid, const DispatchSolution &plan, const std::vector<RenewableSeries> &scenario);

/// Variational loop without noise-adaptive weights or penalty feedback, with a
/// single projection after the final iteration.
DispatchSolution run_plain_vqa(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NoiseSpec &noise);

}  // namespace hqcd
