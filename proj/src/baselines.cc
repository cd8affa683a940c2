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

#include "hqcd/baselines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hqcd/projection.h"
#include "hqcd/rng.h"

namespace hqcd {

namespace {

constexpr double kMinCurvature = 1e-12;

double unit_output(const Generator &g, double lambda) {
    double a = std::max(g.cost_a, kMinCurvature);
    return std::clamp((lambda - g.cost_b) / (2.0 * a), g.p_min, g.p_max);
}

double output_at(const std::vector<Generator> &gens, double lambda) {
    double total = 0.0;
    for (const auto &g : gens) {
        total += unit_output(g, lambda);
    }
    return total;
}

double incremental_cost(const std::vector<Generator> &gens, double demand) {
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto &g : gens) {
        double a = g.marginal_cost(g.p_min);
        double b = g.marginal_cost(g.p_max);
        lo = first ? a : std::min(lo, a);
        hi = first ? b : std::max(hi, b);
        first = false;
    }
    lo -= 1.0;
    hi += 1.0;
    for (int i = 0; i < 200; i++) {
        double mid = 0.5 * (lo + hi);
        if (output_at(gens, mid) < demand) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<double> lambda_dispatch(const std::vector<Generator> &generators, double demand) {
    double sum_min = 0.0;
    double sum_max = 0.0;
    for (const auto &g : generators) {
        sum_min += g.p_min;
        sum_max += g.p_max;
    }
    if (demand < sum_min - 1e-9 || demand > sum_max + 1e-9) {
        throw InfeasibleError(
            "thermal demand " + std::to_string(demand) + " MW outside [" + std::to_string(sum_min) + ", " +
                std::to_string(sum_max) + "]",
            {demand < sum_min ? "balance:minimum_output" : "balance:capacity"});
    }
    double lambda = incremental_cost(generators, demand);
    std::vector<double> out;
    for (const auto &g : generators) {
        out.push_back(unit_output(g, lambda));
    }
    // Close the residual exactly on the units that are strictly inside their box.
    double fixed = 0.0;
    double inv_curv = 0.0;
    double offset = 0.0;
    for (size_t i = 0; i < generators.size(); i++) {
        const auto &g = generators[i];
        if (out[i] > g.p_min && out[i] < g.p_max) {
            double a = std::max(g.cost_a, kMinCurvature);
            inv_curv += 1.0 / (2.0 * a);
            offset += g.cost_b / (2.0 * a);
        } else {
            fixed += out[i];
        }
    }
    if (inv_curv > 0.0) {
        double exact = (demand - fixed + offset) / inv_curv;
        for (size_t i = 0; i < generators.size(); i++) {
            const auto &g = generators[i];
            if (out[i] > g.p_min && out[i] < g.p_max) {
                out[i] = std::clamp(unit_output(g, exact), g.p_min, g.p_max);
            }
        }
    }
    return out;
}

DispatchSolution solve_ced(const GridModel &grid_in, const std::optional<std::vector<RenewableSeries>> &realization) {
    GridModel grid = grid_in;
    if (realization) {
        grid.renewables = *realization;
    }
    auto violations = validate_grid(grid);
    if (!violations.empty()) {
        throw std::invalid_argument("grid is invalid: " + violations.front());
    }
    const int horizon = grid.horizon;
    const double dt = grid.interval_hours;
    double sum_min = 0.0;
    double sum_max = 0.0;
    for (const auto &g : grid.generators) {
        sum_min += g.p_min;
        sum_max += g.p_max;
    }

    DispatchVector x = DispatchVector::zeros(grid, 0, horizon);
    std::vector<double> thermal(horizon);
    std::vector<double> lambdas(horizon);
    for (int t = 0; t < horizon; t++) {
        const double avail = grid.renewable_available(t);
        if (grid.load[t] < sum_min - 1e-9) {
            throw InfeasibleError(
                "load " + std::to_string(grid.load[t]) + " MW in interval " + std::to_string(t) +
                    " is below total minimum thermal output",
                {"balance:minimum_output"});
        }
        double used = std::clamp(grid.load[t] - sum_min, 0.0, avail);
        for (size_t r = 0; r < grid.renewables.size(); r++) {
            x.renewable[t][r] = avail > 0.0 ? used * grid.renewables[r].available[t] / avail : 0.0;
        }
        thermal[t] = grid.load[t] - used;
        lambdas[t] = incremental_cost(grid.generators, std::min(thermal[t], sum_max));
    }

    if (!grid.storage.empty()) {
        const double threshold = median(lambdas);
        const double target = output_at(grid.generators, threshold);
        IntervalState state = IntervalState::initial(grid);
        for (int t = 0; t < horizon; t++) {
            double want = 0.0;  // net discharge
            if (lambdas[t] < threshold) {
                want = -(target - thermal[t]);
            } else if (lambdas[t] > threshold) {
                want = thermal[t] - target;
            }
            // Keep thermal demand within unit limits after storage.
            want = std::clamp(want, thermal[t] - sum_max, thermal[t] - sum_min);
            for (size_t s = 0; s < grid.storage.size() && want != 0.0; s++) {
                const auto &u = grid.storage[s];
                const double e = state.soc_mwh[s];
                double lo = std::max(-u.p_charge_max, -(u.energy_max() - e) / (u.eta_charge * dt));
                double hi = std::min(u.p_discharge_max, (e - u.energy_min()) * u.eta_discharge / dt);
                double p = std::clamp(want, std::min(lo, 0.0), std::max(hi, 0.0));
                x.storage[t][s] = p;
                want -= p;
                thermal[t] -= p;
            }
            state = advance_state(grid, x, t, state);
        }
    }

    for (int t = 0; t < horizon; t++) {
        x.generation[t] = lambda_dispatch(grid.generators, std::clamp(thermal[t], sum_min, sum_max));
    }

    ProjectionResult proj = project_feasible(x, grid);
    DispatchSolution sol;
    sol.method = "ced";
    sol.dispatch = std::move(proj.x);
    sol.total_cost = classical_cost(sol.dispatch, grid, PenaltyConfig{0.0, 0.0, 0.0});
    sol.report = feasibility_report(sol.dispatch, grid);
    sol.iterations = 1;
    return sol;
}

std::vector<std::vector<RenewableSeries>> draw_scenarios(
    const GridModel &grid, int n_scenarios, double error_frac, std::uint64_t seed) {
    if (n_scenarios < 1) {
        throw std::invalid_argument("n_scenarios must be >= 1");
    }
    std::vector<std::vector<RenewableSeries>> out;
    for (int k = 0; k < n_scenarios; k++) {
        std::vector<RenewableSeries> scenario;
        for (size_t r = 0; r < grid.renewables.size(); r++) {
            scenario.push_back(scenario_sample(grid.renewables[r], error_frac, derive_seed(seed, k, r)));
        }
        out.push_back(std::move(scenario));
    }
    return out;
}

double scenario_cost(const GridModel &grid, const DispatchSolution &plan, const std::vector<RenewableSeries> &scenario) {
    GridModel g = grid;
    g.renewables = scenario;
    DispatchVector x = plan.dispatch;
    for (int t = 0; t < x.n_intervals(); t++) {
        for (size_t r = 0; r < scenario.size(); r++) {
            x.renewable[t][r] = scenario[r].available[x.first_interval + t];
        }
    }
    ProjectionResult proj = project_feasible(x, g);
    return classical_cost(proj.x, g, PenaltyConfig{0.0, 0.0, 0.0});
}

DispatchSolution solve_scenario_avg(const GridModel &grid, int n_scenarios, double error_frac, std::uint64_t seed) {
    auto scenarios = draw_scenarios(grid, n_scenarios, error_frac, seed);

    std::vector<RenewableSeries> mean = grid.renewables;
    for (size_t k = 0; k < scenarios.size(); k++) {
        for (size_t r = 0; r < mean.size(); r++) {
            for (size_t t = 0; t < mean[r].available.size(); t++) {
                double v = scenarios[k][r].available[t];
                double &m = mean[r].available[t];
                m = k == 0 ? v : m + (v - m) / static_cast<double>(k + 1);
            }
        }
    }

    DispatchSolution plan = solve_ced(grid, mean);
    double expected = 0.0;
    for (size_t k = 0; k < scenarios.size(); k++) {
        expected += scenario_cost(grid, plan, scenarios[k]);
    }
    // The plan was built for the mean draw; what gets committed must hold
    // against the forecast itself.
    ProjectionResult proj = project_feasible(plan.dispatch, grid);
    plan.method = "scenario";
    plan.dispatch = std::move(proj.x);
    plan.total_cost = classical_cost(plan.dispatch, grid, PenaltyConfig{0.0, 0.0, 0.0});
    plan.report = feasibility_report(plan.dispatch, grid);
    plan.expected_cost = expected / static_cast<double>(scenarios.size());
    return plan;
}

DispatchSolution run_plain_vqa(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NoiseSpec &noise) {
    NacfConfig off;
    off.enabled = false;
    off.beta = 0.0;
    LoopFeatures features{false, false, false};
    return run_variational(grid, cfg, pen, off, noise, features, "plain");
}

}  // namespace hqcd
