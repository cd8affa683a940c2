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

#include "hqcd/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hqcd {

double total_dispatch_cost(const DispatchSolution &sol, const GridModel &grid) {
    double total = 0.0;
    const auto &x = sol.dispatch;
    for (int t = 0; t < x.n_intervals(); t++) {
        for (size_t i = 0; i < grid.generators.size(); i++) {
            total += grid.generators[i].hourly_cost(x.generation[t][i]) * grid.interval_hours;
        }
    }
    return total;
}

double renewable_utilization_rate(const DispatchSolution &sol, const GridModel &grid) {
    double used = 0.0;
    double available = 0.0;
    const auto &x = sol.dispatch;
    for (int t = 0; t < x.n_intervals(); t++) {
        for (size_t r = 0; r < grid.renewables.size(); r++) {
            used += x.renewable[t][r];
            available += grid.renewables[r].available[x.first_interval + t];
        }
    }
    if (!(available > 0.0)) {
        return 100.0;
    }
    return 100.0 * used / available;
}

namespace {

double unbiased_variance(std::span<const double> v) {
    if (v.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double e : v) {
        mean += e;
    }
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double e : v) {
        ss += (e - mean) * (e - mean);
    }
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

SolutionVariance solution_variance(std::span<const DispatchSolution> runs) {
    if (runs.empty()) {
        throw std::invalid_argument("solution_variance: no runs");
    }
    const auto &shape = runs.front().dispatch;
    const int n_int = shape.n_intervals();
    const size_t n_gen = n_int > 0 ? shape.generation.front().size() : 0;
    for (const auto &r : runs) {
        if (r.dispatch.n_intervals() != n_int || (n_int > 0 && r.dispatch.generation.front().size() != n_gen)) {
            throw std::invalid_argument("solution_variance: runs have different shapes");
        }
    }

    SolutionVariance out;
    if (runs.size() >= 2 && n_gen > 0 && n_int > 0) {
        double acc = 0.0;
        std::vector<double> sample(runs.size());
        for (int t = 0; t < n_int; t++) {
            for (size_t g = 0; g < n_gen; g++) {
                for (size_t k = 0; k < runs.size(); k++) {
                    sample[k] = runs[k].dispatch.generation[t][g];
                }
                acc += unbiased_variance(sample);
            }
        }
        out.across_runs = acc / static_cast<double>(n_int * n_gen);
    }
    if (n_int >= 2 && n_gen > 0) {
        double acc = 0.0;
        std::vector<double> series(n_int);
        for (const auto &r : runs) {
            for (size_t g = 0; g < n_gen; g++) {
                for (int t = 0; t < n_int; t++) {
                    series[t] = r.dispatch.generation[t][g];
                }
                acc += unbiased_variance(series);
            }
        }
        out.within_run = acc / static_cast<double>(runs.size() * n_gen);
    }
    if (out.across_runs) {
        out.headline = *out.across_runs;
    } else if (out.within_run) {
        out.headline = *out.within_run;
    } else {
        throw std::invalid_argument("solution_variance: needs >= 2 runs or >= 2 intervals");
    }
    return out;
}

ConvergenceStability convergence_stability(std::span<const double> objective, double tol, int patience) {
    if (objective.empty()) {
        throw std::invalid_argument("convergence_stability: empty trace");
    }
    ConvergenceStability cs;
    cs.iterations_to_convergence = static_cast<int>(objective.size());
    int streak = 0;
    for (size_t i = 1; i < objective.size(); i++) {
        streak = std::abs(objective[i - 1] - objective[i]) < tol ? streak + 1 : 0;
        if (streak >= patience) {
            cs.iterations_to_convergence = static_cast<int>(i + 1);
            break;
        }
    }
    if (objective.size() >= 3) {
        int flips = 0;
        for (size_t i = 2; i < objective.size(); i++) {
            double d1 = objective[i - 2] - objective[i - 1];
            double d2 = objective[i - 1] - objective[i];
            if (d1 * d2 < 0.0) {
                flips++;
            }
        }
        cs.oscillation_score = static_cast<double>(flips) / static_cast<double>(objective.size() - 2);
    }
    return cs;
}

double improvement_delta(double j_base, double j_hqcd) {
    if (!(j_base > 0.0)) {
        throw std::invalid_argument("improvement_delta: j_base must be positive");
    }
    return (j_base - j_hqcd) / j_base * 100.0;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile: empty sample");
    }
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace hqcd
