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

#include "hqcd/projection.h"

#include <algorithm>
#include <cmath>

namespace hqcd {

namespace {

constexpr double kSlabTolerance = 1e-10;
constexpr int kMaxDykstraIterations = 200000;

IntervalState start_state(const GridModel &grid, const std::optional<IntervalState> &prev) {
    if (prev) {
        return *prev;
    }
    return IntervalState::initial(grid);
}

double outside(double v, double lo, double hi) {
    if (v < lo) {
        return lo - v;
    }
    if (v > hi) {
        return v - hi;
    }
    return 0.0;
}

/// Exact projection onto {y : lo <= y <= hi, sum(y) = target}. The optimum is
/// y = clip(z + lambda), with lambda found on the piecewise-linear sum curve.
std::vector<double> project_box_sum(
    const std::vector<double> &z, const std::vector<double> &lo, const std::vector<double> &hi, double target) {
    const size_t n = z.size();
    auto sum_at = [&](double lambda) {
        double s = 0.0;
        for (size_t i = 0; i < n; i++) {
            s += std::clamp(z[i] + lambda, lo[i], hi[i]);
        }
        return s;
    };
    std::vector<double> bps;
    bps.reserve(2 * n);
    for (size_t i = 0; i < n; i++) {
        bps.push_back(lo[i] - z[i]);
        bps.push_back(hi[i] - z[i]);
    }
    std::sort(bps.begin(), bps.end());

    double lambda = bps.back();
    double prev_bp = bps.front();
    double prev_sum = sum_at(prev_bp);
    if (target <= prev_sum) {
        lambda = prev_bp;
    } else {
        for (size_t k = 1; k < bps.size(); k++) {
            double s = sum_at(bps[k]);
            if (s >= target) {
                double width = bps[k] - prev_bp;
                double rise = s - prev_sum;
                lambda = (width > 0.0 && rise > 0.0) ? prev_bp + (target - prev_sum) * width / rise : bps[k];
                break;
            }
            prev_bp = bps[k];
            prev_sum = s;
        }
    }
    std::vector<double> y(n);
    for (size_t i = 0; i < n; i++) {
        y[i] = std::clamp(z[i] + lambda, lo[i], hi[i]);
    }
    return y;
}

struct Slab {
    std::vector<double> a;
    double offset = 0.0;  // flow = a . y + offset
    double limit = 0.0;
    double norm2 = 0.0;
    size_t line = 0;

    double violation(const std::vector<double> &y) const {
        double f = offset;
        for (size_t i = 0; i < y.size(); i++) {
            f += a[i] * y[i];
        }
        return std::max(0.0, std::abs(f) - limit);
    }

    void project(std::vector<double> &y) const {
        double f = offset;
        for (size_t i = 0; i < y.size(); i++) {
            f += a[i] * y[i];
        }
        double excess = 0.0;
        if (f > limit) {
            excess = f - limit;
        } else if (f < -limit) {
            excess = f + limit;
        }
        if (excess != 0.0 && norm2 > 0.0) {
            for (size_t i = 0; i < y.size(); i++) {
                y[i] -= excess * a[i] / norm2;
            }
        }
    }
};

/// Projects one interval. Variables are laid out [generators, storage, renewables].
std::vector<double> project_interval(
    const GridModel &grid, int t, const std::vector<double> &z, const IntervalState &state) {
    const size_t ng = grid.generators.size();
    const size_t ns = grid.storage.size();
    const size_t nr = grid.renewables.size();
    const size_t n = ng + ns + nr;
    const double dt = grid.interval_hours;
    std::vector<double> lo(n), hi(n);
    std::vector<std::string> binding;

    for (size_t i = 0; i < ng; i++) {
        const auto &g = grid.generators[i];
        lo[i] = g.p_min;
        hi[i] = g.p_max;
        if (!state.generation.empty()) {
            lo[i] = std::max(lo[i], state.generation[i] - g.ramp_limit);
            hi[i] = std::min(hi[i], state.generation[i] + g.ramp_limit);
        }
        if (lo[i] > hi[i]) {
            binding.push_back("ramp:" + g.id);
        }
    }
    for (size_t i = 0; i < ns; i++) {
        const auto &s = grid.storage[i];
        const double e = state.soc_mwh[i];
        lo[ng + i] = std::max(-s.p_charge_max, -(s.energy_max() - e) / (s.eta_charge * dt));
        hi[ng + i] = std::min(s.p_discharge_max, (e - s.energy_min()) * s.eta_discharge / dt);
        if (lo[ng + i] > hi[ng + i]) {
            binding.push_back("soc:" + s.id);
        }
    }
    for (size_t i = 0; i < nr; i++) {
        lo[ng + ns + i] = 0.0;
        hi[ng + ns + i] = grid.renewables[i].available[t];
    }
    double sum_lo = 0.0;
    double sum_hi = 0.0;
    for (size_t i = 0; i < n; i++) {
        sum_lo += lo[i];
        sum_hi += hi[i];
    }
    const double load = grid.load[t];
    if (binding.empty() && (load < sum_lo - 1e-9 || load > sum_hi + 1e-9)) {
        binding.push_back(load < sum_lo ? "balance:minimum_output" : "balance:capacity");
    }
    if (!binding.empty()) {
        throw InfeasibleError("interval " + std::to_string(t) + " has no feasible dispatch", binding);
    }

    std::vector<Slab> slabs;
    if (grid.network) {
        const auto &net = *grid.network;
        auto bus_of_var = [&](size_t i) {
            if (i < ng) {
                return grid.bus_of(grid.generators[i].id);
            }
            if (i < ng + ns) {
                return grid.bus_of(grid.storage[i - ng].id);
            }
            return grid.bus_of(grid.renewables[i - ng - ns].id);
        };
        for (size_t l = 0; l < net.lines.size(); l++) {
            const auto &line = net.lines[l];
            Slab s;
            s.line = l;
            s.limit = line.flow_limit;
            s.offset = -line.ptdf_row[net.load_bus] * load;
            s.a.resize(n);
            for (size_t i = 0; i < n; i++) {
                s.a[i] = line.ptdf_row[bus_of_var(i)];
                s.norm2 += s.a[i] * s.a[i];
            }
            slabs.push_back(std::move(s));
        }
    }

    std::vector<double> y = project_box_sum(z, lo, hi, load);
    if (slabs.empty()) {
        return y;
    }

    // Dykstra's alternating projections; the box/balance set is projected last
    // so the returned point satisfies it exactly.
    y = z;
    std::vector<std::vector<double>> incr(slabs.size() + 1, std::vector<double>(n, 0.0));
    std::vector<double> u(n);
    for (int iter = 0; iter < kMaxDykstraIterations; iter++) {
        std::vector<double> before = y;
        for (size_t k = 0; k < slabs.size(); k++) {
            for (size_t i = 0; i < n; i++) {
                u[i] = y[i] + incr[k][i];
            }
            y = u;
            slabs[k].project(y);
            for (size_t i = 0; i < n; i++) {
                incr[k][i] = u[i] - y[i];
            }
        }
        auto &p0 = incr[slabs.size()];
        for (size_t i = 0; i < n; i++) {
            u[i] = y[i] + p0[i];
        }
        y = project_box_sum(u, lo, hi, load);
        for (size_t i = 0; i < n; i++) {
            p0[i] = u[i] - y[i];
        }

        double worst = 0.0;
        for (const auto &s : slabs) {
            worst = std::max(worst, s.violation(y));
        }
        double change = 0.0;
        for (size_t i = 0; i < n; i++) {
            change = std::max(change, std::abs(y[i] - before[i]));
        }
        if (worst <= kSlabTolerance && change <= 1e-12) {
            return y;
        }
    }
    std::vector<std::string> lines;
    for (const auto &s : slabs) {
        if (s.violation(y) > 1e-7) {
            lines.push_back("flow:line" + std::to_string(s.line));
        }
    }
    if (lines.empty()) {
        return y;
    }
    throw InfeasibleError("interval " + std::to_string(t) + ": line limits cannot be met", lines);
}

}  // namespace

FeasibilityReport feasibility_report(
    const DispatchVector &x, const GridModel &grid, const std::optional<IntervalState> &committed_prev) {
    FeasibilityReport r;
    IntervalState state = start_state(grid, committed_prev);
    for (int lt = 0; lt < x.n_intervals(); lt++) {
        const int t = x.first_interval + lt;
        r.balance.push_back(std::abs(total_injection(x, lt) - grid.load[t]));

        double box = 0.0;
        double ramp = 0.0;
        for (size_t i = 0; i < grid.generators.size(); i++) {
            const auto &g = grid.generators[i];
            double v = x.generation[lt][i];
            box = std::max(box, outside(v, g.p_min, g.p_max));
            if (!state.generation.empty()) {
                ramp = std::max(ramp, std::abs(v - state.generation[i]) - g.ramp_limit);
            }
        }
        for (size_t i = 0; i < grid.storage.size(); i++) {
            const auto &s = grid.storage[i];
            box = std::max(box, outside(x.storage[lt][i], -s.p_charge_max, s.p_discharge_max));
        }
        for (size_t i = 0; i < grid.renewables.size(); i++) {
            box = std::max(box, outside(x.renewable[lt][i], 0.0, grid.renewables[i].available[t]));
        }
        r.box.push_back(box);
        r.ramp.push_back(std::max(ramp, 0.0));

        IntervalState next = advance_state(grid, x, lt, state);
        double soc = 0.0;
        for (size_t i = 0; i < grid.storage.size(); i++) {
            const auto &s = grid.storage[i];
            soc = std::max(soc, outside(next.soc_mwh[i], s.energy_min(), s.energy_max()));
        }
        r.soc.push_back(soc);

        double flow = 0.0;
        auto flows = line_flows(grid, x, lt);
        for (size_t l = 0; l < flows.size(); l++) {
            flow = std::max(flow, std::abs(flows[l]) - grid.network->lines[l].flow_limit);
        }
        r.flow.push_back(std::max(flow, 0.0));
        state = std::move(next);
    }
    for (const auto *v : {&r.balance, &r.box, &r.ramp, &r.soc, &r.flow}) {
        for (double e : *v) {
            r.max_residual = std::max(r.max_residual, e);
        }
    }
    return r;
}

ProjectionResult project_feasible(
    const DispatchVector &x, const GridModel &grid, const std::optional<IntervalState> &committed_prev) {
    ProjectionResult out;
    out.report = feasibility_report(x, grid, committed_prev);
    out.x = x;
    IntervalState state = start_state(grid, committed_prev);
    const size_t ng = grid.generators.size();
    const size_t ns = grid.storage.size();
    for (int lt = 0; lt < x.n_intervals(); lt++) {
        const int t = x.first_interval + lt;
        std::vector<double> z;
        z.insert(z.end(), x.generation[lt].begin(), x.generation[lt].end());
        z.insert(z.end(), x.storage[lt].begin(), x.storage[lt].end());
        z.insert(z.end(), x.renewable[lt].begin(), x.renewable[lt].end());
        std::vector<double> y;
        try {
            y = project_interval(grid, t, z, state);
        } catch (const InfeasibleError &e) {
            throw InfeasibleError(e.what(), e.binding(), out.report);
        }
        std::copy(y.begin(), y.begin() + ng, out.x.generation[lt].begin());
        std::copy(y.begin() + ng, y.begin() + ng + ns, out.x.storage[lt].begin());
        std::copy(y.begin() + ng + ns, y.end(), out.x.renewable[lt].begin());
        state = advance_state(grid, out.x, lt, state);
    }
    out.end_state = std::move(state);
    return out;
}

}  // namespace hqcd
