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

#include "hqcd/dispatch.h"

#include <stdexcept>

namespace hqcd {

DispatchVector DispatchVector::zeros(const GridModel &grid, int first_interval, int n_intervals) {
    DispatchVector x;
    x.first_interval = first_interval;
    x.generation.assign(n_intervals, std::vector<double>(grid.generators.size(), 0.0));
    x.storage.assign(n_intervals, std::vector<double>(grid.storage.size(), 0.0));
    x.renewable.assign(n_intervals, std::vector<double>(grid.renewables.size(), 0.0));
    return x;
}

void DispatchVector::append(const DispatchVector &other) {
    if (generation.empty()) {
        *this = other;
        return;
    }
    if (other.first_interval != first_interval + n_intervals()) {
        throw std::invalid_argument("DispatchVector::append: blocks are not contiguous");
    }
    generation.insert(generation.end(), other.generation.begin(), other.generation.end());
    storage.insert(storage.end(), other.storage.begin(), other.storage.end());
    renewable.insert(renewable.end(), other.renewable.begin(), other.renewable.end());
}

IntervalState IntervalState::initial(const GridModel &grid) {
    IntervalState s;
    for (const auto &u : grid.storage) {
        s.soc_mwh.push_back(u.energy_init());
    }
    return s;
}

double storage_energy_delta(const StorageUnit &unit, double p, double interval_hours) {
    if (p >= 0.0) {
        return -p * interval_hours / unit.eta_discharge;
    }
    return -p * interval_hours * unit.eta_charge;
}

double total_injection(const DispatchVector &x, int t) {
    double sum = 0.0;
    for (double v : x.generation[t]) {
        sum += v;
    }
    for (double v : x.storage[t]) {
        sum += v;
    }
    for (double v : x.renewable[t]) {
        sum += v;
    }
    return sum;
}

std::vector<double> line_flows(const GridModel &grid, const DispatchVector &x, int t) {
    std::vector<double> flows;
    if (!grid.network) {
        return flows;
    }
    const auto &net = *grid.network;
    std::vector<double> inj(net.n_buses, 0.0);
    for (size_t i = 0; i < grid.generators.size(); i++) {
        inj[grid.bus_of(grid.generators[i].id)] += x.generation[t][i];
    }
    for (size_t i = 0; i < grid.storage.size(); i++) {
        inj[grid.bus_of(grid.storage[i].id)] += x.storage[t][i];
    }
    for (size_t i = 0; i < grid.renewables.size(); i++) {
        inj[grid.bus_of(grid.renewables[i].id)] += x.renewable[t][i];
    }
    inj[net.load_bus] -= grid.load[x.first_interval + t];
    for (const auto &line : net.lines) {
        double f = 0.0;
        for (int b = 0; b < net.n_buses; b++) {
            f += line.ptdf_row[b] * inj[b];
        }
        flows.push_back(f);
    }
    return flows;
}

IntervalState advance_state(const GridModel &grid, const DispatchVector &x, int t, const IntervalState &before) {
    IntervalState after;
    after.generation = x.generation[t];
    after.soc_mwh = before.soc_mwh;
    for (size_t i = 0; i < grid.storage.size(); i++) {
        after.soc_mwh[i] += storage_energy_delta(grid.storage[i], x.storage[t][i], grid.interval_hours);
    }
    return after;
}

}  // namespace hqcd
