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

#include <vector>

#include "hqcd/grid_model.h"

namespace hqcd {

/// Dispatch decisions for a contiguous block of intervals. Unit columns follow
/// the order of the corresponding GridModel vectors.
struct DispatchVector {
    int first_interval = 0;
    std::vector<std::vector<double>> generation;  // [interval][generator] MW
    // Net storage power, MW: positive discharges into the grid, negative charges.
    std::vector<std::vector<double>> storage;
    std::vector<std::vector<double>> renewable;  // [interval][renewable] MW used

    int n_intervals() const {
        return static_cast<int>(generation.size());
    }

    static DispatchVector zeros(const GridModel &grid, int first_interval, int n_intervals);

    /// Appends the intervals of `other`, which must start where this block ends.
    void append(const DispatchVector &other);

    bool operator==(const DispatchVector &) const = default;
};

/// Committed operating point at the end of an interval: what the next
/// interval's ramp and state-of-charge limits are measured from.
struct IntervalState {
    std::vector<double> generation;
    std::vector<double> soc_mwh;

    static IntervalState initial(const GridModel &grid);
};

/// Energy change of a storage unit over one interval for net power `p`.
double storage_energy_delta(const StorageUnit &unit, double p, double interval_hours);

/// Total injection (generation + storage + renewables) in local interval `t`.
double total_injection(const DispatchVector &x, int t);

/// DC line flows for local interval `t`; empty when the grid has no network.
std::vector<double> line_flows(const GridModel &grid, const DispatchVector &x, int t);

/// State after local interval `t`, given the state before it.
IntervalState advance_state(const GridModel &grid, const DispatchVector &x, int t, const IntervalState &before);

}  // namespace hqcd
