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
#include <stdexcept>
#include <string>
#include <vector>

#include "hqcd/dispatch.h"
#include "hqcd/grid_model.h"

namespace hqcd {

/// Constraint residuals of a dispatch, one entry per interval (max over units
/// or lines). All entries are >= 0.
struct FeasibilityReport {
    std::vector<double> balance;  // |injection - load|, MW
    std::vector<double> box;      // distance outside unit limits, MW
    std::vector<double> ramp;     // excess over ramp_limit, MW
    std::vector<double> soc;      // energy outside the SOC band, MWh
    std::vector<double> flow;     // excess over flow_limit, MW
    double max_residual = 0.0;

    bool operator==(const FeasibilityReport &) const = default;
};

FeasibilityReport feasibility_report(
    const DispatchVector &x, const GridModel &grid, const std::optional<IntervalState> &committed_prev = std::nullopt);

class InfeasibleError : public std::runtime_error {
   public:
    InfeasibleError(const std::string &message, std::vector<std::string> binding, FeasibilityReport residuals = {})
        : std::runtime_error(message), binding_(std::move(binding)), residuals_(std::move(residuals)) {
    }
    const std::vector<std::string> &binding() const {
        return binding_;
    }
    const FeasibilityReport &residuals() const {
        return residuals_;
    }

   private:
    std::vector<std::string> binding_;
    FeasibilityReport residuals_;
};

struct ProjectionResult {
    DispatchVector x;
    // Residuals of the input, before projection.
    FeasibilityReport report;
    // Operating point after the last interval of x.
    IntervalState end_state;
};

/// Euclidean projection onto the operating set, interval by interval: power
/// balance, unit boxes, ramp limits against the previous interval, the SOC
/// band (exact dynamics with efficiencies) and PTDF line limits. Intervals are
/// threaded sequentially from `committed_prev` (initial SOC, no ramp
/// reference, when absent).
///
/// Throws InfeasibleError when an interval admits no feasible point.
ProjectionResult project_feasible(
    const DispatchVector &x, const GridModel &grid, const std::optional<IntervalState> &committed_prev = std::nullopt);

}  // namespace hqcd
