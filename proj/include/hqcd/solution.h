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
#include <string>
#include <vector>

#include "hqcd/dispatch.h"
#include "hqcd/hamiltonian.h"
#include "hqcd/projection.h"

namespace hqcd {

struct TraceEntry {
    int block = 0;      // solve block (interval index in per-interval mode)
    int iteration = 0;  // 1-based within the block
    double j_noisy = 0.0;  // NACF-weighted estimate driving the stopping rule
    double j_exact = 0.0;  // simulator-exact unweighted objective, diagnostic
    double grad_norm = 0.0;
    PenaltyConfig pen;
    double weight_min = 1.0;
    double weight_mean = 1.0;
    // Zero-penalty cost of the projected candidate; absent when the loop did
    // not project this iteration or projection was infeasible.
    std::optional<double> candidate_cost;

    bool operator==(const TraceEntry &) const = default;
};

struct ConvergenceTrace {
    std::vector<TraceEntry> entries;

    size_t size() const {
        return entries.size();
    }
    /// j_noisy per entry, in trace order.
    std::vector<double> objective() const {
        std::vector<double> out;
        out.reserve(entries.size());
        for (const auto &e : entries) {
            out.push_back(e.j_noisy);
        }
        return out;
    }

    bool operator==(const ConvergenceTrace &) const = default;
};

struct DispatchSolution {
    std::string method;
    DispatchVector dispatch;
    double total_cost = 0.0;  // generation cost, no penalties
    FeasibilityReport report;  // residuals of `dispatch` itself
    int iterations = 0;
    ConvergenceTrace trace;
    // Scenario baseline only: mean cost over re-projected scenarios.
    std::optional<double> expected_cost;

    bool operator==(const DispatchSolution &) const = default;
};

}  // namespace hqcd
