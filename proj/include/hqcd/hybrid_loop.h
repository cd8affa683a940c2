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
#include <span>
#include <vector>

#include "hqcd/grid_model.h"
#include "hqcd/hamiltonian.h"
#include "hqcd/nacf.h"
#include "hqcd/quantum_sim.h"
#include "hqcd/solution.h"

namespace hqcd {

enum class OptimizerKind { sgd, adam };
enum class SolveMode { per_interval, full_horizon };

const char *to_string(OptimizerKind kind);
const char *to_string(SolveMode mode);

struct OptimizerConfig {
    double learning_rate = 0.1;
    int max_iterations = 200;
    // Relative to |J| at the first iteration of each block.
    double tol_delta_j = 1e-4;
    int patience = 10;
    OptimizerKind optimizer = OptimizerKind::adam;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    SolveMode mode = SolveMode::per_interval;
    std::uint64_t seed = 1;
    int n_layers = 5;
    EncodingOptions encoding;
    // Penalty feedback step and cap.
    double feedback_eta = 0.1;
    double rho_max = 1e6;

    void check() const;

    bool operator==(const OptimizerConfig &) const = default;
};

struct ObjectiveValue {
    double value = 0.0;
    std::vector<double> variances;  // per term; zeros in exact mode
};

/// J(theta) for the ansatz state: exact expectation when noise.exact, else the
/// shot estimate (sampled with `seed`).
ObjectiveValue objective(
    std::span<const double> theta, const AnsatzLayout &layout, const Hamiltonian &h, const NoiseSpec &noise,
    std::uint64_t seed);

/// dJ/dtheta_k = [J(theta_k + pi/2) - J(theta_k - pi/2)] / 2. Shifted
/// evaluations use sub-seeds derived from (seed, k, sign).
std::vector<double> parameter_shift_grad(
    std::span<const double> theta, const AnsatzLayout &layout, const Hamiltonian &h, const NoiseSpec &noise,
    std::uint64_t seed);

struct OptimizerState {
    std::vector<double> m;
    std::vector<double> v;
    int step = 0;
};

struct ParamUpdate {
    ParamVector theta;
    OptimizerState state;
};

ParamUpdate update_params(
    std::span<const double> theta, std::span<const double> grad, const OptimizerConfig &cfg, OptimizerState state);

/// Constraint violations scaled to dimensionless magnitudes.
struct NormalizedResiduals {
    double balance = 0.0;
    double flow = 0.0;
    double bound = 0.0;
};

/// Balance residuals are measured in excess of `deadband[t]` MW (per local
/// interval; missing entries mean 0) and scaled by load.
NormalizedResiduals normalize_residuals(
    const FeasibilityReport &report, const GridModel &grid, int first_interval,
    std::span<const double> deadband = {});

/// rho <- min(rho * (1 + eta * r), rho_max) per multiplier.
PenaltyConfig penalty_feedback(
    const NormalizedResiduals &residuals, const PenaltyConfig &pen, double eta, double rho_max = 1e6);

/// Most frequent sampled bitstring (ties to the lexicographically smallest),
/// or the most probable basis state when `shots` is null.
DispatchVector decode_candidate(const StateVector &state, const ShotResult *shots, const EncodingMap &enc);

/// Which parts of the hybrid loop are active. The full loop enables all three;
/// the unmitigated baseline disables them.
struct LoopFeatures {
    bool nacf = true;
    bool penalty_feedback = true;
    bool project_each_iteration = true;
};

DispatchSolution run_variational(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NacfConfig &nacf,
    const NoiseSpec &noise, const LoopFeatures &features, const char *method_name);

/// Full hybrid loop: simulate, estimate, reweight, parameter-shift step,
/// decode, project, feed back penalties; returns the best feasible projected
/// candidate by zero-penalty cost.
DispatchSolution run_hqcd(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NacfConfig &nacf,
    const NoiseSpec &noise);

}  // namespace hqcd
