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

#include "hqcd/hybrid_loop.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hqcd/projection.h"
#include "hqcd/rng.h"

namespace hqcd {

namespace {

constexpr std::uint64_t kInitTag = 0x1000;
constexpr std::uint64_t kMeasureTag = 0;
constexpr std::uint64_t kGradientTag = 1;

/// Objective evaluator bound to one Hamiltonian; caches the diagonal for the
/// exact path.
class Evaluator {
   public:
    Evaluator(const AnsatzLayout &layout, const Hamiltonian &h, const NoiseSpec &noise)
        : layout_(layout), h_(h), noise_(noise) {
        if (static_cast<int>(layout.n_qubits) != h.n_qubits()) {
            throw std::invalid_argument("objective: ansatz and Hamiltonian qubit counts differ");
        }
        if (noise.exact) {
            diag_ = h.diagonal();
        } else {
            noise.check();
        }
    }

    StateVector state(std::span<const double> theta) const {
        return simulate(build_ansatz(layout_.n_qubits, layout_.n_layers, theta));
    }

    double value(std::span<const double> theta, std::uint64_t seed) const {
        StateVector s = state(theta);
        if (noise_.exact) {
            return expectation_exact(s, diag_);
        }
        return expectation_estimate(sample_shots(s, noise_, seed), h_).value;
    }

   private:
    AnsatzLayout layout_;
    const Hamiltonian &h_;
    NoiseSpec noise_;
    std::vector<double> diag_;
};

double non_identity_scale(const Hamiltonian &h) {
    double s = 0.0;
    for (const auto &t : h.terms()) {
        if (!t.support.empty()) {
            s += std::abs(t.coefficient);
        }
    }
    return s > 0.0 ? s : 1.0;
}

}  // namespace

const char *to_string(OptimizerKind kind) {
    return kind == OptimizerKind::sgd ? "sgd" : "adam";
}

const char *to_string(SolveMode mode) {
    return mode == SolveMode::per_interval ? "per_interval" : "full_horizon";
}

void OptimizerConfig::check() const {
    if (!(learning_rate > 0.0)) {
        throw std::invalid_argument("OptimizerConfig: learning_rate must be > 0");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
    }
    if (patience < 1) {
        throw std::invalid_argument("OptimizerConfig: patience must be >= 1");
    }
    if (n_layers < 1) {
        throw std::invalid_argument("OptimizerConfig: n_layers must be >= 1");
    }
    if (feedback_eta < 0.0) {
        throw std::invalid_argument("OptimizerConfig: feedback_eta must be >= 0");
    }
}

ObjectiveValue objective(
    std::span<const double> theta, const AnsatzLayout &layout, const Hamiltonian &h, const NoiseSpec &noise,
    std::uint64_t seed) {
    StateVector s = simulate(build_ansatz(layout.n_qubits, layout.n_layers, theta));
    ObjectiveValue out;
    if (noise.exact) {
        out.value = expectation_exact(s, h);
        out.variances.assign(h.terms().size(), 0.0);
        return out;
    }
    Estimate est = expectation_estimate(sample_shots(s, noise, seed), h);
    out.value = est.value;
    for (const auto &t : est.per_term) {
        out.variances.push_back(t.variance);
    }
    return out;
}

std::vector<double> parameter_shift_grad(
    std::span<const double> theta, const AnsatzLayout &layout, const Hamiltonian &h, const NoiseSpec &noise,
    std::uint64_t seed) {
    Evaluator eval(layout, h, noise);
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    const double shift = std::numbers::pi / 2.0;
    for (size_t k = 0; k < theta.size(); k++) {
        shifted[k] = theta[k] + shift;
        double plus = eval.value(shifted, derive_seed(seed, k, 0));
        shifted[k] = theta[k] - shift;
        double minus = eval.value(shifted, derive_seed(seed, k, 1));
        shifted[k] = theta[k];
        grad[k] = (plus - minus) / 2.0;
    }
    return grad;
}

ParamUpdate update_params(
    std::span<const double> theta, std::span<const double> grad, const OptimizerConfig &cfg, OptimizerState state) {
    if (theta.size() != grad.size()) {
        throw std::invalid_argument("update_params: theta and gradient sizes differ");
    }
    ParamUpdate out{ParamVector(theta.begin(), theta.end()), std::move(state)};
    if (cfg.optimizer == OptimizerKind::sgd) {
        for (size_t k = 0; k < theta.size(); k++) {
            out.theta[k] -= cfg.learning_rate * grad[k];
        }
        return out;
    }
    auto &st = out.state;
    if (st.m.size() != theta.size()) {
        st.m.assign(theta.size(), 0.0);
        st.v.assign(theta.size(), 0.0);
        st.step = 0;
    }
    st.step++;
    const double bc1 = 1.0 - std::pow(cfg.adam_beta1, st.step);
    const double bc2 = 1.0 - std::pow(cfg.adam_beta2, st.step);
    for (size_t k = 0; k < theta.size(); k++) {
        st.m[k] = cfg.adam_beta1 * st.m[k] + (1.0 - cfg.adam_beta1) * grad[k];
        st.v[k] = cfg.adam_beta2 * st.v[k] + (1.0 - cfg.adam_beta2) * grad[k] * grad[k];
        double m_hat = st.m[k] / bc1;
        double v_hat = st.v[k] / bc2;
        out.theta[k] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_epsilon);
    }
    return out;
}

NormalizedResiduals normalize_residuals(
    const FeasibilityReport &report, const GridModel &grid, int first_interval, std::span<const double> deadband) {
    NormalizedResiduals r;
    for (size_t lt = 0; lt < report.balance.size(); lt++) {
        double load = grid.load[first_interval + lt];
        double slack = lt < deadband.size() ? deadband[lt] : 0.0;
        r.balance = std::max(r.balance, std::max(report.balance[lt] - slack, 0.0) / std::max(load, 1.0));
    }
    if (grid.network && !grid.network->lines.empty()) {
        double min_limit = grid.network->lines.front().flow_limit;
        for (const auto &l : grid.network->lines) {
            min_limit = std::min(min_limit, l.flow_limit);
        }
        for (double f : report.flow) {
            r.flow = std::max(r.flow, f / min_limit);
        }
    }
    double capacity = 0.0;
    for (const auto &s : grid.storage) {
        capacity += s.e_capacity;
    }
    if (capacity > 0.0) {
        for (double s : report.soc) {
            r.bound = std::max(r.bound, s / capacity);
        }
    }
    return r;
}

PenaltyConfig penalty_feedback(
    const NormalizedResiduals &residuals, const PenaltyConfig &pen, double eta, double rho_max) {
    if (eta < 0.0) {
        throw std::invalid_argument("penalty_feedback: eta must be >= 0");
    }
    auto step = [&](double rho, double r) {
        if (!(r > 0.0)) {
            return rho;
        }
        return std::min(rho * (1.0 + eta * r), std::max(rho_max, rho));
    };
    PenaltyConfig out;
    out.rho_balance = step(pen.rho_balance, residuals.balance);
    out.rho_flow = step(pen.rho_flow, residuals.flow);
    out.rho_bound = step(pen.rho_bound, residuals.bound);
    return out;
}

DispatchVector decode_candidate(const StateVector &state, const ShotResult *shots, const EncodingMap &enc) {
    const int n = state.n_qubits();
    std::uint64_t best = 0;
    if (shots != nullptr) {
        std::uint64_t best_count = 0;
        bool first = true;
        for (const auto &[outcome, count] : shots->merged()) {
            if (first || count > best_count || (count == best_count && bitstring_less(outcome, best, n))) {
                best = outcome;
                best_count = count;
                first = false;
            }
        }
    } else {
        double best_p = -1.0;
        for (std::uint64_t b = 0; b < state.dim(); b++) {
            double p = state.probability(b);
            double tie = 1e-12 * std::max(p, best_p);
            if (p > best_p + tie || (std::abs(p - best_p) <= tie && bitstring_less(b, best, n))) {
                best = b;
                best_p = p;
            }
        }
    }
    return decode_basis(best, enc);
}

namespace {

struct BlockResult {
    DispatchVector best;
    IntervalState end_state;
    PenaltyConfig pen;
    int iterations = 0;
};

BlockResult solve_block(
    const GridModel &grid, int block, int first_interval, int n_intervals, const std::optional<IntervalState> &prev,
    const OptimizerConfig &cfg, const PenaltyConfig &pen_in, const NacfConfig &nacf, const NoiseSpec &noise,
    const LoopFeatures &features, ConvergenceTrace &trace) {
    const PenaltyConfig zero{0.0, 0.0, 0.0};
    const EncodingMap enc = encode_dispatch(grid, first_interval, n_intervals, cfg.encoding);
    const AnsatzLayout layout{enc.n_qubits, cfg.n_layers};

    Rng init(derive_seed(cfg.seed, static_cast<std::uint64_t>(block), kInitTag));
    ParamVector theta(layout.n_params());
    for (auto &v : theta) {
        v = init.uniform(-std::numbers::pi, std::numbers::pi);
    }

    PenaltyConfig pen = pen_in;
    Hamiltonian h = build_cost_hamiltonian(grid, enc, pen);
    const double grad_scale = non_identity_scale(h);
    // Balance misses smaller than half the coarsest register step are an
    // artifact of the level grid, not something a larger penalty can fix.
    std::vector<double> deadband(static_cast<size_t>(n_intervals), 0.0);
    for (const auto &v : enc.variables) {
        double &d = deadband[static_cast<size_t>(v.interval - first_interval)];
        d = std::max(d, 0.5 * v.step());
    }
    VarianceSmoother smoother(nacf.smoothing);
    OptimizerState opt_state;

    std::optional<ProjectionResult> best;
    double best_cost = 0.0;
    std::optional<DispatchVector> last_candidate;
    std::optional<FeasibilityReport> last_residuals;

    double j_prev = 0.0;
    double tol_abs = 0.0;
    int streak = 0;
    int it = 1;
    for (; it <= cfg.max_iterations; it++) {
        const std::uint64_t seed_it = derive_seed(cfg.seed, static_cast<std::uint64_t>(block), it);
        StateVector state = simulate(build_ansatz(layout.n_qubits, layout.n_layers, theta));

        std::vector<double> variances(h.terms().size(), 0.0);
        std::vector<double> means;
        std::optional<ShotResult> shots;
        if (!noise.exact) {
            shots = sample_shots(state, noise, derive_seed(seed_it, kMeasureTag));
            Estimate est = expectation_estimate(*shots, h);
            for (size_t i = 0; i < est.per_term.size(); i++) {
                variances[i] = est.per_term[i].variance;
                means.push_back(est.per_term[i].mean);
            }
        }

        std::vector<double> weights(h.terms().size(), 1.0);
        if (features.nacf) {
            weights = nacf_weights(smoother.update(variances), nacf);
        }
        Hamiltonian hw = reweight(h, weights);

        TraceEntry entry;
        entry.block = block;
        entry.iteration = it;
        entry.pen = pen;
        entry.j_exact = expectation_exact(state, h);
        if (noise.exact) {
            entry.j_noisy = expectation_exact(state, hw);
        } else {
            for (size_t i = 0; i < means.size(); i++) {
                entry.j_noisy += hw.terms()[i].coefficient * means[i];
            }
        }
        if (!weights.empty()) {
            entry.weight_min = *std::min_element(weights.begin(), weights.end());
            double sum = 0.0;
            for (double w : weights) {
                sum += w;
            }
            entry.weight_mean = sum / static_cast<double>(weights.size());
        }

        std::vector<double> grad = parameter_shift_grad(theta, layout, hw, noise, derive_seed(seed_it, kGradientTag));
        double norm2 = 0.0;
        for (double g : grad) {
            norm2 += g * g;
        }
        entry.grad_norm = std::sqrt(norm2);

        DispatchVector candidate = decode_candidate(state, shots ? &*shots : nullptr, enc);
        FeasibilityReport residuals;
        if (features.project_each_iteration) {
            try {
                ProjectionResult proj = project_feasible(candidate, grid, prev);
                double cost = classical_cost(proj.x, grid, zero);
                entry.candidate_cost = cost;
                residuals = proj.report;
                if (!best || cost < best_cost) {
                    best_cost = cost;
                    best = std::move(proj);
                }
            } catch (const InfeasibleError &) {
                residuals = feasibility_report(candidate, grid, prev);
            }
        } else {
            residuals = feasibility_report(candidate, grid, prev);
        }
        last_candidate = std::move(candidate);
        last_residuals = residuals;
        trace.entries.push_back(entry);

        if (features.penalty_feedback) {
            PenaltyConfig next =
                penalty_feedback(normalize_residuals(residuals, grid, first_interval, deadband), pen, cfg.feedback_eta,
                    cfg.rho_max);
            if (!(next == pen)) {
                pen = next;
                h = build_cost_hamiltonian(grid, enc, pen);
            }
        }

        for (double &g : grad) {
            g /= grad_scale;
        }
        ParamUpdate upd = update_params(theta, grad, cfg, std::move(opt_state));
        theta = std::move(upd.theta);
        opt_state = std::move(upd.state);

        if (it == 1) {
            tol_abs = cfg.tol_delta_j * std::max(std::abs(entry.j_noisy), 1e-300);
        } else {
            streak = std::abs(j_prev - entry.j_noisy) < tol_abs ? streak + 1 : 0;
            if (streak >= cfg.patience) {
                break;
            }
        }
        j_prev = entry.j_noisy;
    }

    BlockResult out;
    out.iterations = static_cast<int>(std::min(it, cfg.max_iterations));
    out.pen = pen;
    if (!features.project_each_iteration) {
        try {
            best = project_feasible(*last_candidate, grid, prev);
        } catch (const InfeasibleError &e) {
            throw InfeasibleError(
                std::string("final candidate cannot be projected: ") + e.what(), e.binding(), *last_residuals);
        }
    }
    if (!best) {
        throw InfeasibleError(
            "no feasible candidate found for block " + std::to_string(block), {"projection"}, *last_residuals);
    }
    out.best = std::move(best->x);
    out.end_state = std::move(best->end_state);
    return out;
}

}  // namespace

DispatchSolution run_variational(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NacfConfig &nacf,
    const NoiseSpec &noise, const LoopFeatures &features, const char *method_name) {
    cfg.check();
    noise.check();
    auto violations = validate_grid(grid);
    if (!violations.empty()) {
        throw std::invalid_argument("grid is invalid: " + violations.front());
    }

    DispatchSolution sol;
    sol.method = method_name;
    std::optional<IntervalState> prev;
    PenaltyConfig current = pen;
    std::vector<std::pair<int, int>> blocks;
    if (cfg.mode == SolveMode::per_interval) {
        for (int t = 0; t < grid.horizon; t++) {
            blocks.push_back({t, 1});
        }
    } else {
        blocks.push_back({0, grid.horizon});
    }
    for (size_t b = 0; b < blocks.size(); b++) {
        BlockResult r = solve_block(
            grid, static_cast<int>(b), blocks[b].first, blocks[b].second, prev, cfg, current, nacf, noise, features,
            sol.trace);
        sol.dispatch.append(r.best);
        sol.iterations += r.iterations;
        prev = std::move(r.end_state);
        current = r.pen;
    }
    sol.total_cost = classical_cost(sol.dispatch, grid, PenaltyConfig{0.0, 0.0, 0.0});
    sol.report = feasibility_report(sol.dispatch, grid);
    return sol;
}

DispatchSolution run_hqcd(
    const GridModel &grid, const OptimizerConfig &cfg, const PenaltyConfig &pen, const NacfConfig &nacf,
    const NoiseSpec &noise) {
    return run_variational(grid, cfg, pen, nacf, noise, LoopFeatures{}, "hqcd");
}

}  // namespace hqcd
