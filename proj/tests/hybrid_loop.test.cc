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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "hqcd/baselines.h"
#include "hqcd/fixtures.h"
#include "hqcd/nacf.h"
#include "test_util.h"

using namespace hqcd;

namespace {

const double kPi = std::numbers::pi;

NoiseSpec exact_noise() {
    NoiseSpec n;
    n.exact = true;
    return n;
}

Hamiltonian z_only() {
    return Hamiltonian(1, {{1.0, {0}, TermTag::gen}});
}

Hamiltonian random_diagonal(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<PauliTerm> terms{{u(rng), {}, TermTag::gen}};
    for (int q = 0; q < n; q++) {
        terms.push_back({u(rng), {q}, TermTag::gen});
        for (int r = q + 1; r < n; r++) {
            terms.push_back({u(rng), {q, r}, TermTag::net});
        }
    }
    return Hamiltonian(n, terms);
}

OptimizerConfig toy_config(std::uint64_t seed) {
    OptimizerConfig cfg;
    cfg.seed = seed;
    cfg.encoding.bits_per_variable = 2;
    return cfg;
}

}  // namespace

TEST(HybridLoop, objective_single_qubit) {
    AnsatzLayout layout{1, 1};
    std::vector<double> t0{0.0}, t1{kPi / 2};
    ASSERT_NEAR(objective(t0, layout, z_only(), exact_noise(), 0).value, 1.0, 1e-12);
    ASSERT_NEAR(objective(t1, layout, z_only(), exact_noise(), 0).value, 0.0, 1e-12);
    ASSERT_EQ(objective(t1, layout, z_only(), exact_noise(), 0).variances, std::vector<double>{0.0});
}

TEST(HybridLoop, objective_matches_enumeration) {
    GridModel g = gen_fixture("toy2");
    EncodingOptions o;
    o.bits_per_variable = 1;
    EncodingMap enc = encode_dispatch(g, 0, 1, o);
    Hamiltonian h = build_cost_hamiltonian(g, enc, {1, 1, 1});
    AnsatzLayout layout{enc.n_qubits, 3};
    auto rng = hqcd_test::test_rng(21);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> theta(layout.n_params());
    for (auto &t : theta) {
        t = u(rng);
    }
    StateVector s = simulate(build_ansatz(layout.n_qubits, layout.n_layers, theta));
    double oracle = 0.0;
    for (std::uint64_t b = 0; b < s.dim(); b++) {
        oracle += s.probability(b) * classical_cost(decode_basis(b, enc), g, {1, 1, 1});
    }
    ASSERT_NEAR(objective(theta, layout, h, exact_noise(), 0).value, oracle, 1e-9 * std::abs(oracle));
}

TEST(HybridLoop, shift_gradient_single_qubit) {
    AnsatzLayout layout{1, 1};
    std::vector<double> t1{kPi / 2}, t0{0.0};
    ASSERT_NEAR(parameter_shift_grad(t1, layout, z_only(), exact_noise(), 0)[0], -1.0, 1e-12);
    ASSERT_NEAR(parameter_shift_grad(t0, layout, z_only(), exact_noise(), 0)[0], 0.0, 1e-12);
}

TEST(HybridLoop, shift_gradient_matches_finite_differences) {
    auto rng = hqcd_test::test_rng(22);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int n = 2; n <= 4; n++) {
        AnsatzLayout layout{n, 2};
        Hamiltonian h = random_diagonal(n, rng);
        for (int trial = 0; trial < 5; trial++) {
            std::vector<double> theta(layout.n_params());
            for (auto &t : theta) {
                t = u(rng);
            }
            auto grad = parameter_shift_grad(theta, layout, h, exact_noise(), 0);
            for (size_t k = 0; k < theta.size(); k++) {
                const double step = 1e-5;
                auto plus = theta, minus = theta;
                plus[k] += step;
                minus[k] -= step;
                double fd = (objective(plus, layout, h, exact_noise(), 0).value -
                             objective(minus, layout, h, exact_noise(), 0).value) /
                            (2 * step);
                ASSERT_NEAR(grad[k], fd, 1e-6);
            }
        }
    }
}

TEST(HybridLoop, sgd_update) {
    OptimizerConfig cfg;
    cfg.optimizer = OptimizerKind::sgd;
    cfg.learning_rate = 0.1;
    std::vector<double> theta{1.0}, grad{2.0}, zero{0.0};
    ASSERT_NEAR(update_params(theta, grad, cfg, {}).theta[0], 0.8, 1e-15);
    ASSERT_EQ(update_params(theta, zero, cfg, {}).theta[0], 1.0);
}

TEST(HybridLoop, adam_first_step) {
    OptimizerConfig cfg;
    cfg.learning_rate = 0.1;
    std::vector<double> theta{0.3}, grad{1.0};
    ParamUpdate u = update_params(theta, grad, cfg, {});
    ASSERT_NEAR(u.theta[0], 0.3 - 0.1, 1e-6);
    ASSERT_EQ(u.state.step, 1);
    ParamUpdate u2 = update_params(u.theta, grad, cfg, u.state);
    ASSERT_EQ(u2.state.step, 2);
    ASSERT_LT(u2.theta[0], u.theta[0]);
}

TEST(HybridLoop, config_check) {
    OptimizerConfig cfg;
    cfg.learning_rate = 0;
    ASSERT_THROW(cfg.check(), std::invalid_argument);
    cfg = {};
    cfg.patience = 0;
    ASSERT_THROW(cfg.check(), std::invalid_argument);
}

TEST(HybridLoop, penalty_feedback_rules) {
    PenaltyConfig pen{2, 3, 4};
    ASSERT_EQ(penalty_feedback({0, 0, 0}, pen, 0.5), pen);
    PenaltyConfig up = penalty_feedback({0.2, 0, 0}, pen, 0.5);
    ASSERT_GT(up.rho_balance, pen.rho_balance);
    ASSERT_EQ(up.rho_flow, pen.rho_flow);
    PenaltyConfig p = pen;
    for (int i = 0; i < 200; i++) {
        p = penalty_feedback({5, 5, 5}, p, 0.5);
    }
    ASSERT_EQ(p.rho_balance, 1e6);
    ASSERT_EQ(p.rho_bound, 1e6);
}

TEST(HybridLoop, decode_candidate_rules) {
    GridModel g = gen_fixture("toy2");
    EncodingOptions o;
    o.bits_per_variable = 1;
    EncodingMap enc = encode_dispatch(g, 0, 1, o);
    StateVector s = StateVector::basis(2, 0);

    ShotResult unanimous;
    unanimous.n_qubits = 2;
    unanimous.batches = {{{from_bitstring("01"), 4}}, {{from_bitstring("01"), 4}}};
    ASSERT_EQ(decode_candidate(s, &unanimous, enc), decode_bitstring("01", enc));

    ShotResult tie;
    tie.n_qubits = 2;
    tie.batches = {{{from_bitstring("11"), 5}}, {{from_bitstring("00"), 5}}};
    ASSERT_EQ(decode_candidate(s, &tie, enc), decode_bitstring("00", enc));

    std::vector<double> theta{kPi, 0.4};
    StateVector peaked = simulate(build_ansatz(2, 1, theta));
    ASSERT_EQ(decode_candidate(peaked, nullptr, enc), decode_bitstring("10", enc));
}

TEST(HybridLoop, toy2_exact_reaches_optimum) {
    GridModel g = gen_fixture("toy2");
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 5; seed++) {
        DispatchSolution sol = run_hqcd(g, toy_config(seed), {}, {}, exact_noise());
        good += sol.total_cost <= 1.02 * 1050.0;
        ASSERT_LE(sol.iterations, 200);
        ASSERT_LE(sol.report.max_residual, 1e-6);
    }
    ASSERT_GE(good, 4);
}

TEST(HybridLoop, single_iteration) {
    GridModel g = gen_fixture("toy2");
    OptimizerConfig cfg = toy_config(4);
    cfg.max_iterations = 1;
    DispatchSolution sol = run_hqcd(g, cfg, {}, {}, exact_noise());
    ASSERT_EQ(sol.trace.size(), 1u);
    ASSERT_EQ(sol.iterations, 1);
    ASSERT_TRUE(sol.trace.entries[0].candidate_cost.has_value());
    ASSERT_EQ(*sol.trace.entries[0].candidate_cost, sol.total_cost);

    DispatchSolution plain = run_plain_vqa(g, cfg, {}, exact_noise());
    ASSERT_EQ(plain.dispatch, sol.dispatch);
}

TEST(HybridLoop, deterministic) {
    GridModel g = gen_fixture("micro24");
    OptimizerConfig cfg;
    cfg.seed = 17;
    cfg.max_iterations = 15;
    NoiseSpec noise;
    noise.readout_flip_prob = 0.05;
    noise.n_shots = 256;
    DispatchSolution a = run_hqcd(g, cfg, {}, {}, noise);
    DispatchSolution b = run_hqcd(g, cfg, {}, {}, noise);
    ASSERT_EQ(a, b);
    cfg.seed = 18;
    ASSERT_NE(run_hqcd(g, cfg, {}, {}, noise).trace, a.trace);
}

TEST(HybridLoop, best_so_far) {
    GridModel g = gen_fixture("micro24");
    OptimizerConfig cfg;
    cfg.seed = 5;
    cfg.max_iterations = 30;
    NoiseSpec noise;
    noise.readout_flip_prob = 0.05;
    noise.n_shots = 256;
    DispatchSolution sol = run_hqcd(g, cfg, {}, {}, noise);
    ASSERT_LE(sol.report.max_residual, 1e-6);
    // Per-interval blocks: the best candidate of each block is committed.
    std::map<int, double> block_best;
    for (const auto &e : sol.trace.entries) {
        ASSERT_LE(e.iteration, cfg.max_iterations);
        if (e.candidate_cost) {
            auto it = block_best.find(e.block);
            block_best[e.block] = it == block_best.end() ? *e.candidate_cost : std::min(it->second, *e.candidate_cost);
        }
    }
    PenaltyConfig zero{0, 0, 0};
    for (int t = 0; t < g.horizon; t++) {
        DispatchVector one = DispatchVector::zeros(g, t, 1);
        one.generation[0] = sol.dispatch.generation[t];
        one.storage[0] = sol.dispatch.storage[t];
        one.renewable[0] = sol.dispatch.renewable[t];
        ASSERT_NEAR(classical_cost(one, g, zero), block_best.at(t), 1e-9);
    }
}

TEST(HybridLoop, mode_equivalence_at_horizon_one) {
    GridModel g = gen_fixture("bus3");
    OptimizerConfig a;
    a.seed = 3;
    a.max_iterations = 25;
    OptimizerConfig b = a;
    b.mode = SolveMode::full_horizon;
    NoiseSpec noise;
    noise.n_shots = 256;
    ASSERT_EQ(run_hqcd(g, a, {}, {}, noise), run_hqcd(g, b, {}, {}, noise));
}

TEST(HybridLoop, monotone_descent_sgd) {
    GridModel g = gen_fixture("toy2");
    OptimizerConfig cfg = toy_config(2);
    cfg.optimizer = OptimizerKind::sgd;
    cfg.learning_rate = 0.05;
    DispatchSolution sol = run_hqcd(g, cfg, {}, {}, exact_noise());
    const auto &e = sol.trace.entries;
    ASSERT_GT(e.size(), 1u);
    int non_increasing = 0;
    for (size_t i = 1; i < e.size(); i++) {
        non_increasing += e[i].j_exact <= e[i - 1].j_exact + 1e-12 * std::abs(e[i - 1].j_exact);
    }
    ASSERT_GE(non_increasing, 0.9 * static_cast<double>(e.size() - 1));
}

TEST(HybridLoop, plain_and_hqcd_share_first_iteration) {
    GridModel g = gen_fixture("toy2");
    OptimizerConfig cfg = toy_config(9);
    DispatchSolution h = run_hqcd(g, cfg, {}, {}, exact_noise());
    DispatchSolution p = run_plain_vqa(g, cfg, {}, exact_noise());
    const auto &a = h.trace.entries[0];
    const auto &b = p.trace.entries[0];
    ASSERT_EQ(a.j_noisy, b.j_noisy);
    ASSERT_EQ(a.j_exact, b.j_exact);
    ASSERT_EQ(a.grad_norm, b.grad_norm);
}

TEST(HybridLoop, beta_limit) {
    GridModel g = gen_fixture("toy2");
    EncodingMap enc = encode_dispatch(g, 0, 1, EncodingOptions{});
    Hamiltonian h = build_cost_hamiltonian(g, enc, {});
    AnsatzLayout layout{enc.n_qubits, 2};
    std::vector<double> theta(layout.n_params(), 0.7);
    NoiseSpec noise;
    noise.readout_flip_prob = 0.1;
    StateVector s = simulate(build_ansatz(layout.n_qubits, layout.n_layers, theta));
    Estimate est = expectation_estimate(sample_shots(s, noise, 3), h);
    std::vector<double> var;
    for (const auto &t : est.per_term) {
        var.push_back(t.variance);
    }
    NacfConfig tiny;
    tiny.beta = 1e-9;
    Hamiltonian hw = reweight(h, nacf_weights(var, tiny));
    double plain = expectation_exact(s, h);
    ASSERT_NEAR(expectation_exact(s, hw), plain, 1e-6 * std::abs(plain));
}

TEST(HybridLoop, qubit_budget_propagates) {
    GridModel g = gen_fixture("micro24");
    OptimizerConfig cfg;
    cfg.mode = SolveMode::full_horizon;
    ASSERT_THROW(run_hqcd(g, cfg, {}, {}, exact_noise()), QubitBudgetError);
}
