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

#include "hqcd/quantum_sim.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "hqcd/hamiltonian.h"
#include "test_util.h"

using namespace hqcd;

namespace {

StateVector random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    std::vector<std::complex<double>> amps(size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {nd(rng), nd(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector(n, amps);
}

Hamiltonian z0(int n) {
    return Hamiltonian(n, {{1.0, {0}, TermTag::gen}});
}

}  // namespace

TEST(QuantumSim, ansatz_shape) {
    std::vector<double> th{std::numbers::pi};
    Circuit c = build_ansatz(1, 1, th);
    ASSERT_EQ(c.gates.size(), 1u);
    ASSERT_EQ(c.gates[0].kind, GateKind::ry);

    std::vector<double> th2{0.1, 0.2};
    Circuit c2 = build_ansatz(2, 1, th2);
    ASSERT_EQ(c2.gates.size(), 3u);
    ASSERT_EQ(c2.gates[2].kind, GateKind::cz);

    std::vector<double> th3(5);
    ASSERT_THROW(build_ansatz(3, 2, th3), std::invalid_argument);

    std::vector<double> th4(6);
    Circuit c4 = build_ansatz(3, 2, th4);
    ASSERT_EQ(c4.gates.size(), 12u);
}

TEST(QuantumSim, rotations) {
    const double pi = std::numbers::pi;
    for (auto [angle, a0, a1] : {std::tuple{pi, 0.0, 1.0}, {0.0, 1.0, 0.0}, {pi / 2, M_SQRT1_2, M_SQRT1_2}}) {
        std::vector<double> th{angle};
        StateVector s = simulate(build_ansatz(1, 1, th));
        ASSERT_NEAR(s.amplitudes()[0].real(), a0, 1e-12);
        ASSERT_NEAR(s.amplitudes()[1].real(), a1, 1e-12);
    }
}

TEST(QuantumSim, normalized) {
    auto rng = hqcd_test::test_rng();
    std::uniform_real_distribution<double> u(-4, 4);
    for (int n = 1; n <= 6; n++) {
        std::vector<double> th(static_cast<size_t>(n) * 3);
        for (auto &t : th) {
            t = u(rng);
        }
        ASSERT_NEAR(simulate(build_ansatz(n, 3, th)).norm_squared(), 1.0, 1e-10);
    }
}

TEST(QuantumSim, z_expectation) {
    ASSERT_EQ(expectation_exact(StateVector::basis(2, 0), z0(2)), 1.0);
    ASSERT_EQ(expectation_exact(StateVector::basis(2, from_bitstring("10")), z0(2)), -1.0);
    ASSERT_THROW(expectation_exact(StateVector::basis(3, 0), z0(2)), std::invalid_argument);
}

TEST(QuantumSim, exact_matches_enumeration) {
    auto rng = hqcd_test::test_rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    StateVector s = random_state(3, rng);
    std::vector<PauliTerm> terms{{u(rng), {}, TermTag::gen}};
    for (int q = 0; q < 3; q++) {
        terms.push_back({u(rng), {q}, TermTag::gen});
    }
    terms.push_back({u(rng), {0, 2}, TermTag::net});
    Hamiltonian h(3, terms);
    double oracle = 0.0;
    for (std::uint64_t b = 0; b < 8; b++) {
        double e = 0.0;
        for (const auto &t : terms) {
            double sign = 1.0;
            for (int q : t.support) {
                sign *= ((b >> q) & 1) ? -1.0 : 1.0;
            }
            e += t.coefficient * sign;
        }
        oracle += std::norm(s.amplitudes()[b]) * e;
    }
    ASSERT_NEAR(expectation_exact(s, h), oracle, 1e-12);
}

TEST(QuantumSim, bitstrings) {
    ASSERT_EQ(to_bitstring(1, 3), "100");
    ASSERT_EQ(from_bitstring("011"), 6u);
    ASSERT_TRUE(bitstring_less(from_bitstring("00"), from_bitstring("11"), 2));
    ASSERT_TRUE(bitstring_less(from_bitstring("01"), from_bitstring("10"), 2));
}

TEST(QuantumSim, shots_noiseless_zero_state) {
    NoiseSpec noise;
    noise.n_shots = 800;
    ShotResult r = sample_shots(StateVector::basis(1, 0), noise, 3);
    ASSERT_EQ(r.total_shots(), 800u);
    ASSERT_EQ(r.batches.size(), 8u);
    auto m = r.merged();
    ASSERT_EQ(m.size(), 1u);
    ASSERT_EQ(m[0], 800u);
}

TEST(QuantumSim, shots_maximal_readout_noise) {
    NoiseSpec noise;
    noise.n_shots = 40000;
    noise.readout_flip_prob = 0.5;
    auto m = sample_shots(StateVector::basis(1, 0), noise, 4).merged();
    double frac = static_cast<double>(m[1]) / 40000.0;
    ASSERT_NEAR(frac, 0.5, 4.0 * std::sqrt(0.25 / 40000.0));
}

TEST(QuantumSim, shots_deterministic) {
    auto rng = hqcd_test::test_rng(2);
    StateVector s = random_state(3, rng);
    NoiseSpec noise;
    noise.readout_flip_prob = 0.05;
    ASSERT_EQ(sample_shots(s, noise, 9).batches, sample_shots(s, noise, 9).batches);
    ASSERT_NE(sample_shots(s, noise, 9).batches, sample_shots(s, noise, 10).batches);
}

TEST(QuantumSim, estimate_constant_batches) {
    NoiseSpec noise;
    Estimate e = expectation_estimate(sample_shots(StateVector::basis(1, 0), noise, 1), z0(1));
    ASSERT_EQ(e.per_term[0].mean, 1.0);
    ASSERT_EQ(e.per_term[0].variance, 0.0);
    ASSERT_FALSE(e.variance_unavailable);
}

TEST(QuantumSim, estimate_two_point_variance) {
    ShotResult r;
    r.n_qubits = 1;
    r.batches = {{{0, 10}}, {{1, 10}}};
    Estimate e = expectation_estimate(r, z0(1));
    ASSERT_EQ(e.per_term[0].mean, 0.0);
    ASSERT_EQ(e.per_term[0].variance, 2.0);
}

TEST(QuantumSim, estimate_single_batch_flagged) {
    NoiseSpec noise;
    noise.n_batches = 1;
    Estimate e = expectation_estimate(sample_shots(StateVector::basis(1, 0), noise, 1), z0(1));
    ASSERT_TRUE(e.variance_unavailable);
    ASSERT_EQ(e.per_term[0].variance, 0.0);
}

TEST(QuantumSim, estimate_near_exact) {
    auto rng = hqcd_test::test_rng(3);
    StateVector s = random_state(2, rng);
    Hamiltonian h(2, {{0.7, {0}, TermTag::gen}, {-1.3, {0, 1}, TermTag::net}, {2.0, {}, TermTag::gen}});
    NoiseSpec noise;
    noise.n_shots = 20000;
    Estimate e = expectation_estimate(sample_shots(s, noise, 5), h);
    // Var of a single shot is at most (0.7 + 1.3)^2.
    double sigma = 2.0 / std::sqrt(20000.0);
    ASSERT_NEAR(e.value, expectation_exact(s, h), 3.0 * sigma);
}

TEST(QuantumSim, readout_bias) {
    std::vector<double> th{1.1};
    StateVector s = simulate(build_ansatz(1, 1, th));
    const double p = 0.1;
    NoiseSpec noise;
    noise.n_shots = 100000;
    noise.readout_flip_prob = p;
    Estimate e = expectation_estimate(sample_shots(s, noise, 6), z0(1));
    double expected = (1 - 2 * p) * std::cos(1.1);
    ASSERT_NEAR(e.value, expected, 3.0 / std::sqrt(100000.0));
}

TEST(QuantumSim, noise_spec_check) {
    NoiseSpec n;
    n.readout_flip_prob = 0.7;
    ASSERT_THROW(n.check(), std::invalid_argument);
    n.readout_flip_prob = 0.0;
    n.n_shots = 10;
    n.n_batches = 3;
    ASSERT_THROW(n.check(), std::invalid_argument);
}
