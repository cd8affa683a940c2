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

#include "hqcd/hamiltonian.h"

#include <cmath>

#include "gtest/gtest.h"
#include "hqcd/fixtures.h"
#include "hqcd/quantum_sim.h"
#include "test_util.h"

using namespace hqcd;

namespace {

EncodingOptions bits(int k) {
    EncodingOptions o;
    o.bits_per_variable = k;
    return o;
}

// Coefficients keyed by support, summed, for comparing two Hamiltonians term-wise.
std::map<std::vector<int>, double> by_support(const Hamiltonian &h, TermTag tag) {
    std::map<std::vector<int>, double> out;
    for (const auto &t : h.terms()) {
        if (t.tag == tag) {
            out[t.support] += t.coefficient;
        }
    }
    return out;
}

void expect_qubo_consistent(const GridModel &g, int first, int n, const PenaltyConfig &pen) {
    EncodingMap enc = encode_dispatch(g, first, n, bits(1));
    Hamiltonian h = build_cost_hamiltonian(g, enc, pen);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << enc.n_qubits); b++) {
        double via_state = expectation_exact(StateVector::basis(enc.n_qubits, b), h);
        double classical = classical_cost(decode_basis(b, enc), g, pen);
        ASSERT_NEAR(via_state, classical, 1e-8 * std::max(1.0, std::abs(classical))) << "basis " << b;
    }
}

}  // namespace

TEST(Hamiltonian, toy2_encoding_size) {
    EncodingMap enc = encode_dispatch(gen_fixture("toy2"), 0, 1, bits(2));
    ASSERT_EQ(enc.variables.size(), 2u);
    ASSERT_EQ(enc.n_qubits, 4);
    std::vector<bool> seen(4, false);
    for (const auto &v : enc.variables) {
        for (int q : v.qubits) {
            ASSERT_FALSE(seen[q]);
            seen[q] = true;
        }
    }
}

TEST(Hamiltonian, affine_decode_msb_first) {
    EncodedVariable v;
    v.qubits = {0, 1};
    v.v_min = 0;
    v.v_max = 90;
    ASSERT_EQ(v.decode(from_bitstring("11")), 90.0);
    ASSERT_EQ(v.decode(from_bitstring("00")), 0.0);
    ASSERT_EQ(v.decode(from_bitstring("10")), 60.0);
    ASSERT_EQ(v.decode(from_bitstring("01")), 30.0);
}

TEST(Hamiltonian, decode_extremes) {
    GridModel g = gen_fixture("toy2");
    EncodingMap enc = encode_dispatch(g, 0, 1, bits(2));
    DispatchVector hi = decode_bitstring("1111", enc);
    ASSERT_EQ(hi.generation[0], (std::vector<double>{100, 80}));
    DispatchVector lo = decode_bitstring("0000", enc);
    ASSERT_EQ(lo.generation[0], (std::vector<double>{0, 0}));
    ASSERT_THROW(decode_bitstring("111", enc), std::invalid_argument);
}

TEST(Hamiltonian, decode_monotone) {
    EncodedVariable v;
    v.qubits = {2, 0, 1};
    v.v_min = 5;
    v.v_max = 40;
    double prev = -1;
    for (std::uint64_t code = 0; code < 8; code++) {
        // Place MSB-first code bits onto qubits 2, 0, 1.
        std::uint64_t idx = 0;
        for (int j = 0; j < 3; j++) {
            if ((code >> (2 - j)) & 1) {
                idx |= std::uint64_t{1} << v.qubits[j];
            }
        }
        ASSERT_EQ(v.code(idx), code);
        ASSERT_GT(v.decode(idx), prev);
        prev = v.decode(idx);
    }
}

TEST(Hamiltonian, qubit_budget) {
    GridModel g = gen_fixture("micro24");
    EncodingOptions o = bits(3);
    try {
        encode_dispatch(g, 0, 4, o);
        FAIL() << "expected QubitBudgetError";
    } catch (const QubitBudgetError &e) {
        ASSERT_EQ(e.required(), 36);
    }
    ASSERT_EQ(encode_dispatch(g, 0, 4, bits(1)).n_qubits, 12);
}

TEST(Hamiltonian, toy2_zero_penalty_costs) {
    GridModel g = gen_fixture("toy2");
    EncodingMap enc = encode_dispatch(g, 0, 1, bits(1));
    Hamiltonian h = build_cost_hamiltonian(g, enc, {0, 0, 0});
    for (const auto &t : h.terms()) {
        ASSERT_EQ(t.tag, TermTag::gen);
    }
    // (g1, g2) in {0, 100} x {0, 80}
    auto cost = [](double g1, double g2) { return 0.02 * g1 * g1 + 10 * g1 + 0.04 * g2 * g2 + 8 * g2; };
    ASSERT_NEAR(h.energy(from_bitstring("00")), cost(0, 0), 1e-9);
    ASSERT_NEAR(h.energy(from_bitstring("10")), cost(100, 0), 1e-9);
    ASSERT_NEAR(h.energy(from_bitstring("01")), cost(0, 80), 1e-9);
    ASSERT_NEAR(h.energy(from_bitstring("11")), cost(100, 80), 1e-9);
}

TEST(Hamiltonian, qubo_consistency_fixtures) {
    PenaltyConfig pen{0.7, 3.0, 5.0};
    expect_qubo_consistent(gen_fixture("toy2"), 0, 1, pen);
    expect_qubo_consistent(gen_fixture("bus3"), 0, 1, pen);
    expect_qubo_consistent(gen_fixture("micro24"), 0, 4, pen);
    expect_qubo_consistent(gen_fixture("micro24"), 2, 1, pen);
}

TEST(Hamiltonian, qubo_consistency_multibit) {
    GridModel g = gen_fixture("bus3");
    EncodingMap enc = encode_dispatch(g, 0, 1, bits(3));
    PenaltyConfig pen{1.5, 2.0, 1.0};
    Hamiltonian h = build_cost_hamiltonian(g, enc, pen);
    std::vector<double> diag = h.diagonal();
    for (std::uint64_t b = 0; b < diag.size(); b++) {
        ASSERT_NEAR(diag[b], classical_cost(decode_basis(b, enc), g, pen), 1e-8 * std::abs(diag[b]));
    }
}

TEST(Hamiltonian, degree_at_most_two) {
    GridModel g = gen_fixture("micro24");
    Hamiltonian h = build_cost_hamiltonian(g, encode_dispatch(g, 0, 4, bits(1)), {1, 1, 1});
    for (const auto &t : h.terms()) {
        ASSERT_LE(t.support.size(), 2u);
    }
}

TEST(Hamiltonian, penalty_linearity) {
    GridModel g = gen_fixture("bus3");
    EncodingMap enc = encode_dispatch(g, 0, 1, bits(2));
    PenaltyConfig p1{0.5, 2.0, 0.0};
    PenaltyConfig p2{1.5, 0.25, 0.0};
    auto a = by_support(build_cost_hamiltonian(g, enc, p1), TermTag::net);
    auto b = by_support(build_cost_hamiltonian(g, enc, p2), TermTag::net);
    auto sum = by_support(build_cost_hamiltonian(g, enc, {2.0, 2.25, 0.0}), TermTag::net);
    for (const auto &[support, c] : sum) {
        ASSERT_NEAR(c, a[support] + b[support], 1e-9 * std::max(1.0, std::abs(c)));
    }
}

TEST(Hamiltonian, classical_cost_examples) {
    GridModel g = gen_fixture("toy2");
    DispatchVector x = DispatchVector::zeros(g, 0, 1);
    x.generation[0] = {50, 50};
    ASSERT_NEAR(classical_cost(x, g, {0, 0, 0}), 1050.0, 1e-9);
    ASSERT_NEAR(classical_cost(x, g, {1, 0, 0}), 1050.0, 1e-9);
    x.generation[0] = {0, 0};
    ASSERT_NEAR(classical_cost(x, g, {1, 0, 0}), 10000.0, 1e-9);
}
