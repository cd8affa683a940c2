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

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "hqcd/hamiltonian.h"
#include "hqcd/rng.h"

namespace hqcd {

Circuit build_ansatz(int n_qubits, int n_layers, std::span<const double> theta) {
    if (n_qubits < 1 || n_layers < 1) {
        throw std::invalid_argument("build_ansatz: n_qubits and n_layers must be >= 1");
    }
    AnsatzLayout layout{n_qubits, n_layers};
    if (theta.size() != layout.n_params()) {
        throw std::invalid_argument(
            "build_ansatz: expected " + std::to_string(layout.n_params()) + " parameters, got " +
            std::to_string(theta.size()));
    }
    Circuit c;
    c.n_qubits = n_qubits;
    for (int l = 0; l < n_layers; l++) {
        for (int q = 0; q < n_qubits; q++) {
            c.gates.push_back({GateKind::ry, q, -1, theta[static_cast<size_t>(l) * n_qubits + q]});
        }
        if (n_qubits == 2) {
            c.gates.push_back({GateKind::cz, 0, 1, 0.0});
        } else if (n_qubits > 2) {
            for (int q = 0; q < n_qubits; q++) {
                c.gates.push_back({GateKind::cz, q, (q + 1) % n_qubits, 0.0});
            }
        }
    }
    return c;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits), amplitudes_(size_t{1} << n_qubits) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<std::complex<double>> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (size_t{1} << n_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^n_qubits");
    }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    s.amplitudes_[0] = 0.0;
    s.amplitudes_.at(index) = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::apply_ry(int q, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const size_t stride = size_t{1} << q;
    for (size_t base = 0; base < amplitudes_.size(); base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            auto a0 = amplitudes_[i];
            auto a1 = amplitudes_[i + stride];
            amplitudes_[i] = c * a0 - s * a1;
            amplitudes_[i + stride] = s * a0 + c * a1;
        }
    }
}

void StateVector::apply_cz(int a, int b) {
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & mask) == mask) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

StateVector simulate(const Circuit &circuit) {
    StateVector state(circuit.n_qubits);
    for (const auto &g : circuit.gates) {
        if (g.kind == GateKind::ry) {
            state.apply_ry(g.q0, g.angle);
        } else {
            state.apply_cz(g.q0, g.q1);
        }
    }
    return state;
}

double expectation_exact(const StateVector &state, std::span<const double> diagonal) {
    if (diagonal.size() != state.dim()) {
        throw std::invalid_argument("expectation_exact: qubit-count mismatch between state and Hamiltonian");
    }
    double total = 0.0;
    for (size_t b = 0; b < state.dim(); b++) {
        total += state.probability(b) * diagonal[b];
    }
    return total;
}

double expectation_exact(const StateVector &state, const Hamiltonian &h) {
    if (h.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument(
            "expectation_exact: Hamiltonian acts on " + std::to_string(h.n_qubits()) + " qubits, state has " +
            std::to_string(state.n_qubits()));
    }
    return expectation_exact(state, h.diagonal());
}

void NoiseSpec::check() const {
    if (exact) {
        return;
    }
    if (!(readout_flip_prob >= 0.0 && readout_flip_prob <= 0.5)) {
        throw std::invalid_argument("NoiseSpec: readout_flip_prob must lie in [0, 0.5]");
    }
    if (n_batches < 1 || n_shots < n_batches) {
        throw std::invalid_argument("NoiseSpec: requires n_shots >= n_batches >= 1");
    }
    if (n_shots % n_batches != 0) {
        throw std::invalid_argument("NoiseSpec: n_shots must be divisible by n_batches");
    }
}

std::uint64_t ShotResult::total_shots() const {
    std::uint64_t total = 0;
    for (const auto &b : batches) {
        for (const auto &[k, c] : b) {
            total += c;
        }
    }
    return total;
}

std::map<std::uint64_t, std::uint64_t> ShotResult::merged() const {
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto &b : batches) {
        for (const auto &[k, c] : b) {
            out[k] += c;
        }
    }
    return out;
}

ShotResult sample_shots(const StateVector &state, const NoiseSpec &noise, std::uint64_t seed) {
    noise.check();
    std::vector<double> cumulative(state.dim());
    double acc = 0.0;
    for (size_t b = 0; b < state.dim(); b++) {
        acc += state.probability(b);
        cumulative[b] = acc;
    }

    ShotResult result;
    result.n_qubits = state.n_qubits();
    result.batches.resize(noise.n_batches);
    const int per_batch = noise.n_shots / noise.n_batches;
    std::vector<std::uint64_t> dense(state.dim());
    for (int batch = 0; batch < noise.n_batches; batch++) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(batch)));
        std::fill(dense.begin(), dense.end(), 0);
        for (int s = 0; s < per_batch; s++) {
            double u = rng.uniform() * acc;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            std::uint64_t outcome = std::min<std::uint64_t>(it - cumulative.begin(), state.dim() - 1);
            if (noise.readout_flip_prob > 0.0) {
                for (int q = 0; q < state.n_qubits(); q++) {
                    if (rng.bernoulli(noise.readout_flip_prob)) {
                        outcome ^= std::uint64_t{1} << q;
                    }
                }
            }
            dense[outcome]++;
        }
        auto &counts = result.batches[batch];
        for (std::uint64_t b = 0; b < dense.size(); b++) {
            if (dense[b] != 0) {
                counts.emplace_hint(counts.end(), b, dense[b]);
            }
        }
    }
    return result;
}

Estimate expectation_estimate(const ShotResult &shots, const Hamiltonian &h) {
    if (shots.n_qubits != h.n_qubits()) {
        throw std::invalid_argument("expectation_estimate: qubit-count mismatch between shots and Hamiltonian");
    }
    const auto &terms = h.terms();
    const size_t n_batches = shots.batches.size();
    std::vector<std::uint64_t> masks(terms.size(), 0);
    for (size_t i = 0; i < terms.size(); i++) {
        for (int q : terms[i].support) {
            masks[i] |= std::uint64_t{1} << q;
        }
    }
    std::vector<std::vector<double>> batch_means(terms.size(), std::vector<double>(n_batches, 0.0));
    for (size_t b = 0; b < n_batches; b++) {
        std::uint64_t batch_total = 0;
        for (const auto &[outcome, count] : shots.batches[b]) {
            batch_total += count;
            const double c = static_cast<double>(count);
            for (size_t i = 0; i < terms.size(); i++) {
                batch_means[i][b] += (std::popcount(outcome & masks[i]) & 1) ? -c : c;
            }
        }
        if (batch_total > 0) {
            for (size_t i = 0; i < terms.size(); i++) {
                batch_means[i][b] /= static_cast<double>(batch_total);
            }
        }
    }

    Estimate est;
    est.variance_unavailable = n_batches < 2;
    est.per_term.resize(terms.size());
    for (size_t i = 0; i < terms.size(); i++) {
        double mean = 0.0;
        for (double m : batch_means[i]) {
            mean += m;
        }
        mean /= static_cast<double>(std::max<size_t>(n_batches, 1));
        double var = 0.0;
        if (n_batches >= 2) {
            for (double m : batch_means[i]) {
                var += (m - mean) * (m - mean);
            }
            var /= static_cast<double>(n_batches - 1);
        }
        est.per_term[i] = {mean, var};
        est.value += terms[i].coefficient * mean;
    }
    return est;
}

std::string to_bitstring(std::uint64_t index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; q++) {
        if ((index >> q) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

std::uint64_t from_bitstring(const std::string &bits) {
    std::uint64_t index = 0;
    for (size_t q = 0; q < bits.size(); q++) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("from_bitstring: invalid character in '" + bits + "'");
        }
    }
    return index;
}

bool bitstring_less(std::uint64_t a, std::uint64_t b, int n_qubits) {
    for (int q = 0; q < n_qubits; q++) {
        int ba = (a >> q) & 1;
        int bb = (b >> q) & 1;
        if (ba != bb) {
            return ba < bb;
        }
    }
    return false;
}

}  // namespace hqcd
