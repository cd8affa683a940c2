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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hqcd {

class Hamiltonian;

using ParamVector = std::vector<double>;

/// Hardware-efficient layered ansatz: each layer is one Ry per qubit followed
/// by a ring of CZ gates (i, i+1 mod n). Layer l, qubit q reads theta[l*n + q].
struct AnsatzLayout {
    int n_qubits = 1;
    int n_layers = 1;

    size_t n_params() const {
        return static_cast<size_t>(n_qubits) * static_cast<size_t>(n_layers);
    }
};

enum class GateKind { ry, cz };

struct Gate {
    GateKind kind = GateKind::ry;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    bool operator==(const Gate &) const = default;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

Circuit build_ansatz(int n_qubits, int n_layers, std::span<const double> theta);

/// Basis index bit q holds qubit q. Bitstrings print qubit 0 first.
class StateVector {
   public:
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, std::vector<std::complex<double>> amplitudes);

    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const {
        return n_qubits_;
    }
    size_t dim() const {
        return amplitudes_.size();
    }
    const std::vector<std::complex<double>> &amplitudes() const {
        return amplitudes_;
    }
    double probability(std::uint64_t index) const {
        return std::norm(amplitudes_[index]);
    }
    double norm_squared() const;

    void apply_ry(int q, double angle);
    void apply_cz(int a, int b);

   private:
    int n_qubits_;
    std::vector<std::complex<double>> amplitudes_;
};

/// Applies the circuit to |0...0>.
StateVector simulate(const Circuit &circuit);

/// Sum over basis states of |amp|^2 E(b).
double expectation_exact(const StateVector &state, const Hamiltonian &h);
double expectation_exact(const StateVector &state, std::span<const double> diagonal);

/// Readout-noise and sampling configuration. `exact` bypasses sampling.
struct NoiseSpec {
    double readout_flip_prob = 0.0;
    int n_shots = 1024;
    int n_batches = 8;
    bool exact = false;

    /// Throws std::invalid_argument if the invariants do not hold.
    void check() const;

    bool operator==(const NoiseSpec &) const = default;
};

/// Per-batch counts keyed by basis index.
struct ShotResult {
    int n_qubits = 0;
    std::vector<std::map<std::uint64_t, std::uint64_t>> batches;

    std::uint64_t total_shots() const;
    std::map<std::uint64_t, std::uint64_t> merged() const;
};

/// Draws n_shots outcomes from |amp|^2, flips each bit with readout_flip_prob
/// and groups shots into n_batches equal batches. Batch b uses a sub-seed
/// derived from (seed, b).
ShotResult sample_shots(const StateVector &state, const NoiseSpec &noise, std::uint64_t seed);

struct TermEstimate {
    double mean = 0.0;
    double variance = 0.0;
};

struct Estimate {
    double value = 0.0;
    std::vector<TermEstimate> per_term;
    // Set when fewer than two batches exist; variances are then reported as 0.
    bool variance_unavailable = false;
};

/// Term means are averages of per-batch means of the unit-coefficient Pauli
/// operator; variances are the unbiased sample variance of those batch means.
Estimate expectation_estimate(const ShotResult &shots, const Hamiltonian &h);

std::string to_bitstring(std::uint64_t index, int n_qubits);
std::uint64_t from_bitstring(const std::string &bits);

/// Lexicographic order on printed bitstrings (qubit 0 most significant).
bool bitstring_less(std::uint64_t a, std::uint64_t b, int n_qubits);

}  // namespace hqcd
