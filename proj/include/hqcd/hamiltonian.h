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
#include <stdexcept>
#include <string>
#include <vector>

#include "hqcd/dispatch.h"
#include "hqcd/grid_model.h"

namespace hqcd {

enum class VariableKind { generation, storage_net, renewable_used };

const char *to_string(VariableKind kind);

/// A dispatch variable held in a k-qubit register. The register is read
/// MSB-first (qubits[0] is the most significant bit) and decodes affinely:
/// v = v_min + (v_max - v_min) * code / (2^k - 1).
struct EncodedVariable {
    int unit = 0;  // index into the grid's vector for `kind`
    VariableKind kind = VariableKind::generation;
    int interval = 0;  // absolute interval index
    std::vector<int> qubits;
    double v_min = 0.0;
    double v_max = 0.0;

    double step() const;
    std::uint64_t code(std::uint64_t basis_index) const;
    double decode(std::uint64_t basis_index) const;
};

struct EncodingOptions {
    int bits_per_variable = 3;
    int max_qubits = 14;
    // When false, renewables are must-take at availability and carry no qubits;
    // curtailment is left to the classical projection.
    bool encode_renewables = false;

    bool operator==(const EncodingOptions &) const = default;
};

struct EncodingMap {
    int first_interval = 0;
    int n_intervals = 1;
    int n_qubits = 0;
    std::vector<EncodedVariable> variables;
    // [local interval][renewable] MW for renewables without qubits.
    std::vector<std::vector<double>> fixed_renewable;
    size_t n_generators = 0;
    size_t n_storage = 0;
    size_t n_renewables = 0;
    bool renewables_encoded = false;
};

class QubitBudgetError : public std::runtime_error {
   public:
    QubitBudgetError(int required, int budget)
        : std::runtime_error(
              "encoding needs " + std::to_string(required) + " qubits, budget is " + std::to_string(budget)),
          required_(required) {
    }
    int required() const {
        return required_;
    }

   private:
    int required_;
};

EncodingMap encode_dispatch(const GridModel &grid, int first_interval, int n_intervals, const EncodingOptions &options);

enum class TermTag { gen, net };

const char *to_string(TermTag tag);

/// coefficient * prod_{q in support} Z_q, with |support| <= 2.
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<int> support;
    TermTag tag = TermTag::gen;

    /// +1 or -1: the Z-parity eigenvalue on a basis state.
    double eigenvalue(std::uint64_t basis_index) const {
        int parity = 0;
        for (int q : support) {
            parity ^= static_cast<int>((basis_index >> q) & 1);
        }
        return parity ? -1.0 : 1.0;
    }

    bool operator==(const PauliTerm &) const = default;
};

class Hamiltonian {
   public:
    Hamiltonian() = default;
    Hamiltonian(int n_qubits, std::vector<PauliTerm> terms);

    int n_qubits() const {
        return n_qubits_;
    }
    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }

    double energy(std::uint64_t basis_index) const;
    /// Energies of all 2^n basis states.
    std::vector<double> diagonal() const;

   private:
    int n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Soft-constraint multipliers. rho_balance scales (injection - load)^2 in
/// cost/MW^2; rho_flow scales (flow / flow_limit)^2 in cost units; rho_bound
/// scales the state-of-charge band term ((E - E_mid) / E_half)^2 in cost units.
struct PenaltyConfig {
    double rho_balance = 1.0;
    double rho_flow = 1.0;
    double rho_bound = 1.0;

    bool operator==(const PenaltyConfig &) const = default;
};

/// H = H_gen + H_net, diagonal in Z. H_gen holds the quadratic generation cost;
/// H_net holds balance, line-flow and (multi-interval only) state-of-charge
/// penalties.
Hamiltonian build_cost_hamiltonian(const GridModel &grid, const EncodingMap &enc, const PenaltyConfig &pen);

DispatchVector decode_basis(std::uint64_t basis_index, const EncodingMap &enc);
DispatchVector decode_bitstring(const std::string &bits, const EncodingMap &enc);

/// Generation cost plus the same penalty functional the Hamiltonian encodes,
/// evaluated directly on MW values.
double classical_cost(const DispatchVector &x, const GridModel &grid, const PenaltyConfig &pen);

}  // namespace hqcd
