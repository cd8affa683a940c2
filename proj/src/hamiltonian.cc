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

#include <map>

#include "hqcd/quantum_sim.h"

namespace hqcd {

const char *to_string(VariableKind kind) {
    switch (kind) {
        case VariableKind::generation:
            return "generation";
        case VariableKind::storage_net:
            return "storage_net";
        case VariableKind::renewable_used:
            return "renewable_used";
    }
    return "?";
}

const char *to_string(TermTag tag) {
    return tag == TermTag::gen ? "gen" : "net";
}

double EncodedVariable::step() const {
    const double levels = static_cast<double>((std::uint64_t{1} << qubits.size()) - 1);
    return (v_max - v_min) / levels;
}

std::uint64_t EncodedVariable::code(std::uint64_t basis_index) const {
    std::uint64_t c = 0;
    for (int q : qubits) {
        c = (c << 1) | ((basis_index >> q) & 1);
    }
    return c;
}

double EncodedVariable::decode(std::uint64_t basis_index) const {
    return v_min + step() * static_cast<double>(code(basis_index));
}

EncodingMap encode_dispatch(const GridModel &grid, int first_interval, int n_intervals, const EncodingOptions &options) {
    if (options.bits_per_variable < 1) {
        throw std::invalid_argument("encode_dispatch: bits_per_variable must be >= 1");
    }
    if (n_intervals < 1 || first_interval < 0 || first_interval + n_intervals > grid.horizon) {
        throw std::invalid_argument("encode_dispatch: interval block outside the horizon");
    }
    const int k = options.bits_per_variable;
    EncodingMap enc;
    enc.first_interval = first_interval;
    enc.n_intervals = n_intervals;
    enc.n_generators = grid.generators.size();
    enc.n_storage = grid.storage.size();
    enc.n_renewables = grid.renewables.size();
    enc.renewables_encoded = options.encode_renewables;

    int next = 0;
    auto add = [&](int unit, VariableKind kind, int t, double lo, double hi) {
        EncodedVariable v;
        v.unit = unit;
        v.kind = kind;
        v.interval = t;
        v.v_min = lo;
        v.v_max = hi;
        for (int j = 0; j < k; j++) {
            v.qubits.push_back(next++);
        }
        enc.variables.push_back(std::move(v));
    };

    for (int t = first_interval; t < first_interval + n_intervals; t++) {
        for (size_t i = 0; i < grid.generators.size(); i++) {
            const auto &g = grid.generators[i];
            add(static_cast<int>(i), VariableKind::generation, t, g.p_min, g.p_max);
        }
        for (size_t i = 0; i < grid.storage.size(); i++) {
            const auto &s = grid.storage[i];
            add(static_cast<int>(i), VariableKind::storage_net, t, -s.p_charge_max, s.p_discharge_max);
        }
        std::vector<double> fixed;
        for (size_t i = 0; i < grid.renewables.size(); i++) {
            double avail = grid.renewables[i].available[t];
            if (options.encode_renewables) {
                add(static_cast<int>(i), VariableKind::renewable_used, t, 0.0, avail);
            } else {
                fixed.push_back(avail);
            }
        }
        enc.fixed_renewable.push_back(std::move(fixed));
    }
    if (next > options.max_qubits) {
        throw QubitBudgetError(next, options.max_qubits);
    }
    enc.n_qubits = next;
    return enc;
}

Hamiltonian::Hamiltonian(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
    for (const auto &t : terms_) {
        if (t.support.size() > 2) {
            throw std::invalid_argument("Hamiltonian: terms must be at most 2-local");
        }
        for (int q : t.support) {
            if (q < 0 || q >= n_qubits_) {
                throw std::invalid_argument("Hamiltonian: term acts on a qubit outside the register");
            }
        }
    }
}

double Hamiltonian::energy(std::uint64_t basis_index) const {
    double e = 0.0;
    for (const auto &t : terms_) {
        e += t.coefficient * t.eigenvalue(basis_index);
    }
    return e;
}

std::vector<double> Hamiltonian::diagonal() const {
    const size_t dim = size_t{1} << n_qubits_;
    std::vector<double> diag(dim, 0.0);
    for (const auto &t : terms_) {
        std::uint64_t mask = 0;
        for (int q : t.support) {
            mask |= std::uint64_t{1} << q;
        }
        for (size_t b = 0; b < dim; b++) {
            diag[b] += (__builtin_popcountll(b & mask) & 1) ? -t.coefficient : t.coefficient;
        }
    }
    return diag;
}

namespace {

/// constant + sum_q coeff_q * b_q over binary variables b_q.
struct AffineBits {
    double constant = 0.0;
    std::map<int, double> coeffs;

    void add_variable(const EncodedVariable &v, double scale) {
        constant += scale * v.v_min;
        const double step = v.step();
        const size_t k = v.qubits.size();
        for (size_t j = 0; j < k; j++) {
            double weight = static_cast<double>(std::uint64_t{1} << (k - 1 - j));
            coeffs[v.qubits[j]] += scale * step * weight;
        }
    }
};

/// Quadratic pseudo-boolean polynomial; b_q^2 = b_q is folded into linear terms.
class QuadraticForm {
   public:
    void add_constant(double c) {
        constant_ += c;
    }

    void add_affine(const AffineBits &e, double scale) {
        constant_ += scale * e.constant;
        for (const auto &[q, a] : e.coeffs) {
            linear_[q] += scale * a;
        }
    }

    void add_square(const AffineBits &e, double scale) {
        constant_ += scale * e.constant * e.constant;
        for (const auto &[q, a] : e.coeffs) {
            linear_[q] += scale * (2.0 * e.constant * a + a * a);
        }
        for (auto i = e.coeffs.begin(); i != e.coeffs.end(); ++i) {
            for (auto j = std::next(i); j != e.coeffs.end(); ++j) {
                quadratic_[{i->first, j->first}] += scale * 2.0 * i->second * j->second;
            }
        }
    }

    /// Substitutes b_q = (1 - Z_q) / 2 and emits identity, Z and ZZ terms.
    void emit(TermTag tag, std::vector<PauliTerm> &out) const {
        double identity = constant_;
        std::map<int, double> z;
        std::map<std::pair<int, int>, double> zz;
        for (const auto &[q, h] : linear_) {
            identity += h / 2.0;
            z[q] -= h / 2.0;
        }
        for (const auto &[qq, j] : quadratic_) {
            identity += j / 4.0;
            z[qq.first] -= j / 4.0;
            z[qq.second] -= j / 4.0;
            zz[qq] += j / 4.0;
        }
        if (identity != 0.0) {
            out.push_back({identity, {}, tag});
        }
        for (const auto &[q, c] : z) {
            if (c != 0.0) {
                out.push_back({c, {q}, tag});
            }
        }
        for (const auto &[qq, c] : zz) {
            if (c != 0.0) {
                out.push_back({c, {qq.first, qq.second}, tag});
            }
        }
    }

   private:
    double constant_ = 0.0;
    std::map<int, double> linear_;
    std::map<std::pair<int, int>, double> quadratic_;
};

}  // namespace

Hamiltonian build_cost_hamiltonian(const GridModel &grid, const EncodingMap &enc, const PenaltyConfig &pen) {
    const double dt = grid.interval_hours;
    QuadraticForm gen;
    QuadraticForm net;

    // Per-interval affine expressions: total injection and per-bus injections.
    const int n_buses = grid.network ? grid.network->n_buses : 1;
    std::vector<AffineBits> injection(enc.n_intervals);
    std::vector<std::vector<AffineBits>> bus_injection(enc.n_intervals, std::vector<AffineBits>(n_buses));
    // storage_net expressions per [local interval][unit] for the SOC band term.
    std::vector<std::vector<AffineBits>> storage_expr(enc.n_intervals, std::vector<AffineBits>(enc.n_storage));

    auto unit_id = [&](VariableKind kind, int unit) -> const std::string & {
        switch (kind) {
            case VariableKind::generation:
                return grid.generators[unit].id;
            case VariableKind::storage_net:
                return grid.storage[unit].id;
            default:
                return grid.renewables[unit].id;
        }
    };

    for (const auto &v : enc.variables) {
        const int lt = v.interval - enc.first_interval;
        if (v.kind == VariableKind::generation) {
            const auto &g = grid.generators[v.unit];
            AffineBits e;
            e.add_variable(v, 1.0);
            gen.add_square(e, g.cost_a * dt);
            gen.add_affine(e, g.cost_b * dt);
            gen.add_constant(g.cost_c * dt);
        }
        if (v.kind == VariableKind::storage_net) {
            storage_expr[lt][v.unit].add_variable(v, 1.0);
        }
        injection[lt].add_variable(v, 1.0);
        bus_injection[lt][grid.network ? grid.bus_of(unit_id(v.kind, v.unit)) : 0].add_variable(v, 1.0);
    }
    for (int lt = 0; lt < enc.n_intervals; lt++) {
        const int t = enc.first_interval + lt;
        for (size_t r = 0; r < enc.fixed_renewable[lt].size(); r++) {
            double mw = enc.fixed_renewable[lt][r];
            injection[lt].constant += mw;
            bus_injection[lt][grid.network ? grid.bus_of(grid.renewables[r].id) : 0].constant += mw;
        }
        injection[lt].constant -= grid.load[t];
        bus_injection[lt][grid.network ? grid.network->load_bus : 0].constant -= grid.load[t];

        if (pen.rho_balance > 0.0) {
            net.add_square(injection[lt], pen.rho_balance);
        }
        if (pen.rho_flow > 0.0 && grid.network) {
            for (const auto &line : grid.network->lines) {
                AffineBits flow;
                for (int b = 0; b < n_buses; b++) {
                    if (line.ptdf_row[b] == 0.0) {
                        continue;
                    }
                    flow.constant += line.ptdf_row[b] * bus_injection[lt][b].constant;
                    for (const auto &[q, a] : bus_injection[lt][b].coeffs) {
                        flow.coeffs[q] += line.ptdf_row[b] * a;
                    }
                }
                net.add_square(flow, pen.rho_flow / (line.flow_limit * line.flow_limit));
            }
        }
    }

    if (pen.rho_bound > 0.0 && enc.n_intervals > 1) {
        for (size_t s = 0; s < enc.n_storage; s++) {
            const auto &unit = grid.storage[s];
            const double mid = 0.5 * (unit.energy_min() + unit.energy_max());
            const double half = 0.5 * (unit.energy_max() - unit.energy_min());
            if (!(half > 0.0)) {
                continue;
            }
            AffineBits band;
            band.constant = (unit.energy_init() - mid) / half;
            for (int lt = 0; lt < enc.n_intervals; lt++) {
                const auto &e = storage_expr[lt][s];
                band.constant -= dt * e.constant / half;
                for (const auto &[q, a] : e.coeffs) {
                    band.coeffs[q] -= dt * a / half;
                }
                net.add_square(band, pen.rho_bound);
            }
        }
    }

    std::vector<PauliTerm> terms;
    gen.emit(TermTag::gen, terms);
    net.emit(TermTag::net, terms);
    return Hamiltonian(enc.n_qubits, std::move(terms));
}

DispatchVector decode_basis(std::uint64_t basis_index, const EncodingMap &enc) {
    DispatchVector x;
    x.first_interval = enc.first_interval;
    x.generation.assign(enc.n_intervals, std::vector<double>(enc.n_generators, 0.0));
    x.storage.assign(enc.n_intervals, std::vector<double>(enc.n_storage, 0.0));
    x.renewable.assign(enc.n_intervals, std::vector<double>(enc.n_renewables, 0.0));
    for (int lt = 0; lt < enc.n_intervals; lt++) {
        if (!enc.renewables_encoded) {
            x.renewable[lt] = enc.fixed_renewable[lt];
        }
    }
    for (const auto &v : enc.variables) {
        const int lt = v.interval - enc.first_interval;
        const double value = v.decode(basis_index);
        switch (v.kind) {
            case VariableKind::generation:
                x.generation[lt][v.unit] = value;
                break;
            case VariableKind::storage_net:
                x.storage[lt][v.unit] = value;
                break;
            case VariableKind::renewable_used:
                x.renewable[lt][v.unit] = value;
                break;
        }
    }
    return x;
}

DispatchVector decode_bitstring(const std::string &bits, const EncodingMap &enc) {
    if (bits.size() != static_cast<size_t>(enc.n_qubits)) {
        throw std::invalid_argument(
            "decode_bitstring: expected " + std::to_string(enc.n_qubits) + " bits, got " + std::to_string(bits.size()));
    }
    return decode_basis(from_bitstring(bits), enc);
}

double classical_cost(const DispatchVector &x, const GridModel &grid, const PenaltyConfig &pen) {
    const double dt = grid.interval_hours;
    double cost = 0.0;
    for (int lt = 0; lt < x.n_intervals(); lt++) {
        const int t = x.first_interval + lt;
        for (size_t i = 0; i < grid.generators.size(); i++) {
            cost += grid.generators[i].hourly_cost(x.generation[lt][i]) * dt;
        }
        if (pen.rho_balance > 0.0) {
            double imbalance = total_injection(x, lt) - grid.load[t];
            cost += pen.rho_balance * imbalance * imbalance;
        }
        if (pen.rho_flow > 0.0 && grid.network) {
            auto flows = line_flows(grid, x, lt);
            for (size_t l = 0; l < flows.size(); l++) {
                double r = flows[l] / grid.network->lines[l].flow_limit;
                cost += pen.rho_flow * r * r;
            }
        }
    }
    if (pen.rho_bound > 0.0 && x.n_intervals() > 1) {
        for (size_t s = 0; s < grid.storage.size(); s++) {
            const auto &unit = grid.storage[s];
            const double mid = 0.5 * (unit.energy_min() + unit.energy_max());
            const double half = 0.5 * (unit.energy_max() - unit.energy_min());
            if (!(half > 0.0)) {
                continue;
            }
            // Lossless energy path; the exact path with efficiencies is
            // enforced by projection.
            double energy = unit.energy_init();
            for (int lt = 0; lt < x.n_intervals(); lt++) {
                energy -= dt * x.storage[lt][s];
                double r = (energy - mid) / half;
                cost += pen.rho_bound * r * r;
            }
        }
    }
    return cost;
}

}  // namespace hqcd
