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

#include "hqcd/nacf.h"

#include <stdexcept>

namespace hqcd {

std::vector<double> nacf_weights(std::span<const double> variances, const NacfConfig &cfg) {
    if (cfg.beta < 0.0) {
        throw std::invalid_argument("nacf_weights: beta must be >= 0");
    }
    std::vector<double> w(variances.size(), 1.0);
    for (size_t i = 0; i < variances.size(); i++) {
        if (variances[i] < 0.0) {
            throw std::invalid_argument("nacf_weights: variance " + std::to_string(i) + " is negative");
        }
        if (cfg.enabled) {
            w[i] = 1.0 / (1.0 + cfg.beta * variances[i]);
        }
    }
    return w;
}

Hamiltonian reweight(const Hamiltonian &h, std::span<const double> weights) {
    if (weights.size() != h.terms().size()) {
        throw std::invalid_argument(
            "reweight: " + std::to_string(weights.size()) + " weights for " + std::to_string(h.terms().size()) +
            " terms");
    }
    std::vector<PauliTerm> terms = h.terms();
    for (size_t i = 0; i < terms.size(); i++) {
        terms[i].coefficient *= weights[i];
    }
    return Hamiltonian(h.n_qubits(), std::move(terms));
}

const std::vector<double> &VarianceSmoother::update(std::span<const double> variances) {
    if (smoothed_.size() != variances.size()) {
        smoothed_.assign(variances.begin(), variances.end());
        return smoothed_;
    }
    for (size_t i = 0; i < variances.size(); i++) {
        smoothed_[i] = factor_ * smoothed_[i] + (1.0 - factor_) * variances[i];
    }
    return smoothed_;
}

}  // namespace hqcd
