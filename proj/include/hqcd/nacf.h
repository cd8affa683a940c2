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

#include <span>
#include <vector>

#include "hqcd/hamiltonian.h"

namespace hqcd {

/// Noise-adaptive cost function settings.
struct NacfConfig {
    double beta = 2.0;
    bool enabled = true;
    // Weight on the previous smoothed variance; 0 uses only the latest batch.
    double smoothing = 0.5;

    bool operator==(const NacfConfig &) const = default;
};

/// w_i = 1 / (1 + beta * sigma_i^2); all ones when disabled.
/// Throws std::invalid_argument on a negative variance or negative beta.
std::vector<double> nacf_weights(std::span<const double> variances, const NacfConfig &cfg);

/// Multiplies term i's coefficient by weights[i]; tags and supports are kept.
Hamiltonian reweight(const Hamiltonian &h, std::span<const double> weights);

/// Exponential smoothing of per-term variance estimates across iterations.
class VarianceSmoother {
   public:
    explicit VarianceSmoother(double factor) : factor_(factor) {
    }

    const std::vector<double> &update(std::span<const double> variances);
    void reset() {
        smoothed_.clear();
    }

   private:
    double factor_;
    std::vector<double> smoothed_;
};

}  // namespace hqcd
