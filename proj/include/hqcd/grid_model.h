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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hqcd {

/// Thermal unit with convex quadratic cost a*p^2 + b*p + c per hour.
struct Generator {
    std::string id;
    double cost_a = 0.0;  // currency / MW^2 h
    double cost_b = 0.0;  // currency / MWh
    double cost_c = 0.0;  // currency / h
    double p_min = 0.0;
    double p_max = 0.0;
    double ramp_limit = 0.0;  // MW per interval

    double hourly_cost(double p) const {
        return (cost_a * p + cost_b) * p + cost_c;
    }
    double marginal_cost(double p) const {
        return 2.0 * cost_a * p + cost_b;
    }
};

struct StorageUnit {
    std::string id;
    double e_capacity = 0.0;  // MWh
    double soc_min_frac = 0.25;
    double soc_max_frac = 0.85;
    double p_charge_max = 0.0;
    double p_discharge_max = 0.0;
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
    double soc_init_frac = 0.5;

    double energy_min() const {
        return soc_min_frac * e_capacity;
    }
    double energy_max() const {
        return soc_max_frac * e_capacity;
    }
    double energy_init() const {
        return soc_init_frac * e_capacity;
    }
};

struct RenewableSeries {
    std::string id;
    std::vector<double> available;  // MW per interval
};

/// Monitored line of a DC network. Flow is ptdf_row . (bus injections).
struct Line {
    int from_bus = 0;
    int to_bus = 0;
    double flow_limit = 0.0;
    std::vector<double> ptdf_row;
};

struct NetworkModel {
    int n_buses = 0;
    std::vector<Line> lines;
    std::map<std::string, int> unit_bus;
    int load_bus = 0;
};

struct GridModel {
    std::vector<Generator> generators;
    std::vector<StorageUnit> storage;
    std::vector<RenewableSeries> renewables;
    std::vector<double> load;  // MW per interval
    std::optional<NetworkModel> network;
    int horizon = 0;
    double interval_hours = 1.0;
    // Parsed and echoed; no objective uses it.
    double risk_lambda = 0.0;

    int bus_of(const std::string &unit_id) const;
    double total_p_max() const;
    double renewable_available(int interval) const;
};

/// Raised by load_grid / parse_grid. `field()` names the offending JSON path.
class GridError : public std::runtime_error {
   public:
    enum class Kind { io, parse, schema };

    GridError(Kind kind, std::string field, const std::string &message)
        : std::runtime_error(message), kind_(kind), field_(std::move(field)) {
    }

    Kind kind() const {
        return kind_;
    }
    const std::string &field() const {
        return field_;
    }

   private:
    Kind kind_;
    std::string field_;
};

GridModel load_grid(const std::filesystem::path &path);
GridModel parse_grid(std::string_view json_text);
/// Canonical JSON text of a grid (stable key order, 2-space indent).
std::string serialize_grid(const GridModel &grid);

/// One human-readable entry per violated invariant; empty iff the grid is valid.
std::vector<std::string> validate_grid(const GridModel &grid);

/// Uniform multiplicative forecast error: each interval is drawn from
/// [a(1-e), a(1+e)], clamped at 0. Pure in (series, error_frac, seed).
RenewableSeries scenario_sample(const RenewableSeries &series, double error_frac, std::uint64_t seed);

}  // namespace hqcd
