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

#include "hqcd/grid_model.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hqcd/rng.h"
#include "json.hpp"

namespace hqcd {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int GridModel::bus_of(const std::string &unit_id) const {
    if (!network) {
        return 0;
    }
    auto it = network->unit_bus.find(unit_id);
    return it == network->unit_bus.end() ? -1 : it->second;
}

double GridModel::total_p_max() const {
    double total = 0.0;
    for (const auto &g : generators) {
        total += g.p_max;
    }
    return total;
}

double GridModel::renewable_available(int interval) const {
    double total = 0.0;
    for (const auto &r : renewables) {
        if (interval >= 0 && static_cast<size_t>(interval) < r.available.size()) {
            total += r.available[interval];
        }
    }
    return total;
}

namespace {

[[noreturn]] void schema_error(const std::string &field, const std::string &what) {
    throw GridError(GridError::Kind::schema, field, "grid schema error at '" + field + "': " + what);
}

const json &require(const json &obj, const char *key, const std::string &path) {
    std::string field = path.empty() ? key : path + "." + key;
    if (!obj.is_object()) {
        schema_error(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        schema_error(field, "missing required field");
    }
    return *it;
}

double as_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        schema_error(field, "expected a number");
    }
    return v.get<double>();
}

int as_int(const json &v, const std::string &field) {
    if (!v.is_number_integer()) {
        schema_error(field, "expected an integer");
    }
    return v.get<int>();
}

std::string as_string(const json &v, const std::string &field) {
    if (!v.is_string()) {
        schema_error(field, "expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> as_series(const json &v, const std::string &field) {
    if (!v.is_array()) {
        schema_error(field, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        out.push_back(as_number(v[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

double number_or(const json &obj, const char *key, const std::string &path, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return fallback;
    }
    return as_number(*it, path + "." + key);
}

double req_number(const json &obj, const char *key, const std::string &path) {
    return as_number(require(obj, key, path), path.empty() ? key : path + "." + key);
}

const json &optional_array(const json &root, const char *key) {
    static const json empty = json::array();
    auto it = root.find(key);
    if (it == root.end() || it->is_null()) {
        return empty;
    }
    if (!it->is_array()) {
        schema_error(key, "expected an array");
    }
    return *it;
}

Generator parse_generator(const json &j, const std::string &path) {
    Generator g;
    g.id = as_string(require(j, "id", path), path + ".id");
    g.cost_a = req_number(j, "cost_a", path);
    g.cost_b = req_number(j, "cost_b", path);
    g.cost_c = number_or(j, "cost_c", path, 0.0);
    g.p_min = number_or(j, "p_min", path, 0.0);
    g.p_max = req_number(j, "p_max", path);
    g.ramp_limit = number_or(j, "ramp_limit", path, g.p_max);
    return g;
}

StorageUnit parse_storage(const json &j, const std::string &path) {
    StorageUnit s;
    s.id = as_string(require(j, "id", path), path + ".id");
    s.e_capacity = req_number(j, "e_capacity", path);
    s.soc_min_frac = number_or(j, "soc_min_frac", path, 0.25);
    s.soc_max_frac = number_or(j, "soc_max_frac", path, 0.85);
    s.p_charge_max = req_number(j, "p_charge_max", path);
    s.p_discharge_max = req_number(j, "p_discharge_max", path);
    s.eta_charge = number_or(j, "eta_charge", path, 1.0);
    s.eta_discharge = number_or(j, "eta_discharge", path, 1.0);
    s.soc_init_frac = number_or(j, "soc_init_frac", path, 0.5);
    return s;
}

NetworkModel parse_network(const json &j) {
    const std::string path = "network";
    NetworkModel net;
    net.n_buses = as_int(require(j, "n_buses", path), "network.n_buses");
    net.load_bus = as_int(require(j, "load_bus", path), "network.load_bus");
    const json &lines = require(j, "lines", path);
    if (!lines.is_array()) {
        schema_error("network.lines", "expected an array");
    }
    for (size_t i = 0; i < lines.size(); i++) {
        std::string lp = "network.lines[" + std::to_string(i) + "]";
        Line line;
        line.from_bus = as_int(require(lines[i], "from_bus", lp), lp + ".from_bus");
        line.to_bus = as_int(require(lines[i], "to_bus", lp), lp + ".to_bus");
        line.flow_limit = req_number(lines[i], "flow_limit", lp);
        line.ptdf_row = as_series(require(lines[i], "ptdf_row", lp), lp + ".ptdf_row");
        net.lines.push_back(std::move(line));
    }
    const json &ub = require(j, "unit_bus", path);
    if (!ub.is_object()) {
        schema_error("network.unit_bus", "expected an object mapping unit id to bus index");
    }
    for (auto it = ub.begin(); it != ub.end(); ++it) {
        net.unit_bus[it.key()] = as_int(it.value(), "network.unit_bus." + it.key());
    }
    return net;
}

}  // namespace

GridModel parse_grid(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw GridError(GridError::Kind::parse, "", std::string("grid parse error: ") + e.what());
    }
    if (!root.is_object()) {
        throw GridError(GridError::Kind::parse, "", "grid parse error: top level must be a JSON object");
    }

    GridModel grid;
    grid.horizon = as_int(require(root, "horizon", ""), "horizon");
    grid.interval_hours = number_or(root, "interval_hours", "", 1.0);
    grid.risk_lambda = number_or(root, "risk_lambda", "", 0.0);
    grid.load = as_series(require(root, "load", ""), "load");

    const json &gens = require(root, "generators", "");
    if (!gens.is_array()) {
        schema_error("generators", "expected an array");
    }
    for (size_t i = 0; i < gens.size(); i++) {
        grid.generators.push_back(parse_generator(gens[i], "generators[" + std::to_string(i) + "]"));
    }
    const json &storage = optional_array(root, "storage");
    for (size_t i = 0; i < storage.size(); i++) {
        grid.storage.push_back(parse_storage(storage[i], "storage[" + std::to_string(i) + "]"));
    }
    const json &ren = optional_array(root, "renewables");
    for (size_t i = 0; i < ren.size(); i++) {
        std::string path = "renewables[" + std::to_string(i) + "]";
        RenewableSeries r;
        r.id = as_string(require(ren[i], "id", path), path + ".id");
        r.available = as_series(require(ren[i], "available", path), path + ".available");
        grid.renewables.push_back(std::move(r));
    }
    auto net = root.find("network");
    if (net != root.end() && !net->is_null()) {
        grid.network = parse_network(*net);
    }
    return grid;
}

GridModel load_grid(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw GridError(GridError::Kind::io, "", "cannot open grid file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_grid(buf.str());
    } catch (const GridError &e) {
        throw GridError(e.kind(), e.field(), path.string() + ": " + e.what());
    }
}

std::string serialize_grid(const GridModel &grid) {
    ordered_json root;
    root["horizon"] = grid.horizon;
    root["interval_hours"] = grid.interval_hours;
    root["risk_lambda"] = grid.risk_lambda;
    root["load"] = grid.load;
    root["generators"] = ordered_json::array();
    for (const auto &g : grid.generators) {
        ordered_json j;
        j["id"] = g.id;
        j["cost_a"] = g.cost_a;
        j["cost_b"] = g.cost_b;
        j["cost_c"] = g.cost_c;
        j["p_min"] = g.p_min;
        j["p_max"] = g.p_max;
        j["ramp_limit"] = g.ramp_limit;
        root["generators"].push_back(j);
    }
    root["storage"] = ordered_json::array();
    for (const auto &s : grid.storage) {
        ordered_json j;
        j["id"] = s.id;
        j["e_capacity"] = s.e_capacity;
        j["soc_min_frac"] = s.soc_min_frac;
        j["soc_max_frac"] = s.soc_max_frac;
        j["p_charge_max"] = s.p_charge_max;
        j["p_discharge_max"] = s.p_discharge_max;
        j["eta_charge"] = s.eta_charge;
        j["eta_discharge"] = s.eta_discharge;
        j["soc_init_frac"] = s.soc_init_frac;
        root["storage"].push_back(j);
    }
    root["renewables"] = ordered_json::array();
    for (const auto &r : grid.renewables) {
        ordered_json j;
        j["id"] = r.id;
        j["available"] = r.available;
        root["renewables"].push_back(j);
    }
    if (grid.network) {
        const auto &net = *grid.network;
        ordered_json j;
        j["n_buses"] = net.n_buses;
        j["load_bus"] = net.load_bus;
        j["lines"] = ordered_json::array();
        for (const auto &line : net.lines) {
            ordered_json l;
            l["from_bus"] = line.from_bus;
            l["to_bus"] = line.to_bus;
            l["flow_limit"] = line.flow_limit;
            l["ptdf_row"] = line.ptdf_row;
            j["lines"].push_back(l);
        }
        j["unit_bus"] = ordered_json::object();
        for (const auto &[id, bus] : net.unit_bus) {
            j["unit_bus"][id] = bus;
        }
        root["network"] = j;
    }
    return root.dump(2) + "\n";
}

std::vector<std::string> validate_grid(const GridModel &grid) {
    std::vector<std::string> out;
    auto fail = [&](const std::string &msg) {
        out.push_back(msg);
    };
    auto finite = [](double x) {
        return std::isfinite(x);
    };

    if (grid.horizon < 1) {
        fail("horizon must be >= 1 (got " + std::to_string(grid.horizon) + ")");
    }
    if (!(grid.interval_hours > 0.0) || !finite(grid.interval_hours)) {
        fail("interval_hours must be positive");
    }
    if (grid.load.size() != static_cast<size_t>(std::max(grid.horizon, 0))) {
        fail("load has " + std::to_string(grid.load.size()) + " entries, horizon is " + std::to_string(grid.horizon));
    }
    for (size_t t = 0; t < grid.load.size(); t++) {
        if (!(grid.load[t] >= 0.0) || !finite(grid.load[t])) {
            fail("load[" + std::to_string(t) + "] must be a finite non-negative value");
        }
    }
    if (grid.generators.empty()) {
        fail("grid has no generators");
    }

    std::set<std::string> ids;
    auto check_id = [&](const std::string &kind, const std::string &id) {
        if (id.empty()) {
            fail(kind + " with empty id");
        } else if (!ids.insert(id).second) {
            fail("duplicate unit id '" + id + "'");
        }
    };

    for (const auto &g : grid.generators) {
        check_id("generator", g.id);
        std::string who = "generator '" + g.id + "'";
        if (!finite(g.cost_a) || !finite(g.cost_b) || !finite(g.cost_c)) {
            fail(who + ": cost coefficients must be finite");
        }
        if (g.p_min < 0.0 || g.p_min > g.p_max || !finite(g.p_max)) {
            fail(who + ": requires 0 <= p_min <= p_max (p_min=" + std::to_string(g.p_min) +
                 ", p_max=" + std::to_string(g.p_max) + ")");
        }
        if (g.cost_a < 0.0) {
            fail(who + ": cost_a must be >= 0 for a convex cost");
        }
        if (!(g.ramp_limit > 0.0)) {
            fail(who + ": ramp_limit must be > 0");
        }
    }

    for (const auto &s : grid.storage) {
        check_id("storage", s.id);
        std::string who = "storage '" + s.id + "'";
        if (!(s.e_capacity > 0.0) || !finite(s.e_capacity)) {
            fail(who + ": e_capacity must be positive");
        }
        if (!(0.0 <= s.soc_min_frac && s.soc_min_frac < s.soc_max_frac && s.soc_max_frac <= 1.0)) {
            fail(who + ": requires 0 <= soc_min_frac < soc_max_frac <= 1");
        }
        if (!(s.eta_charge > 0.0 && s.eta_charge <= 1.0) || !(s.eta_discharge > 0.0 && s.eta_discharge <= 1.0)) {
            fail(who + ": efficiencies must lie in (0, 1]");
        }
        if (!(s.soc_min_frac <= s.soc_init_frac && s.soc_init_frac <= s.soc_max_frac)) {
            fail(who + ": soc_init_frac must lie within [soc_min_frac, soc_max_frac]");
        }
        if (!(s.p_charge_max >= 0.0) || !(s.p_discharge_max >= 0.0)) {
            fail(who + ": power limits must be >= 0");
        }
    }

    for (const auto &r : grid.renewables) {
        check_id("renewable", r.id);
        std::string who = "renewable '" + r.id + "'";
        if (r.available.size() != static_cast<size_t>(std::max(grid.horizon, 0))) {
            fail(who + ": available has " + std::to_string(r.available.size()) + " entries, horizon is " +
                 std::to_string(grid.horizon));
        }
        for (size_t t = 0; t < r.available.size(); t++) {
            if (!(r.available[t] >= 0.0) || !finite(r.available[t])) {
                fail(who + ": available[" + std::to_string(t) + "] must be >= 0");
            }
        }
    }

    if (grid.network) {
        const auto &net = *grid.network;
        if (net.n_buses < 1) {
            fail("network: n_buses must be >= 1");
        }
        auto valid_bus = [&](int b) {
            return b >= 0 && b < net.n_buses;
        };
        if (!valid_bus(net.load_bus)) {
            fail("network: load_bus " + std::to_string(net.load_bus) + " is not a valid bus");
        }
        for (size_t i = 0; i < net.lines.size(); i++) {
            const auto &line = net.lines[i];
            std::string who = "network line " + std::to_string(i);
            if (!(line.flow_limit > 0.0)) {
                fail(who + ": flow_limit must be > 0");
            }
            if (line.ptdf_row.size() != static_cast<size_t>(std::max(net.n_buses, 0))) {
                fail(who + ": ptdf_row has " + std::to_string(line.ptdf_row.size()) + " entries, expected " +
                     std::to_string(net.n_buses));
            }
            if (!valid_bus(line.from_bus) || !valid_bus(line.to_bus)) {
                fail(who + ": endpoint bus out of range");
            }
        }
        auto check_unit = [&](const std::string &id) {
            auto it = net.unit_bus.find(id);
            if (it == net.unit_bus.end()) {
                fail("network: unit '" + id + "' has no bus assignment");
            } else if (!valid_bus(it->second)) {
                fail("network: unit '" + id + "' maps to invalid bus " + std::to_string(it->second));
            }
        };
        for (const auto &g : grid.generators) {
            check_unit(g.id);
        }
        for (const auto &s : grid.storage) {
            check_unit(s.id);
        }
        for (const auto &r : grid.renewables) {
            check_unit(r.id);
        }
    }

    double cap = grid.total_p_max();
    for (size_t t = 0; t < grid.load.size(); t++) {
        double supply = cap + grid.renewable_available(static_cast<int>(t));
        if (grid.load[t] > supply) {
            fail("adequacy: load[" + std::to_string(t) + "]=" + std::to_string(grid.load[t]) +
                 " exceeds generator capacity plus renewable availability (" + std::to_string(supply) + ")");
        }
    }
    return out;
}

RenewableSeries scenario_sample(const RenewableSeries &series, double error_frac, std::uint64_t seed) {
    if (!(error_frac >= 0.0 && error_frac < 1.0)) {
        throw std::invalid_argument("scenario_sample: error_frac must lie in [0, 1)");
    }
    RenewableSeries out = series;
    Rng rng(derive_seed(seed));
    for (auto &v : out.available) {
        double u = rng.uniform();
        v = std::max(0.0, v * (1.0 + error_frac * (2.0 * u - 1.0)));
    }
    return out;
}

}  // namespace hqcd
