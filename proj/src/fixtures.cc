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

#include "hqcd/fixtures.h"

#include <stdexcept>

namespace hqcd {

namespace {

Generator generator(std::string id, double a, double b, double c, double p_min, double p_max, double ramp) {
    return {std::move(id), a, b, c, p_min, p_max, ramp};
}

GridModel toy2() {
    GridModel g;
    g.horizon = 1;
    g.load = {100.0};
    g.generators = {
        generator("G1", 0.02, 10.0, 0.0, 0.0, 100.0, 100.0),
        generator("G2", 0.04, 8.0, 0.0, 0.0, 80.0, 80.0),
    };
    return g;
}

// Three buses with the slack at bus 0. The single monitored line 0-2 carries
// 60 - g2/3 MW at a 90 MW load, so its 50 MW limit forces G2 up to 30 MW.
GridModel bus3() {
    GridModel g;
    g.horizon = 1;
    g.load = {90.0};
    g.generators = {
        generator("G1", 0.02, 10.0, 0.0, 0.0, 100.0, 100.0),
        generator("G2", 0.04, 12.0, 0.0, 0.0, 80.0, 80.0),
    };
    NetworkModel net;
    net.n_buses = 3;
    net.load_bus = 2;
    net.unit_bus = {{"G1", 0}, {"G2", 1}};
    net.lines.push_back({0, 2, 50.0, {0.0, -1.0 / 3.0, -2.0 / 3.0}});
    g.network = net;
    return g;
}

GridModel micro24() {
    GridModel g;
    g.horizon = 4;
    g.interval_hours = 1.0;
    g.load = {70.0, 80.0, 90.0, 100.0};
    g.generators = {
        generator("G1", 0.02, 10.0, 5.0, 10.0, 100.0, 40.0),
        generator("G2", 0.05, 14.0, 3.0, 0.0, 60.0, 30.0),
    };
    StorageUnit b;
    b.id = "B1";
    b.e_capacity = 40.0;
    b.soc_min_frac = 0.25;
    b.soc_max_frac = 0.85;
    b.p_charge_max = 10.0;
    b.p_discharge_max = 10.0;
    b.eta_charge = 0.95;
    b.eta_discharge = 0.95;
    b.soc_init_frac = 0.5;
    g.storage = {b};
    g.renewables = {{"PV1", {10.0, 40.0, 60.0, 15.0}}};
    return g;
}

}  // namespace

const std::vector<std::string> &fixture_names() {
    static const std::vector<std::string> names{"toy2", "bus3", "micro24"};
    return names;
}

GridModel gen_fixture(const std::string &name) {
    if (name == "toy2") {
        return toy2();
    }
    if (name == "bus3") {
        return bus3();
    }
    if (name == "micro24") {
        return micro24();
    }
    std::string valid;
    for (const auto &n : fixture_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw std::invalid_argument("unknown fixture '" + name + "'; valid names: " + valid);
}

}  // namespace hqcd
