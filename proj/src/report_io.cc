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

#include "hqcd/report_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hqcd {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json opt_to_json(const std::optional<T> &v) {
    return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const Json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<T>();
}

Json to_json(const PenaltyConfig &p) {
    return Json{{"rho_balance", p.rho_balance}, {"rho_flow", p.rho_flow}, {"rho_bound", p.rho_bound}};
}

PenaltyConfig penalties_from(const Json &j) {
    return {j.at("rho_balance").get<double>(), j.at("rho_flow").get<double>(), j.at("rho_bound").get<double>()};
}

Json to_json(const ExperimentConfig &c) {
    const auto &o = c.optimizer;
    Json opt{
        {"learning_rate", o.learning_rate},
        {"max_iterations", o.max_iterations},
        {"tol_delta_j", o.tol_delta_j},
        {"patience", o.patience},
        {"optimizer", to_string(o.optimizer)},
        {"adam_beta1", o.adam_beta1},
        {"adam_beta2", o.adam_beta2},
        {"adam_epsilon", o.adam_epsilon},
        {"mode", to_string(o.mode)},
        {"seed", o.seed},
        {"n_layers", o.n_layers},
        {"bits_per_variable", o.encoding.bits_per_variable},
        {"max_qubits", o.encoding.max_qubits},
        {"encode_renewables", o.encoding.encode_renewables},
        {"feedback_eta", o.feedback_eta},
        {"rho_max", o.rho_max},
    };
    return Json{
        {"grid_path", c.grid_path},
        {"optimizer", opt},
        {"penalties", to_json(c.penalties)},
        {"nacf", {{"beta", c.nacf.beta}, {"enabled", c.nacf.enabled}, {"smoothing", c.nacf.smoothing}}},
        {"noise",
         {{"readout_flip_prob", c.noise.readout_flip_prob},
          {"n_shots", c.noise.n_shots},
          {"n_batches", c.noise.n_batches},
          {"exact", c.noise.exact}}},
        {"seeds", c.seeds},
        {"n_scenarios", c.n_scenarios},
        {"error_frac", c.error_frac},
    };
}

ExperimentConfig config_from(const Json &j) {
    ExperimentConfig c;
    c.grid_path = j.at("grid_path").get<std::string>();
    const Json &o = j.at("optimizer");
    auto &opt = c.optimizer;
    opt.learning_rate = o.at("learning_rate").get<double>();
    opt.max_iterations = o.at("max_iterations").get<int>();
    opt.tol_delta_j = o.at("tol_delta_j").get<double>();
    opt.patience = o.at("patience").get<int>();
    const auto kind = o.at("optimizer").get<std::string>();
    if (kind == "sgd") {
        opt.optimizer = OptimizerKind::sgd;
    } else if (kind == "adam") {
        opt.optimizer = OptimizerKind::adam;
    } else {
        throw std::runtime_error("unknown optimizer '" + kind + "'");
    }
    opt.adam_beta1 = o.at("adam_beta1").get<double>();
    opt.adam_beta2 = o.at("adam_beta2").get<double>();
    opt.adam_epsilon = o.at("adam_epsilon").get<double>();
    const auto mode = o.at("mode").get<std::string>();
    if (mode == "per_interval") {
        opt.mode = SolveMode::per_interval;
    } else if (mode == "full_horizon") {
        opt.mode = SolveMode::full_horizon;
    } else {
        throw std::runtime_error("unknown mode '" + mode + "'");
    }
    opt.seed = o.at("seed").get<std::uint64_t>();
    opt.n_layers = o.at("n_layers").get<int>();
    opt.encoding.bits_per_variable = o.at("bits_per_variable").get<int>();
    opt.encoding.max_qubits = o.at("max_qubits").get<int>();
    opt.encoding.encode_renewables = o.at("encode_renewables").get<bool>();
    opt.feedback_eta = o.at("feedback_eta").get<double>();
    opt.rho_max = o.at("rho_max").get<double>();
    c.penalties = penalties_from(j.at("penalties"));
    const Json &n = j.at("nacf");
    c.nacf = {n.at("beta").get<double>(), n.at("enabled").get<bool>(), n.at("smoothing").get<double>()};
    const Json &z = j.at("noise");
    c.noise.readout_flip_prob = z.at("readout_flip_prob").get<double>();
    c.noise.n_shots = z.at("n_shots").get<int>();
    c.noise.n_batches = z.at("n_batches").get<int>();
    c.noise.exact = z.at("exact").get<bool>();
    c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.n_scenarios = j.at("n_scenarios").get<int>();
    c.error_frac = j.at("error_frac").get<double>();
    return c;
}

Json to_json(const FeasibilityReport &r) {
    return Json{
        {"balance", r.balance},
        {"box", r.box},
        {"ramp", r.ramp},
        {"soc", r.soc},
        {"flow", r.flow},
        {"max_residual", r.max_residual},
    };
}

FeasibilityReport feasibility_from(const Json &j) {
    FeasibilityReport r;
    r.balance = j.at("balance").get<std::vector<double>>();
    r.box = j.at("box").get<std::vector<double>>();
    r.ramp = j.at("ramp").get<std::vector<double>>();
    r.soc = j.at("soc").get<std::vector<double>>();
    r.flow = j.at("flow").get<std::vector<double>>();
    r.max_residual = j.at("max_residual").get<double>();
    return r;
}

Json to_json(const TraceEntry &e) {
    return Json{
        {"block", e.block},
        {"iteration", e.iteration},
        {"j_noisy", e.j_noisy},
        {"j_exact", e.j_exact},
        {"grad_norm", e.grad_norm},
        {"penalties", to_json(e.pen)},
        {"weight_min", e.weight_min},
        {"weight_mean", e.weight_mean},
        {"candidate_cost", opt_to_json(e.candidate_cost)},
    };
}

TraceEntry trace_entry_from(const Json &j) {
    TraceEntry e;
    e.block = j.at("block").get<int>();
    e.iteration = j.at("iteration").get<int>();
    e.j_noisy = j.at("j_noisy").get<double>();
    e.j_exact = j.at("j_exact").get<double>();
    e.grad_norm = j.at("grad_norm").get<double>();
    e.pen = penalties_from(j.at("penalties"));
    e.weight_min = j.at("weight_min").get<double>();
    e.weight_mean = j.at("weight_mean").get<double>();
    e.candidate_cost = opt_from_json<double>(j.at("candidate_cost"));
    return e;
}

Json to_json(const DispatchSolution &s) {
    Json trace = Json::array();
    for (const auto &e : s.trace.entries) {
        trace.push_back(to_json(e));
    }
    return Json{
        {"method", s.method},
        {"dispatch",
         {{"first_interval", s.dispatch.first_interval},
          {"generation", s.dispatch.generation},
          {"storage", s.dispatch.storage},
          {"renewable", s.dispatch.renewable}}},
        {"total_cost", s.total_cost},
        {"feasibility", to_json(s.report)},
        {"iterations", s.iterations},
        {"expected_cost", opt_to_json(s.expected_cost)},
        {"trace", trace},
    };
}

DispatchSolution solution_from(const Json &j) {
    using Matrix = std::vector<std::vector<double>>;
    DispatchSolution s;
    s.method = j.at("method").get<std::string>();
    const Json &d = j.at("dispatch");
    s.dispatch.first_interval = d.at("first_interval").get<int>();
    s.dispatch.generation = d.at("generation").get<Matrix>();
    s.dispatch.storage = d.at("storage").get<Matrix>();
    s.dispatch.renewable = d.at("renewable").get<Matrix>();
    s.total_cost = j.at("total_cost").get<double>();
    s.report = feasibility_from(j.at("feasibility"));
    s.iterations = j.at("iterations").get<int>();
    s.expected_cost = opt_from_json<double>(j.at("expected_cost"));
    for (const auto &e : j.at("trace")) {
        s.trace.entries.push_back(trace_entry_from(e));
    }
    return s;
}

Json to_json(const MetricsBundle &m) {
    Json sv = nullptr;
    if (m.sv) {
        sv = Json{
            {"across_runs", opt_to_json(m.sv->across_runs)},
            {"within_run", opt_to_json(m.sv->within_run)},
            {"headline", m.sv->headline},
        };
    }
    Json delta = Json::object();
    for (const auto &[k, v] : m.delta_vs) {
        delta[k] = v;
    }
    return Json{
        {"tdc", m.tdc},
        {"rur", m.rur},
        {"sv", sv},
        {"cs",
         {{"iterations_to_convergence", m.cs.iterations_to_convergence},
          {"oscillation_score", m.cs.oscillation_score}}},
        {"delta_vs", delta},
        {"expected_cost", opt_to_json(m.expected_cost)},
    };
}

MetricsBundle metrics_from(const Json &j) {
    MetricsBundle m;
    m.tdc = j.at("tdc").get<double>();
    m.rur = j.at("rur").get<double>();
    const Json &sv = j.at("sv");
    if (!sv.is_null()) {
        SolutionVariance v;
        v.across_runs = opt_from_json<double>(sv.at("across_runs"));
        v.within_run = opt_from_json<double>(sv.at("within_run"));
        v.headline = sv.at("headline").get<double>();
        m.sv = v;
    }
    m.cs.iterations_to_convergence = j.at("cs").at("iterations_to_convergence").get<int>();
    m.cs.oscillation_score = j.at("cs").at("oscillation_score").get<double>();
    for (const auto &[k, v] : j.at("delta_vs").items()) {
        m.delta_vs[k] = v.get<double>();
    }
    m.expected_cost = opt_from_json<double>(j.at("expected_cost"));
    return m;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

}  // namespace

std::string report_to_json(const RunReport &report) {
    Json methods = Json::array();
    for (const auto &m : report.methods) {
        Json runs = Json::array();
        for (const auto &r : m.runs) {
            runs.push_back(to_json(r));
        }
        methods.push_back(Json{{"method", m.method}, {"seeds", m.seeds}, {"metrics", to_json(m.metrics)}, {"runs", runs}});
    }
    Json cells = Json::array();
    for (const auto &c : report.sweep_cells) {
        cells.push_back(Json{{"method", c.method}, {"level", c.level}, {"seed", c.seed}, {"final_cost", c.final_cost}});
    }
    Json rows = Json::array();
    for (const auto &r : report.sweep) {
        rows.push_back(Json{
            {"method", r.method},
            {"level", r.level},
            {"median", r.median},
            {"iqr", r.iqr},
            {"degradation", r.degradation},
        });
    }
    Json doc{
        {"config", to_json(report.config)},
        {"methods", methods},
        {"sweep_cells", cells},
        {"sweep", rows},
        {"notes", report.notes},
    };
    return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string &text) {
    try {
        Json doc = Json::parse(text);
        RunReport report;
        report.config = config_from(doc.at("config"));
        for (const auto &m : doc.at("methods")) {
            MethodResult mr;
            mr.method = m.at("method").get<std::string>();
            mr.seeds = m.at("seeds").get<std::vector<std::uint64_t>>();
            mr.metrics = metrics_from(m.at("metrics"));
            for (const auto &r : m.at("runs")) {
                mr.runs.push_back(solution_from(r));
            }
            report.methods.push_back(std::move(mr));
        }
        for (const auto &c : doc.at("sweep_cells")) {
            report.sweep_cells.push_back({
                c.at("method").get<std::string>(),
                c.at("level").get<double>(),
                c.at("seed").get<std::uint64_t>(),
                c.at("final_cost").get<double>(),
            });
        }
        for (const auto &r : doc.at("sweep")) {
            report.sweep.push_back({
                r.at("method").get<std::string>(),
                r.at("level").get<double>(),
                r.at("median").get<double>(),
                r.at("iqr").get<double>(),
                r.at("degradation").get<double>(),
            });
        }
        report.notes = doc.at("notes").get<std::vector<std::string>>();
        return report;
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
}

void write_report(const RunReport &report, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
    }
    write_file(dir / "report.json", report_to_json(report));

    std::string sweep = "method,level,seed,final_cost\n";
    for (const auto &c : report.sweep_cells) {
        sweep += c.method + "," + fmt(c.level) + "," + std::to_string(c.seed) + "," + fmt(c.final_cost) + "\n";
    }
    write_file(dir / "sweep.csv", sweep);

    for (const auto &m : report.methods) {
        for (size_t i = 0; i < m.runs.size() && i < m.seeds.size(); i++) {
            const auto &entries = m.runs[i].trace.entries;
            if (entries.empty()) {
                continue;
            }
            std::string csv = "iteration,J_noisy,J_exact,grad_norm\n";
            int it = 0;
            for (const auto &e : entries) {
                csv += std::to_string(++it) + "," + fmt(e.j_noisy) + "," + fmt(e.j_exact) + "," + fmt(e.grad_norm) + "\n";
            }
            write_file(dir / ("trace_" + m.method + "_" + std::to_string(m.seeds[i]) + ".csv"), csv);
        }
    }
}

RunReport read_report(const std::filesystem::path &dir) {
    const auto path = dir / "report.json";
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str());
}

}  // namespace hqcd
