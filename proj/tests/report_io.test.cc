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

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "hqcd/fixtures.h"
#include "test_util.h"

using namespace hqcd;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunReport sample_report() {
    GridModel g = gen_fixture("micro24");
    ExperimentConfig cfg;
    cfg.grid_path = "micro24.grid";
    cfg.seeds = {7};
    cfg.optimizer.max_iterations = 6;
    cfg.noise.n_shots = 64;
    cfg.noise.readout_flip_prob = 0.03;
    RunReport r = run_methods(g, cfg, {Method::hqcd, Method::scenario});
    r.sweep_cells = {{"hqcd", 0.05, 7, 1234.5}, {"plain", 0.1, 8, 1.0 / 3.0}};
    r.sweep = {{"hqcd", 0.05, 1234.5, 0.25, 0.0}};
    return r;
}

}  // namespace

TEST(ReportIo, json_round_trip) {
    RunReport r = sample_report();
    ASSERT_EQ(report_from_json(report_to_json(r)), r);
}

TEST(ReportIo, write_read_round_trip_and_files) {
    RunReport r = sample_report();
    auto dir = hqcd_test::scratch_dir("report_rt");
    write_report(r, dir);
    ASSERT_EQ(read_report(dir), r);
    ASSERT_TRUE(std::filesystem::exists(dir / "trace_hqcd_7.csv"));
    ASSERT_FALSE(std::filesystem::exists(dir / "trace_scenario_7.csv"));

    std::string trace = slurp(dir / "trace_hqcd_7.csv");
    ASSERT_EQ(trace.substr(0, trace.find('\n')), "iteration,J_noisy,J_exact,grad_norm");
    size_t lines = std::count(trace.begin(), trace.end(), '\n');
    ASSERT_EQ(lines, r.methods[0].runs[0].trace.size() + 1);

    std::string sweep = slurp(dir / "sweep.csv");
    ASSERT_EQ(sweep, "method,level,seed,final_cost\nhqcd,0.050000000000000003,7,1234.5\n"
                     "plain,0.10000000000000001,8,0.33333333333333331\n");
}

TEST(ReportIo, empty_sweep_header_only) {
    RunReport r;
    auto dir = hqcd_test::scratch_dir("report_empty");
    write_report(r, dir);
    ASSERT_EQ(slurp(dir / "sweep.csv"), "method,level,seed,final_cost\n");
    ASSERT_EQ(read_report(dir), r);
}

TEST(ReportIo, writes_are_byte_identical) {
    RunReport r = sample_report();
    auto a = hqcd_test::scratch_dir("report_a");
    auto b = hqcd_test::scratch_dir("report_b");
    write_report(r, a);
    write_report(r, b);
    for (const auto &entry : std::filesystem::directory_iterator(a)) {
        ASSERT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    }
}

TEST(ReportIo, errors_name_paths) {
    try {
        read_report("/nonexistent/dir");
        FAIL();
    } catch (const std::runtime_error &e) {
        ASSERT_NE(std::string(e.what()).find("/nonexistent/dir"), std::string::npos);
    }
    ASSERT_THROW(report_from_json("{}"), std::runtime_error);
}
