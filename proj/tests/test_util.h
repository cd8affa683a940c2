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
#include <random>
#include <string>

#include "hqcd/fixtures.h"
#include "hqcd/grid_model.h"

namespace hqcd_test {

inline std::filesystem::path fixture_path(const std::string &name) {
    return std::filesystem::path(HQCD_FIXTURE_DIR) / (name + ".grid");
}

inline hqcd::GridModel fixture(const std::string &name) {
    return hqcd::load_grid(fixture_path(name));
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &tag) {
    auto dir = std::filesystem::temp_directory_path() / ("hqcd_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(0x5eed0000ull + salt);
}

}  // namespace hqcd_test
