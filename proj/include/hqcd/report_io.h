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

#include <filesystem>
#include <string>

#include "hqcd/harness.h"

namespace hqcd {

/// Full report as pretty-printed JSON, trailing newline included.
std::string report_to_json(const RunReport &report);
/// Inverse of report_to_json. Throws std::runtime_error on malformed input.
RunReport report_from_json(const std::string &text);

/// Writes report.json, sweep.csv and one trace_<method>_<seed>.csv per
/// variational run into `dir`, creating it if needed. Throws
/// std::runtime_error naming the path on I/O failure.
void write_report(const RunReport &report, const std::filesystem::path &dir);
/// Reads `dir`/report.json.
RunReport read_report(const std::filesystem::path &dir);

}  // namespace hqcd
