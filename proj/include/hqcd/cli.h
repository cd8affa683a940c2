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

namespace hqcd {

/// Entry point of the `hqcd` tool. Returns 0 on success, 1 on a usage,
/// configuration or grid validation error, 2 on a runtime failure.
int cli_run(int argc, const char *const *argv);

}  // namespace hqcd
