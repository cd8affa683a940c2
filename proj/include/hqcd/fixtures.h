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

#include <string>
#include <vector>

#include "hqcd/grid_model.h"

namespace hqcd {

/// Names accepted by gen_fixture, in a stable order.
const std::vector<std::string> &fixture_names();

/// Bundled test grids: toy2, bus3 and micro24. Throws std::invalid_argument
/// listing the valid names for anything else.
GridModel gen_fixture(const std::string &name);

}  // namespace hqcd
