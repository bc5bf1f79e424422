// SPDX-License-Identifier: Apache-2.0
//
// sisamp: sampling and reconstruction in finitely generated shift-invariant spaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Scenario files: one JSON document describing a lattice, generators,
// filters and numeric parameters.

#include <filesystem>
#include <string>

#include "sisamp/pipeline.hpp"

namespace sisamp {

// Relative file references resolve against `base_dir`. Throws ParseError
// (with line or field) and ValidationError / UnsupportedRegime.
Model parse_scenario(const std::string& text, const std::filesystem::path& base_dir);
Model load_scenario(const std::filesystem::path& path);

}  // namespace sisamp
