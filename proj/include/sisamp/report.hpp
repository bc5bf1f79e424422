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

// JSON reports (schema "sisamp-report/1") and plain-text summaries.

#include <cstdint>
#include <iosfwd>

#include "json.hpp"
#include "sisamp/pipeline.hpp"
#include "sisamp/verify.hpp"

namespace sisamp {

inline constexpr const char* kReportSchema = "sisamp-report/1";

nlohmann::json scenario_json(const Model& model);
nlohmann::json analyze_json(Pipeline& pipe);
nlohmann::json reconstruct_json(Pipeline& pipe, const ReconstructionRun& run, bool forced, std::uint64_t seed);
nlohmann::json verify_json(Pipeline& pipe, const VerifyReport& rep);

void print_analyze_summary(std::ostream& os, Pipeline& pipe);
void print_reconstruct_summary(std::ostream& os, Pipeline& pipe, const ReconstructionRun& run);
void print_verify_summary(std::ostream& os, const VerifyReport& rep);

}  // namespace sisamp
