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

#include <memory>
#include <string>

#include "sisamp/common.hpp"
#include "sisamp/scenario.hpp"
#include "sisamp/sispace.hpp"

// Checks that `expr` throws sisamp::Error of the given kind.
#define CHECK_ERROR_KIND(expr, error_kind)                                   \
  do {                                                                       \
    bool sisamp_thrown_ = false;                                             \
    try {                                                                    \
      (void)(expr);                                                          \
    } catch (const ::sisamp::Error& sisamp_e_) {                             \
      sisamp_thrown_ = true;                                                 \
      CHECK_MESSAGE(sisamp_e_.kind() == (error_kind), sisamp_e_.what());     \
    }                                                                        \
    CHECK_MESSAGE(sisamp_thrown_, "expected " #error_kind " from " #expr);   \
  } while (0)

namespace sisamp::test {

inline std::shared_ptr<const GeneratorSet> single(int dim, SplineKind kind, RVec shift = {}) {
  return std::make_shared<const GeneratorSet>(dim, 1, std::vector<Generator>{{{Profile::spline(dim, kind, std::move(shift))}}});
}

inline std::shared_ptr<const GeneratorSet> hat1d() { return single(1, SplineKind::hat); }

// A golden scenario from the repository's scenarios/ directory.
inline Model golden(const std::string& file) { return load_scenario(std::string(SISAMP_SCENARIO_DIR) + "/" + file); }

}  // namespace sisamp::test
