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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sisamp {

using cplx = std::complex<double>;
using IVec = std::vector<long long>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorKind {
  SingularMatrix,
  DomainMismatch,
  UnsupportedRegime,
  BoxTooSmall,
  DegenerateGenerators,
  OutOfReliableRegion,
  TruncationLoss,
  NotLeftInvertible,
  ShapeMismatch,
  MissingProvenance,
  ParseError,
  ValidationError,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. The kind is what callers dispatch on; the
/// message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Throws UnsupportedRegime unless d == 1 or N == 1.
void check_regime(int dim, int N);

}  // namespace sisamp
