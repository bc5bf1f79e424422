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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "sisamp/common.hpp"
#include "sisamp/simd.hpp"

namespace sisamp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::DegenerateGenerators: return "DegenerateGenerators";
    case ErrorKind::OutOfReliableRegion: return "OutOfReliableRegion";
    case ErrorKind::TruncationLoss: return "TruncationLoss";
    case ErrorKind::NotLeftInvertible: return "NotLeftInvertible";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MissingProvenance: return "MissingProvenance";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

void check_regime(int dim, int N) {
  if (dim < 1 || N < 1) throw Error(ErrorKind::ValidationError, "dimension and N must be positive");
  if (dim != 1 && N != 1)
    throw Error(ErrorKind::UnsupportedRegime,
                "subcube decomposition needs d == 1 or N == 1 (got d=" + std::to_string(dim) +
                    ", N=" + std::to_string(N) + ")");
}

}  // namespace sisamp

namespace sisamp::simd {

namespace {

constexpr KernelTable kScalar{&scalar::dot, &scalar::dot_real, &scalar::axpy, &scalar::norm2};
#if defined(SISAMP_HAVE_AVX2)
constexpr KernelTable kAvx2{&avx2::dot, &avx2::dot_real, &avx2::axpy, &avx2::norm2};
#endif

bool cpu_has_avx2() {
#if defined(SISAMP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  const char* env = std::getenv("SISAMP_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa detected_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument(std::string("ISA not available: ") + to_string(isa));
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels(Isa isa) {
#if defined(SISAMP_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!isa_supported(Isa::avx2)) throw std::invalid_argument("ISA not available: avx2");
    return kAvx2;
  }
#else
  if (isa == Isa::avx2) throw std::invalid_argument("ISA not available: avx2");
#endif
  return kScalar;
}

const KernelTable& kernels() { return kernels(active_isa()); }

}  // namespace sisamp::simd
