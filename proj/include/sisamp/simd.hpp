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

// Inner-loop kernels over interleaved complex<double> arrays. Every kernel
// has a scalar reference implementation and, on x86-64, an AVX2/FMA variant.
// The variant is chosen once at startup from CPUID; SISAMP_ISA=scalar in the
// environment (or set_active_isa) pins the reference path.

#include <complex>
#include <cstddef>
#include <span>

namespace sisamp::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

struct KernelTable {
  // sum_i a[i] * b[i]  (no conjugation)
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i a[i] * w[i]
  cplx (*dot_real)(const cplx* a, const double* w, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // sum_i |a[i]|^2
  double (*norm2)(const cplx* a, std::size_t n);
};

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dot_real(const cplx* a, const double* w, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
}  // namespace scalar

#if defined(SISAMP_HAVE_AVX2)
namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dot_real(const cplx* a, const double* w, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
}  // namespace avx2
#endif

bool isa_supported(Isa isa);
// Best ISA the running CPU supports and the build contains.
Isa detected_isa();
Isa active_isa();
// Throws std::invalid_argument if the ISA is not available.
void set_active_isa(Isa isa);
const KernelTable& kernels(Isa isa);
const KernelTable& kernels();

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}
inline cplx dot_real(std::span<const cplx> a, std::span<const double> w) {
  return kernels().dot_real(a.data(), w.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> a) { return kernels().norm2(a.data(), a.size()); }

}  // namespace sisamp::simd
