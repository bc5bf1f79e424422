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

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "sisamp/gridfn.hpp"
#include "sisamp/simd.hpp"
#include "sisamp/sispace.hpp"

using namespace sisamp;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_active_isa(saved); }
};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar kernels match naive loops") {
    std::mt19937_64 rng(1);
    const auto a = random_vec(13, rng), b = random_vec(13, rng);
    cplx ref{};
    for (std::size_t i = 0; i < a.size(); ++i) ref += a[i] * b[i];
    CHECK(std::abs(simd::scalar::dot(a.data(), b.data(), a.size()) - ref) < 1e-13);
    double n2 = 0.0;
    for (const auto& x : a) n2 += std::norm(x);
    CHECK(simd::scalar::norm2(a.data(), a.size()) == doctest::Approx(n2).epsilon(1e-14));
  }

  TEST_CASE("dispatch selects a supported variant and can be pinned") {
    IsaGuard guard;
    CHECK(simd::isa_supported(simd::Isa::scalar));
    CHECK(simd::isa_supported(simd::detected_isa()));
    simd::set_active_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const char* env = std::getenv("SISAMP_ISA");
    if (env != nullptr && std::string(env) == "scalar") CHECK(guard.saved == simd::Isa::scalar);
#if !defined(SISAMP_HAVE_AVX2)
    CHECK_THROWS_AS(simd::set_active_isa(simd::Isa::avx2), std::invalid_argument);
#endif
  }

#if defined(SISAMP_HAVE_AVX2)
  TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!simd::isa_supported(simd::Isa::avx2)) return;
    std::mt19937_64 rng(42);
    for (std::size_t n = 0; n < 70; ++n) {
      for (std::size_t offset = 0; offset < 2; ++offset) {
        const auto a = random_vec(n + offset, rng), b = random_vec(n + offset, rng);
        std::vector<double> w(n + offset);
        for (auto& x : w) x = std::uniform_real_distribution<double>(-1, 1)(rng);
        const cplx* pa = a.data() + offset;
        const cplx* pb = b.data() + offset;
        const double scale = 1.0 + std::sqrt(static_cast<double>(n));

        CHECK(std::abs(simd::avx2::dot(pa, pb, n) - simd::scalar::dot(pa, pb, n)) <= 1e-13 * scale);
        CHECK(std::abs(simd::avx2::dot_real(pa, w.data() + offset, n) - simd::scalar::dot_real(pa, w.data() + offset, n)) <=
              1e-13 * scale);
        CHECK(std::abs(simd::avx2::norm2(pa, n) - simd::scalar::norm2(pa, n)) <= 1e-13 * scale * scale);

        std::vector<cplx> y1(b.begin() + static_cast<std::ptrdiff_t>(offset), b.end()), y2 = y1;
        const cplx alpha(0.3, -1.7);
        simd::avx2::axpy(alpha, pa, y1.data(), n);
        simd::scalar::axpy(alpha, pa, y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14);
      }
    }
  }

  TEST_CASE("library results do not depend on the active variant") {
    if (!simd::isa_supported(simd::Isa::avx2)) return;
    IsaGuard guard;
    auto gens = std::make_shared<const GeneratorSet>(1, 1, std::vector<Generator>{{{Profile::spline(1, SplineKind::cubic)}}});
    CoefficientArray c(1, IndexBox(1, 5));
    for (std::size_t k = 0; k < c[0].size(); ++k) c[0][k] = cplx(std::cos(1.0 + k), std::sin(0.3 * k));
    const Grid grid = working_grid(*gens, 5, 64);
    const GridFunction g = GridFunction::tabulate(Grid::with_resolution(Box::cube(1, 0, 1), 128),
                                                  [](std::span<const double> x) { return cplx(std::cos(6 * x[0]), x[0]); },
                                                  Extension::periodic);

    simd::set_active_isa(simd::Isa::scalar);
    const auto f0 = synthesize(gens, c, grid);
    const auto s0 = grid_spectrum(g, 1, IndexBox(1, 20));
    simd::set_active_isa(simd::Isa::avx2);
    const auto f1 = synthesize(gens, c, grid);
    const auto s1 = grid_spectrum(g, 1, IndexBox(1, 20));

    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(f0.total(0)[i] - f1.total(0)[i]) < 1e-13);
    for (std::size_t k = 0; k < s0.size(); ++k) CHECK(std::abs(s0[k] - s1[k]) < 1e-13);
    CHECK(f0.norm2() == doctest::Approx(f1.norm2()).epsilon(1e-13));
  }
#endif
}
