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

#include <sstream>

#include "doctest.h"
#include "sisamp/gridfn.hpp"

using namespace sisamp;

TEST_SUITE("gridfn") {
  TEST_CASE("grid layout") {
    const Grid g = Grid::with_resolution(Box::cube(2, -1.0, 1.0), 8);
    CHECK(g.counts() == std::vector<std::size_t>{16, 16});
    CHECK(g.spacing(0) == doctest::Approx(0.125));
    CHECK(g.coord(0, 0) == doctest::Approx(-1.0 + 0.0625));
    CHECK(g.cell_volume() == doctest::Approx(1.0 / 64));
    const RVec p = g.point(17);
    CHECK(p[0] == doctest::Approx(g.coord(0, 1)));
    CHECK(p[1] == doctest::Approx(g.coord(1, 1)));
  }

  TEST_CASE("midpoint quadrature") {
    const Grid g = Grid::with_resolution(Box::cube(1, 0.0, 1.0), 256);
    const auto f = GridFunction::tabulate(g, [](std::span<const double> x) { return cplx(x[0] * x[0], 0.0); });
    CHECK(quadrature(f).real() == doctest::Approx(1.0 / 3).epsilon(1e-5));
    const auto one = GridFunction::tabulate(Grid::with_resolution(Box::cube(2, 0.0, 2.0), 16),
                                            [](std::span<const double>) { return cplx(1.0, 0.0); });
    CHECK(quadrature(one).real() == doctest::Approx(4.0));
    CHECK(quadrature(one, Box::cube(2, 0.0, 1.0)).real() == doctest::Approx(1.0));
  }

  TEST_CASE("spectrum and exponential synthesis are inverse on trigonometric data") {
    for (int N : {1, 3}) {
      const Box box = subcube(1, N, N - 1);
      const Grid g = Grid::with_resolution(box, 64 * N);
      IndexedArray c(IndexBox(1, 4));
      c[0] = {0.5, -1.0};
      c[3] = {2.0, 0.25};
      c[8] = {-0.75, 0.0};
      const GridFunction f(g, evaluate_exponentials(c, N, g), Extension::periodic);
      const IndexedArray back = grid_spectrum(f, N, IndexBox(1, 4));
      for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(back[k] - c[k]) < 1e-12);
      CHECK(f.norm2() == doctest::Approx(c.norm2()).epsilon(1e-12));
    }
    const Grid g2 = Grid::with_resolution(Box::cube(2, 0.0, 1.0), 32);
    IndexedArray c2(IndexBox(2, 2));
    c2.ref(IVec{1, -2}) = {1.0, 1.0};
    c2.ref(IVec{0, 0}) = 3.0;
    const GridFunction f2(g2, evaluate_exponentials(c2, 1, g2), Extension::periodic);
    const auto back2 = grid_spectrum(f2, 1, IndexBox(2, 2));
    for (std::size_t k = 0; k < c2.size(); ++k) CHECK(std::abs(back2[k] - c2[k]) < 1e-12);
  }

  TEST_CASE("exp basis normalization") {
    const RVec x{0.25};
    const IVec a{1};
    CHECK(std::abs(exp_basis(a, 2, x) - std::sqrt(2.0) * std::polar(1.0, -kTwoPi * 2 * 0.25)) < 1e-14);
  }

  TEST_CASE("separable transform matches a direct sum") {
    const std::vector<cplx> v{1.0, 2.0, {0.0, 1.0}, -1.0, 0.5, 3.0};  // shape 2 x 3
    std::vector<std::vector<cplx>> t{{1.0, 2.0}, {1.0, 0.0, -1.0, {0.0, 1.0}, 2.0, 1.0}};  // 1x2, 2x3
    const auto out = separable_transform(v, {2, 3}, t, {1, 2});
    for (std::size_t b = 0; b < 2; ++b) {
      cplx ref{};
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) ref += t[0][i] * t[1][b * 3 + j] * v[i * 3 + j];
      CHECK(std::abs(out[b] - ref) < 1e-14);
    }
  }

  TEST_CASE("periodic and multilinear evaluation") {
    const Grid g = Grid::with_resolution(Box::cube(1, 0.0, 1.0), 128);
    auto fn = [](std::span<const double> x) { return cplx(std::cos(kTwoPi * x[0]), 0.0); };
    const auto per = GridFunction::tabulate(g, fn, Extension::periodic);
    const RVec x{1.3};
    CHECK(per.evaluate(x).real() == doctest::Approx(std::cos(kTwoPi * 0.3)).epsilon(1e-6));
    const auto lin = GridFunction::tabulate(g, fn, Extension::zero);
    const RVec y{0.3};
    CHECK(lin.evaluate(y).real() == doctest::Approx(std::cos(kTwoPi * 0.3)).epsilon(1e-3));
    CHECK(lin.evaluate(x) == cplx{});
    const auto none = GridFunction::tabulate(g, fn, Extension::none);
    CHECK_THROWS_AS(none.evaluate(x), Error);
  }

  TEST_CASE("patch functions") {
    const auto F = PatchFunction::tabulate(1, 2, 128, [](std::span<const double> x) { return cplx(x[0] < 0.5 ? 1.0 : 2.0); });
    CHECK(F.pieces() == 2);
    CHECK(F.evaluate(RVec{0.2}).real() == doctest::Approx(1.0));
    CHECK(F.evaluate(RVec{0.7}).real() == doctest::Approx(2.0));
    CHECK(F.norm2() == doctest::Approx(0.5 * 1 + 0.5 * 4));
    const auto c0 = fourier_coefficients(F, 0, 3);
    CHECK(std::abs(c0.at(IVec{0}) - cplx(std::sqrt(2.0) * 0.5)) < 1e-12);
    CHECK(std::abs(c0.at(IVec{1})) < 1e-12);
    CHECK_THROWS_AS(fourier_coefficients(F, 2, 3), Error);
    CHECK_THROWS_AS(PatchFunction::tabulate(2, 2, 16, [](std::span<const double>) { return cplx{}; }), Error);
  }

  TEST_CASE("vectorization preserves the norm") {
    const SamplingLattice q(IntMatrix(2, {1, 1, 1, -1}), 1);
    const auto F = PatchFunction::tabulate(2, 1, 64, [](std::span<const double> x) {
      return cplx(std::sin(kTwoPi * x[0]) + 0.5, std::cos(kTwoPi * (x[0] + 2 * x[1])));
    });
    const CellGrid cg(q, 64);
    const PatchVector v = vectorize_patch(F, 0, q, cg);
    CHECK(v.components.size() == 2);
    CHECK(v.norm2() == doctest::Approx(F.norm2()).epsilon(1e-4));

    const SamplingLattice l(IntMatrix(1, {3}), 2);
    const auto G = PatchFunction::tabulate(1, 2, 256, [](std::span<const double> x) { return cplx(std::exp(x[0]), 0.0); });
    const CellGrid cl(l, 128);
    for (std::size_t p = 0; p < 2; ++p)
      CHECK(vectorize_patch(G, p, l, cl).norm2() == doctest::Approx(G.piece_norm2(p)).epsilon(1e-4));
  }

  TEST_CASE("csv round trip") {
    const Grid g = Grid::with_resolution(Box{{-1.0, 0.0}, {1.0, 0.5}}, 8);
    const auto f = GridFunction::tabulate(
        g, [](std::span<const double> x) { return cplx(x[0] / 3.0, x[1] * 1e-7); }, Extension::zero);
    std::stringstream ss;
    write_csv(f, ss);
    const GridFunction back = read_csv(ss);
    CHECK(back.grid().same_layout(g));
    CHECK(back.extension() == Extension::zero);
    CHECK(back.values() == f.values());
    std::stringstream bad("# dim,1\n# lower,0\n# upper,1\n# counts,2\nindex,re,im\n0,1,zz\n");
    CHECK_THROWS_AS(read_csv(bad), Error);
  }
}
