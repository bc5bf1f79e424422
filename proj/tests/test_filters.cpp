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

#include <random>

#include "doctest.h"
#include "sisamp/filters.hpp"
#include "test_util.hpp"

using namespace sisamp;
using sisamp::test::hat1d;
using sisamp::test::single;

namespace {

FilterBank point_bank(double offset = 0.0) { return FilterBank(1, 1, {PointEvaluation{0, {offset}}}); }
FilterBank averaging_bank(double width = 1.0) { return FilterBank(1, 1, {Convolution{{Profile::box_average({width})}}}); }

CoefficientArray random_coeffs(int dim, long long K, std::uint64_t seed) {
  CoefficientArray c(1, IndexBox(dim, K));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (std::size_t k = 0; k < c[0].size(); ++k) c[0][k] = {g(rng), g(rng)};
  return c;
}

}  // namespace

TEST_SUITE("filters") {
  TEST_CASE("bank validation and windows") {
    CHECK_ERROR_KIND(FilterBank(1, 1, {PointEvaluation{0, {0.0}}}, true), ErrorKind::ValidationError);
    CHECK_NOTHROW(FilterBank(1, 1, {Convolution{{Profile::box_average({1.0})}}}, true));
    CHECK_ERROR_KIND(FilterBank(1, 1, {PointEvaluation{1, {0.0}}}), ErrorKind::ValidationError);
    CHECK_ERROR_KIND(FilterBank(1, 1, {}), ErrorKind::ValidationError);
    CHECK_ERROR_KIND(FilterBank(1, 2, {Convolution{{Profile::box_average({1.0})}}}), ErrorKind::ShapeMismatch);
    const FilterBank avg = averaging_bank(0.5);
    CHECK(avg.window(0).lower[0] == doctest::Approx(-0.25));
    CHECK(avg.window(0).upper[0] == doctest::Approx(0.25));
    CHECK(avg.support_radius() == 1);
    CHECK(point_bank(0.5).window(0).lower[0] == doctest::Approx(-0.5));
    CHECK(point_bank(0.0).support_radius() == 0);
  }

  TEST_CASE("filtered generator values") {
    const auto hat = hat1d();
    CHECK(filtered_generator(point_bank(), 0, *hat, 0, RVec{0.0}).real() == doctest::Approx(1.0));
    CHECK(filtered_generator(point_bank(0.25), 0, *hat, 0, RVec{0.0}).real() == doctest::Approx(0.75));
    CHECK(filtered_generator(averaging_bank(), 0, *hat, 0, RVec{0.0}).real() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(filtered_generator(averaging_bank(), 0, *hat, 0, RVec{1.0}).real() == doctest::Approx(0.125).epsilon(1e-12));
  }

  TEST_CASE("filter samples of the hat") {
    const auto hat = hat1d();
    const FilterSamples s = generator_filter_samples(averaging_bank(), *hat, 0, 0, 3);
    CHECK_FALSE(s.truncated);
    CHECK(s.values.at(IVec{-1}).real() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(s.values.at(IVec{0}).real() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(s.values.at(IVec{1}).real() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(s.values.at(IVec{2}) == cplx{});

    const FilterSamples p0 = generator_filter_samples(point_bank(), *hat, 0, 0, 2);
    for (long long a = -2; a <= 2; ++a) CHECK(p0.values.at(IVec{a}) == cplx(a == 0 ? 1.0 : 0.0));
    const FilterSamples p1 = generator_filter_samples(point_bank(1.0), *hat, 0, 0, 2);
    for (long long a = -2; a <= 2; ++a) CHECK(p1.values.at(IVec{a}) == cplx(a == 1 ? 1.0 : 0.0));
  }

  TEST_CASE("truncation of the symbol") {
    const auto cubic = single(1, SplineKind::cubic);
    const FilterSamples s = generator_filter_samples(point_bank(), *cubic, 0, 0, 0);
    CHECK(s.truncated);
    CHECK(s.lost_max == doctest::Approx(1.0 / 6));
    CHECK_ERROR_KIND(generator_filter_samples(point_bank(), *cubic, 0, 0, 0, true), ErrorKind::TruncationLoss);
    CHECK_ERROR_KIND(build_symbols(point_bank(), *cubic, 0, true), ErrorKind::TruncationLoss);
    CHECK(build_symbols(point_bank(), *cubic, 0).truncated());
    CHECK_FALSE(build_symbols(point_bank(), *cubic, 1).truncated());
  }

  TEST_CASE("closed form symbols") {
    const auto hat = hat1d();
    const SymbolTable classical = build_symbols(point_bank(), *hat, 8);
    const SymbolTable shifted = build_symbols(point_bank(1.0), *hat, 8);
    const SymbolTable avg = build_symbols(averaging_bank(), *hat, 8);
    const SymbolTable avg_wide = build_symbols(averaging_bank(), *hat, 16);
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.93}) {
      const RVec xv{x};
      CHECK(std::abs(classical.evaluate(0, 0, xv) - 1.0) < 1e-14);
      CHECK(std::abs(shifted.evaluate(0, 0, xv) - std::polar(1.0, -kTwoPi * x)) < 1e-14);
      CHECK(std::abs(avg.evaluate(0, 0, xv) - (0.75 + 0.25 * std::cos(kTwoPi * x))) < 1e-12);
      CHECK(std::abs(avg.evaluate(0, 0, xv) - avg_wide.evaluate(0, 0, xv)) < 1e-15);
      CHECK(std::abs(avg.evaluate(0, 0, xv) - avg.evaluate(0, 0, RVec{x + 1.0})) < 1e-13);
    }
    CHECK(classical.terms(0, 0).size() == 1);
    CHECK(avg.ess_sup(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("symbols with several generators are periodic on each subcube") {
    auto gens = std::make_shared<const GeneratorSet>(
        1, 1, std::vector<Generator>{{{Profile::spline(1, SplineKind::hat)}}, {{Profile::spline(1, SplineKind::cubic)}}});
    const FilterBank bank(1, 1, {PointEvaluation{0, {0.25}}, Convolution{{Profile::box_average({0.5})}}});
    const SymbolTable t = build_symbols(bank, *gens, 6);
    CHECK(t.N() == 2);
    CHECK(t.s() == 2);
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (double x : {0.05, 0.2, 0.45}) CHECK(std::abs(t.evaluate(j, p, RVec{x}) - t.evaluate(j, p, RVec{x + 0.5})) < 1e-12);
    const GridFunction tab = t.tabulate(1, 1, 64);
    CHECK(tab.periodic());
    CHECK(std::abs(tab.values()[3] - t.evaluate(1, 1, tab.grid().point(3))) < 1e-13);
  }

  TEST_CASE("convolution and inner product forms agree on grid data") {
    const Grid g = Grid::with_resolution(Box::cube(1, -4.0, 4.0), 256);
    const GridFunction f = GridFunction::tabulate(
        g, [](std::span<const double> x) { return cplx(std::exp(-x[0] * x[0]), std::sin(3 * x[0])); }, Extension::zero);
    const std::vector<GridFunction> in{f};
    const FilterBank bank(1, 1, {Convolution{{Profile::spline({{SplineKind::hat, 0.3, 0.7}}, cplx(0.5, 1.0))}}});
    for (double t : {-1.0, 0.0, 0.61, 2.0}) {
      const RVec tv{t};
      CHECK(std::abs(apply_filter(bank, 0, in, tv) - apply_filter_inner(bank, 0, in, tv)) < 1e-10);
    }
    CHECK_ERROR_KIND(apply_filter(bank, 0, in, RVec{4.5}), ErrorKind::OutOfReliableRegion);
  }

  TEST_CASE("filters on space elements are exact and linear") {
    const auto hat = hat1d();
    const Grid grid = working_grid(*hat, 6, 64);
    const auto ca = random_coeffs(1, 4, 1), cb = random_coeffs(1, 4, 2);
    CoefficientArray cc(1, IndexBox(1, 4));
    const cplx a(0.5, -2.0), b(1.5, 0.0);
    for (std::size_t k = 0; k < cc[0].size(); ++k) cc[0][k] = a * ca[0][k] + b * cb[0][k];
    const SpaceElement fa = synthesize(hat, ca, grid), fb = synthesize(hat, cb, grid), fc = synthesize(hat, cc, grid);
    const FilterBank avg = averaging_bank();
    const std::vector<GridFunction> tab{fa.total_function(0)};
    for (double t : {-3.0, -0.4, 0.0, 2.25}) {
      const RVec tv{t};
      const cplx lhs = apply_filter(avg, 0, fc, tv);
      CHECK(std::abs(lhs - (a * apply_filter(avg, 0, fa, tv) + b * apply_filter(avg, 0, fb, tv))) < 1e-12);
      CHECK(std::abs(apply_filter(avg, 0, fa, tv) - apply_filter(avg, 0, tab, tv)) < 1e-4);
      cplx ref{};
      for (long long k = -4; k <= 4; ++k) ref += ca[0].at(IVec{k}) * filtered_generator(avg, 0, *hat, 0, RVec{t - k});
      CHECK(std::abs(apply_filter(avg, 0, fa, tv) - ref) < 1e-13);
    }
    CHECK(std::abs(apply_filter(point_bank(), 0, fa, RVec{2.0}) - ca[0].at(IVec{2})) < 1e-14);
  }

  TEST_CASE("window leaving the working box") {
    const auto hat = hat1d();
    CoefficientArray c(1, IndexBox(1, 2));
    c[0][4] = 1.0;  // alpha = 2, content on [1, 3]
    const Grid grid = Grid::with_resolution(Box::cube(1, -3.0, 3.0), 32);
    const SpaceElement f = synthesize(hat, c, grid);
    const FilterBank wide(1, 1, {Convolution{{Profile::box_average({2.0})}}});
    CHECK_ERROR_KIND(apply_filter(wide, 0, f, RVec{2.5}), ErrorKind::OutOfReliableRegion);
    CHECK(apply_filter(wide, 0, f, RVec{-2.5}) == cplx{});
    CHECK_NOTHROW(apply_filter(wide, 0, f, RVec{1.5}));
  }
}
