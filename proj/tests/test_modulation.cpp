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

#include "doctest.h"
#include "sisamp/modulation.hpp"
#include "test_util.hpp"

using namespace sisamp;

namespace {

SymbolSource constant_one() {
  return SymbolSource::from_functions(1, 1, 1, [](std::size_t, std::size_t, std::span<const double>) { return cplx(1.0); });
}

SymbolSource unimodular() {
  return SymbolSource::from_functions(1, 1, 1, [](std::size_t, std::size_t, std::span<const double> x) {
    return std::polar(1.0, -kTwoPi * x[0]);
  });
}

SymbolSource averaging() {
  return SymbolSource::from_functions(1, 1, 1, [](std::size_t, std::size_t, std::span<const double> x) {
    return cplx(0.75 + 0.25 * std::cos(kTwoPi * x[0]));
  });
}

// Rows 1 and e^{-2 pi i x}; with M = [2] the columns are orthogonal, G*G = 2I.
SymbolSource orthogonal_pair() {
  return SymbolSource::from_functions(1, 1, 2, [](std::size_t j, std::size_t, std::span<const double> x) {
    return j == 0 ? cplx(1.0) : std::polar(1.0, -kTwoPi * x[0]);
  });
}

SamplingLattice lattice1d(long long M, int N = 1) { return SamplingLattice(IntMatrix(1, {M}), N); }

}  // namespace

TEST_SUITE("modulation") {
  TEST_CASE("symbol sources fold onto the period") {
    const SymbolSource g = unimodular();
    CHECK(std::abs(g(0, 0, RVec{1.25}) - g(0, 0, RVec{0.25})) < 1e-14);
    CHECK(std::abs(g(0, 0, RVec{-0.75}) - g(0, 0, RVec{0.25})) < 1e-14);

    const FilterBank bank(1, 1, {PointEvaluation{0, {1.0}}});
    auto table = std::make_shared<const SymbolTable>(build_symbols(bank, *test::hat1d(), 4));
    const SymbolSource t = SymbolSource::from_table(table);
    CHECK(t.s() == 1);
    for (double x : {0.1, 0.6}) CHECK(std::abs(t(0, 0, RVec{x}) - g(0, 0, RVec{x})) < 1e-13);
  }

  TEST_CASE("modulation matrix entries") {
    const SamplingLattice lat = lattice1d(2);
    const Eigen::MatrixXcd G = modulation_matrix_at(unimodular(), lat, 0, RVec{0.1});
    REQUIRE(G.rows() == 1);
    REQUIRE(G.cols() == 2);
    const cplx e = std::polar(1.0, -kTwoPi * 0.1);
    CHECK(std::abs(G(0, 0) - e) < 1e-14);
    CHECK(std::abs(G(0, 1) + e) < 1e-14);

    const ModulationField one(constant_one(), lattice1d(1), 16);
    CHECK(one.pieces() == 1);
    CHECK(one.piece(0).points() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(one.piece(0).at(i, 0, 0) == cplx(1.0));
  }

  TEST_CASE("spectral bounds") {
    const SpectralBounds one = spectral_bounds(ModulationField(constant_one(), lattice1d(1), 32));
    CHECK(one.A_G == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.B_G == doctest::Approx(1.0).epsilon(1e-12));

    const SpectralBounds row = spectral_bounds(ModulationField(unimodular(), lattice1d(2), 32));
    CHECK(std::abs(row.A_G) < 1e-12);
    CHECK(row.B_G == doctest::Approx(2.0).epsilon(1e-12));

    const SpectralBounds pair = spectral_bounds(ModulationField(orthogonal_pair(), lattice1d(2), 32));
    CHECK(pair.A_G == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pair.B_G == doctest::Approx(2.0).epsilon(1e-12));

    const SpectralBounds avg = spectral_bounds(ModulationField(averaging(), lattice1d(1), 128));
    CHECK(avg.A_G == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(avg.B_G == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(avg.argmin_y[0] - 0.5) < 1.0 / 128);
    CHECK(std::abs(avg.argmax_y[0]) < 1.0 / 128);
  }

  TEST_CASE("refinement converges for smooth symbols") {
    const RefinedBounds r = spectral_bounds_refined(averaging(), lattice1d(1), 64);
    CHECK(r.converged);
    CHECK(r.fine.A_G <= r.coarse.A_G + 1e-12);
    CHECK(r.change_A < 0.01);
  }

  TEST_CASE("completeness") {
    CHECK(completeness_test(ModulationField(constant_one(), lattice1d(1), 16)).complete);
    const Completeness row = completeness_test(ModulationField(unimodular(), lattice1d(2), 16));
    CHECK_FALSE(row.complete);
    CHECK(row.deficient_points == 16);
    CHECK(completeness_test(ModulationField(averaging(), lattice1d(1), 128)).complete);
    const Completeness pair = completeness_test(ModulationField(orthogonal_pair(), lattice1d(2), 16));
    CHECK(pair.complete);
    CHECK(pair.min_sigma_ratio == doctest::Approx(1.0));
  }

  TEST_CASE("classification") {
    auto fixture = [](double A, double B, std::size_t s, std::size_t m, bool complete) {
      SpectralBounds b;
      b.A_G = A;
      b.B_G = B;
      Completeness c;
      c.complete = complete;
      return classify(b, s, m, c);
    };
    const auto one = fixture(1.0, 1.0, 1, 1, true);
    CHECK(one.complete);
    CHECK(one.bessel);
    CHECK(one.frame);
    CHECK(one.riesz);
    CHECK(one.bessel_bound == 1.0);

    const auto row = fixture(0.0, 2.0, 1, 2, false);
    CHECK(row.bessel);
    CHECK(row.bessel_bound == doctest::Approx(1.0));
    CHECK_FALSE(row.frame);
    CHECK_FALSE(row.riesz);

    const auto avg = fixture(0.25, 1.0, 1, 1, true);
    CHECK(avg.frame);
    CHECK(avg.riesz);
    CHECK(avg.frame_lower == doctest::Approx(0.25));
    CHECK(avg.frame_upper == doctest::Approx(1.0));

    const auto over = fixture(2.0, 2.0, 2, 1, true);
    CHECK(over.frame);
    CHECK_FALSE(over.riesz);
    CHECK_FALSE(fixture(1.0, 1e13, 1, 1, true).bessel);
  }

  TEST_CASE("field application matches the identity on the cell grid") {
    const SamplingLattice lat = lattice1d(2);
    const ModulationField field(orthogonal_pair(), lat, 64);
    const auto F = PatchFunction::tabulate(1, 1, 256, [](std::span<const double> x) { return cplx(std::cos(kTwoPi * x[0]), x[0]); });
    const PatchVector v = vectorize_patch(F, 0, lat, field.grid());
    const auto out = field.apply(0, v);
    REQUIRE(out.size() == 2);
    double energy = 0.0;
    for (const auto& row : out)
      for (const auto& z : row) energy += std::norm(z);
    energy *= field.grid().weight();
    CHECK(energy == doctest::Approx(2.0 * v.norm2()).epsilon(1e-12));
  }

  TEST_CASE("regime checks") {
    CHECK_ERROR_KIND(SymbolSource::from_functions(2, 2, 1, [](std::size_t, std::size_t, std::span<const double>) { return cplx{}; }),
                     ErrorKind::UnsupportedRegime);
  }
}
