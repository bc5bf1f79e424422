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
#include "sisamp/pipeline.hpp"
#include "sisamp/reconstruction.hpp"
#include "test_util.hpp"

using namespace sisamp;
using sisamp::test::golden;
using sisamp::test::hat1d;

namespace {

SymbolSource scalar_symbol(std::function<cplx(double)> g) {
  return SymbolSource::from_functions(1, 1, 1, [g](std::size_t, std::size_t, std::span<const double> x) { return g(x[0]); });
}

DualField scalar_dual(const SymbolSource& g, std::size_t res = 64) {
  const SamplingLattice lat(IntMatrix(1, {1}), 1);
  const ModulationField field(g, lat, res);
  return DualField(g, lat, field, spectral_bounds(field).A_G);
}

}  // namespace

TEST_SUITE("reconstruction") {
  TEST_CASE("pseudo-inverse") {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = 1.0;
    CHECK(std::abs(pseudo_inverse(one)(0, 0) - 1.0) < 1e-15);
    Eigen::MatrixXcd two(1, 1);
    two(0, 0) = 2.0;
    CHECK(std::abs(pseudo_inverse(two)(0, 0) - 0.5) < 1e-15);

    const cplx e = std::polar(1.0, -0.7);
    Eigen::MatrixXcd G(2, 2);
    G << 1.0, 1.0, e, -e;
    const Eigen::MatrixXcd P = pseudo_inverse(G);
    CHECK((P - 0.5 * G.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((pseudo_inverse(G, true) - P).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::MatrixXcd tall(3, 2);
    tall << 1.0, 2.0, 0.0, 1.0, cplx(0, 1), 1.0;
    CHECK((pseudo_inverse(tall) * tall - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);

    Eigen::MatrixXcd wide(1, 2);
    wide << e, -e;
    const Eigen::MatrixXcd mp = pseudo_inverse(wide, true);
    CHECK((wide * mp * wide - wide).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("dual rows") {
    const DualField one = scalar_dual(scalar_symbol([](double) { return cplx(1.0); }));
    CHECK(one.residual() < 1e-15);
    CHECK(std::abs(one.row_at(0, RVec{0.3})[0] - 1.0) < 1e-15);

    const DualField uni = scalar_dual(scalar_symbol([](double x) { return std::polar(1.0, -kTwoPi * x); }));
    for (double x : {0.0, 0.2, 0.77}) CHECK(std::abs(uni.row_at(0, RVec{x})[0] - std::polar(1.0, kTwoPi * x)) < 1e-14);
    CHECK(uni.residual() < 1e-14);

    const DualField avg = scalar_dual(scalar_symbol([](double x) { return cplx(0.75 + 0.25 * std::cos(kTwoPi * x)); }), 128);
    CHECK(std::abs(avg.row_at(0, RVec{0.5})[0] - 2.0) < 1e-13);
    CHECK(avg.max_modulus() == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(avg.residual() < 1e-12);
  }

  TEST_CASE("rank-deficient symbols have no left inverse") {
    const SamplingLattice lat(IntMatrix(1, {2}), 1);
    const SymbolSource g = scalar_symbol([](double x) { return std::polar(1.0, -kTwoPi * x); });
    const ModulationField field(g, lat, 32);
    CHECK_ERROR_KIND(DualField(g, lat, field, spectral_bounds(field).A_G), ErrorKind::NotLeftInvertible);
    const DualField forced(g, lat, field, spectral_bounds(field).A_G, 1e-8, true);
    CHECK(forced.forced());
    CHECK(forced.residual() > 0.1);
  }

  TEST_CASE("kernels") {
    const auto hat = hat1d();
    const KernelSet classical = build_kernels(scalar_dual(scalar_symbol([](double) { return cplx(1.0); })), hat, 8, 256);
    const IndexedArray& c = classical.coefficients(0, 0);
    for (long long a = -8; a <= 8; ++a) CHECK(std::abs(c.at(IVec{a}) - cplx(a == 0 ? 1.0 : 0.0)) < 1e-12);
    const SpaceElement S = classical.tabulate(0, 0, working_grid(*hat, 8, 64));
    for (double x : {-0.5, 0.0, 0.25}) CHECK(std::abs(S.evaluate(0, RVec{x}) - (1.0 - std::abs(x))) < 1e-12);

    const KernelSet shifted =
        build_kernels(scalar_dual(scalar_symbol([](double x) { return std::polar(1.0, -kTwoPi * x); })), hat, 8, 256);
    for (long long a = -8; a <= 8; ++a)
      CHECK(std::abs(shifted.coefficients(0, 0).at(IVec{a}) - cplx(a == -1 ? 1.0 : 0.0)) < 1e-12);

    const SamplingLattice lat(IntMatrix(1, {1}), 1);
    const SymbolSource g0 = scalar_symbol([](double) { return cplx{}; });
    const ModulationField field(g0, lat, 16);
    const DualField zero_dual(g0, lat, field, 0.0, 1e-8, true);
    const KernelSet zero = build_kernels(zero_dual, hat, 4, 64);
    CHECK(zero.coefficients(0, 0).norm2() == 0.0);
  }

  TEST_CASE("samples") {
    const auto hat = hat1d();
    const SamplingLattice lat(IntMatrix(1, {1}), 1);
    const FilterBank bank(1, 1, {PointEvaluation{0, {0.0}}});
    const Grid grid = working_grid(*hat, 6, 32);

    const SpaceElement zero = synthesize(hat, CoefficientArray(1, IndexBox(1, 2)), grid);
    CHECK(take_samples(zero, bank, lat, 3).energy() == 0.0);

    CoefficientArray delta(1, IndexBox(1, 2));
    delta[0].ref(IVec{0}) = 1.0;
    const SampleSet s = take_samples(synthesize(hat, delta, grid), bank, lat, 3);
    for (long long a = -3; a <= 3; ++a) CHECK(s.values(0, 0).at(IVec{a}) == cplx(a == 0 ? 1.0 : 0.0));

    const SampleSet zs(1, 1, 1, 3);
    const KernelSet k = build_kernels(scalar_dual(scalar_symbol([](double) { return cplx(1.0); })), hat, 4, 64);
    CHECK(reconstruction_coefficients(zs, k, lat).norm2() == 0.0);
  }

  TEST_CASE("sample csv round trip") {
    SampleSet s(2, 2, 1, 1);
    s.values(1, 0).ref(IVec{-1, 1}) = {0.1, -1.0 / 3};
    s.values(0, 0).ref(IVec{0, 0}) = 7.0;
    std::stringstream ss;
    s.write_csv(ss);
    const SampleSet back = SampleSet::read_csv(ss);
    CHECK(back.dim() == 2);
    CHECK(back.s() == 2);
    CHECK(back.values(1, 0).values() == s.values(1, 0).values());
    CHECK(back.values(0, 0).values() == s.values(0, 0).values());
    CHECK(back.energy() == s.energy());
    std::stringstream bad("# sisamp samples v1\nnonsense\n");
    CHECK_THROWS_AS(SampleSet::read_csv(bad), Error);
  }

  TEST_CASE("end-to-end reconstruction") {
    for (const char* file : {"classical.json", "oversampled.json", "averaging.json", "vector_two_pieces.json"}) {
      Pipeline pipe(golden(file));
      const ReconstructionRun run = run_reconstruction(pipe, pipe.random_coefficients(17));
      CHECK_MESSAGE(run.rel_error < 1e-6, file);
    }
  }

  TEST_CASE("tabulated kernels agree with the coefficient route") {
    for (const char* file : {"averaging.json", "vector_two_pieces.json"}) {
      Pipeline pipe(golden(file));
      const ReconstructionRun run = run_reconstruction(pipe, pipe.random_coefficients(3));
      const Model& model = pipe.model();
      for (std::size_t q = 0; q < static_cast<std::size_t>(model.generators->r()); ++q) {
        const auto tab = reconstruct_tabulated(run.samples, pipe.kernels(), model.lattice, pipe.working_grid(), q);
        double err = 0.0;
        for (std::size_t i = 0; i < tab.size(); ++i) err = std::max(err, std::abs(tab[i] - run.reconstructed.total(q)[i]));
        CHECK_MESSAGE(err < 1e-10, file);
      }
    }
  }

  TEST_CASE("translation covariance") {
    Pipeline pipe(golden("oversampled.json"));
    const Model& model = pipe.model();
    const CoefficientArray a = pipe.random_coefficients(5);
    const long long shift = model.lattice.matrix()(0, 0);  // M beta with beta = 1
    CoefficientArray moved(1, IndexBox(IVec{a.box().lo()[0] + shift}, IVec{a.box().hi()[0] + shift}));
    for (std::size_t k = 0; k < a[0].size(); ++k) moved[0][k] = a[0][k];

    const Grid grid = working_grid(*model.generators, model.params.K_coeff + 3 * model.reach() + shift, 64);
    const SpaceElement f = synthesize(model.generators, a, grid);
    const SpaceElement g = synthesize(model.generators, moved, grid);
    const long long K_samp = model.K_samp();
    const SampleSet sf = take_samples(f, model.bank, model.lattice, K_samp + 1);
    const SampleSet sg = take_samples(g, model.bank, model.lattice, K_samp + 1);
    double defect = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < model.s(); ++j) {
      for (long long al = -K_samp; al <= K_samp; ++al) {
        defect = std::max(defect, std::abs(sg.values(j, 0).at(IVec{al + 1}) - sf.values(j, 0).at(IVec{al})));
        scale = std::max(scale, std::abs(sf.values(j, 0).at(IVec{al})));
      }
    }
    CHECK(defect <= 1e-12 * scale);

    const CoefficientArray bf = reconstruction_coefficients(sf, pipe.kernels(), model.lattice);
    const CoefficientArray bg = reconstruction_coefficients(sg, pipe.kernels(), model.lattice);
    double bdefect = 0.0;
    const long long inner = model.params.K_coeff;
    for (long long b = -inner; b <= inner; ++b)
      bdefect = std::max(bdefect, std::abs(bg[0].at(IVec{b + shift}) - bf[0].at(IVec{b})));
    CHECK(bdefect <= 1e-10);
  }
}
