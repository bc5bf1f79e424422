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
#include "sisamp/verify.hpp"
#include "test_util.hpp"

using namespace sisamp;
using sisamp::test::golden;

namespace {

Model quick(const char* file) {
  Model m = golden(file);
  m.params.identity_trials = 5;
  m.params.sampling_probes = 10;
  m.params.stability_trials = 12;
  m.params.reconstruction_trials = 3;
  m.params.dual_frame_trials = 3;
  m.params.riesz_trials = 8;
  return m;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("modulation identity") {
    Pipeline classical(quick("classical.json"));
    const IdentityCheck zero = check_modulation_identity(classical, PatchFunction::zero(1, 1, 256), 0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.rel_error == 0.0);

    const PatchFunction F = random_smooth_patch(1, 1, 256, 4);
    const IdentityCheck c = check_modulation_identity(classical, F, 0);
    CHECK(c.rel_error <= 1e-4);
    CHECK(c.rhs == doctest::Approx(F.norm2()).epsilon(1e-4));

    Pipeline quincunx(quick("quincunx.json"));
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const IdentityCheck q = check_modulation_identity(quincunx, random_smooth_patch(2, 1, 256, seed), 0);
      CHECK(q.rel_error <= 1e-3);
    }
  }

  TEST_CASE("sampling identity") {
    Pipeline pipe(quick("classical.json"));
    const Model& model = pipe.model();
    const Grid grid = working_grid(*model.generators, model.params.K, 4);
    const SpaceElement f0 = synthesis_operator_T(model.generators, PatchFunction::zero(1, 1, 256), model.params.K, grid);
    const IdentityCheck z = check_sampling_identity(pipe, f0, 0, 0, IVec{0});
    CHECK(z.lhs == 0.0);
    CHECK(z.rel_error == 0.0);

    const PatchFunction F = random_smooth_patch(1, 1, 256, 8);
    const SpaceElement f = synthesis_operator_T(model.generators, F, model.params.K, grid);
    CHECK(check_sampling_identity(pipe, f, 0, 0, IVec{0}).rel_error <= 1e-8);
    CHECK(check_sampling_identity(pipe, f, 0, 0, IVec{-2}).rel_error <= 1e-8);

    const SpaceElement bare = synthesize(model.generators, f.coefficients(), grid);
    CHECK_ERROR_KIND(check_sampling_identity(pipe, bare, 0, 0, IVec{0}), ErrorKind::MissingProvenance);
  }

  TEST_CASE("null direction of the rank-deficient sampler") {
    Pipeline pipe(quick("rank_deficient.json"));
    const NullProbe probe = null_direction(pipe, 8);
    CHECK(probe.sigma_min2 <= 1e-12);
    CHECK(sample_energy_ratio(pipe, probe.coeffs) <= 1e-6);

    CoefficientArray other = pipe.random_coefficients(9);
    const double r = sample_energy_ratio(pipe, other);
    for (std::size_t k = 0; k < other[0].size(); ++k) other[0][k] *= cplx(3.0, -4.0);
    CHECK(sample_energy_ratio(pipe, other) == doctest::Approx(r).epsilon(1e-12));
  }

  TEST_CASE("adversarial probe approaches the Bessel bound") {
    Pipeline pipe(quick("averaging.json"));
    const double BG = pipe.bounds().B_G;
    const double ratio = sample_energy_ratio(pipe, bessel_probe(pipe, 24).coeffs);
    CHECK(ratio <= BG * (1 + 1e-3));
    CHECK(ratio >= 0.9 * BG);
  }

  TEST_CASE("stability estimates") {
    Pipeline frame(quick("averaging.json"));
    const StabilityReport s = estimate_stability(frame, 12);
    CHECK(s.C1_coeff > 0.2);
    CHECK(s.C2_coeff <= s.upper_coeff);
    CHECK(s.within_envelopes);
    CHECK(s.scaling_defect < 1e-12);
    CHECK_THROWS_AS(estimate_stability(frame, 3), Error);

    Pipeline deficient(quick("rank_deficient.json"));
    const StabilityReport d = estimate_stability(deficient, 12);
    CHECK(d.C1_coeff <= 1e-6);
    CHECK(d.null_ratio <= 1e-6);
  }

  TEST_CASE("equivalence verdicts") {
    Pipeline classical(quick("classical.json"));
    const EquivalenceReport c = equivalence_report(classical);
    CHECK(c.a);
    CHECK(c.b);
    CHECK(c.c);
    CHECK(c.d);
    CHECK(c.agree);

    Pipeline deficient(quick("rank_deficient.json"));
    const EquivalenceReport d = equivalence_report(deficient);
    CHECK_FALSE(d.a);
    CHECK_FALSE(d.b);
    CHECK_FALSE(d.c);
    CHECK_FALSE(d.d);
    CHECK(d.agree);
    CHECK(d.null_reconstruction_error > 0.1);

    Pipeline avg(quick("averaging.json"));
    const EquivalenceReport a = equivalence_report(avg);
    CHECK(a.agree);
    CHECK(a.a);
    CHECK(a.A_G == doctest::Approx(0.25).epsilon(1e-3));
  }

  TEST_CASE("full verify on a small budget") {
    for (const char* file : {"classical.json", "rank_deficient.json"}) {
      Pipeline pipe(quick(file));
      const VerifyReport rep = run_verify(pipe);
      CHECK_MESSAGE(rep.all_passed, file);
    }
  }

  TEST_CASE("corrupted tolerance turns the identity check red") {
    Model m = quick("classical.json");
    m.tol.identity = 1e-12;
    Pipeline pipe(m);
    const VerifyReport rep = run_verify(pipe);
    CHECK_FALSE(rep.identity.passed);
    CHECK_FALSE(rep.all_passed);
  }
}
