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

// Independent numerical checks of the sampling identities, stability
// constants and the equivalence of the invertibility criteria.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisamp/pipeline.hpp"

namespace sisamp {

// Piece p = sum_{|beta| <= degree} c_beta e_beta with Gaussian c_beta.
PatchFunction random_smooth_patch(int dim, int N, double R, std::uint64_t seed, long long degree = 3);

// <F chi_p, conj(g_{j,p}) e_alpha(M^T .)> for |alpha|_inf <= K, by the
// midpoint rule on the piece grid.
IndexedArray lattice_inner_products(Pipeline& pipe, const PatchFunction& F, std::size_t j, std::size_t p, long long K);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
};

// lhs = sum_j sum_{|alpha| <= K} |<F chi_p, conj(g_j) e_alpha(M^T .)>|^2,
// rhs = (1/m) ||G_p F_p||^2 over the fundamental cell.
IdentityCheck check_modulation_identity(Pipeline& pipe, const PatchFunction& F, std::size_t p);

// lhs = (L_j f^{(p)})(M beta), rhs = <F chi_p, conj(g_{j,p}) e_beta(M^T .)>.
// Throws MissingProvenance when f has no source patch function.
IdentityCheck check_sampling_identity(Pipeline& pipe, const SpaceElement& f, std::size_t j, std::size_t p,
                                      std::span<const long long> beta);

struct NullProbe {
  CoefficientArray coeffs;
  std::size_t part = 0;
  double sigma_min2 = 0.0;  // smallest squared singular value of the finite sampling matrix
};

// Unit coefficients (radius L) minimizing the sample energy of one part.
NullProbe null_direction(Pipeline& pipe, long long L);

struct AdversarialProbe {
  CoefficientArray coeffs;
  std::size_t part = 0;
  long long L = 0;
};

// Fejer-localized F at the point where lambda_max(G*G) peaks, aligned with
// the top eigenvector there.
AdversarialProbe bessel_probe(Pipeline& pipe, long long L);

// sample energy over ||F||^2 for coefficients of radius L, sampled end to end
double sample_energy_ratio(Pipeline& pipe, const CoefficientArray& coeffs);

struct StabilityReport {
  std::size_t ensemble = 0;
  double C1_coeff = 0.0, C2_coeff = 0.0;  // sample energy / ||F||^2
  double C1_func = 0.0, C2_func = 0.0;    // sample energy / ||f||^2
  double null_ratio = 0.0;
  double scaling_defect = 0.0;
  RieszEstimate riesz;
  double lower_coeff = 0.0, upper_coeff = 0.0;  // (A_G/m)(1 - 1e-3), (B_G/m)(1 + 1e-3)
  double lower_func = 0.0, upper_func = 0.0;    // 0.95 (A_G/m)/B_hi, 1.05 (B_G/m)/A_lo
  bool within_envelopes = false;
};

StabilityReport estimate_stability(Pipeline& pipe, std::size_t ensemble);

struct EquivalenceReport {
  bool a = false;  // A_G above the floor
  bool b = false;  // stable sampler, null probe included
  bool c = false;  // bounded dual row exists
  bool d = false;  // reconstruction within tolerance
  bool agree = false;
  double A_G = 0.0;
  double C1 = 0.0;
  double dual_residual = 0.0;
  double dual_max_modulus = 0.0;
  double max_reconstruction_error = 0.0;
  double null_reconstruction_error = 0.0;
  std::size_t reconstruction_trials = 0;
  std::string dual_status;
};

EquivalenceReport equivalence_report(Pipeline& pipe);

struct Stat {
  std::size_t trials = 0;
  double value = 0.0;  // worst observed
  double bound = 0.0;
  bool passed = false;
};

struct VerifyReport {
  Stat identity;      // relative error
  Stat sampling;      // absolute error
  Stat riesz_lower;   // min ||T F||^2 / ||F||^2 against A_lo (2% slack)
  Stat riesz_upper;   // max against B_hi
  Stat bessel;        // max sample energy / ||F||^2 against (B_G/m)(1 + 1e-3)
  Stat bessel_tight;  // adversarial ratio against 0.9 B_G/m
  Stat dual_residual;
  Stat dual_frame;      // torus dual-frame identity, frame scenarios only
  Stat reconstruction;  // frame: max error; otherwise the null witness error (must exceed 0.1)
  Stat translation;
  Stat refinement;      // relative change of A_G, B_G under grid doubling
  StabilityReport stability;
  EquivalenceReport equivalence;
  bool frame = false;
  bool all_passed = false;
};

VerifyReport run_verify(Pipeline& pipe);

}  // namespace sisamp
