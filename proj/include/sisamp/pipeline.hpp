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

// A fully specified sampling problem and the lazily computed objects
// derived from it.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "sisamp/filters.hpp"
#include "sisamp/lattice.hpp"
#include "sisamp/modulation.hpp"
#include "sisamp/reconstruction.hpp"
#include "sisamp/sispace.hpp"

namespace sisamp {

struct Params {
  double R = 256;                      // samples per unit length on subcubes
  long long K = 32;                    // Fourier truncation
  long long K_sym = 8;                 // symbol coefficient box
  long long K_coeff = 8;               // random coefficient box
  std::optional<long long> K_samp;     // lattice sample box; derived when unset
  std::size_t cell_resolution = 128;   // per axis of the fundamental cell
  std::optional<double> space_resolution;  // working-box samples per unit; 256 (d = 1) or 32
  std::uint64_t seed = 7;
  std::size_t identity_trials = 50;
  std::size_t sampling_probes = 30;
  std::size_t stability_trials = 100;
  std::size_t reconstruction_trials = 20;
  std::size_t dual_frame_trials = 20;
  std::size_t riesz_trials = 50;
  bool strict_l1 = false;
  bool strict_truncation = false;
};

struct Tolerances {
  double rank = 1e-8;
  double identity = 1e-3;
  double reconstruct = 1e-3;
  double sampling = 1e-6;
  double dual_residual = 1e-8;
  double null_ratio = 1e-6;
  double pinv_floor = 1e-8;
  double blowup_cap = 1e12;
};

struct Model {
  std::string name;
  SamplingLattice lattice;
  std::shared_ptr<const GeneratorSet> generators;
  FilterBank bank;
  Params params;
  Tolerances tol;

  int dim() const { return lattice.dim(); }
  int N() const { return lattice.N(); }
  std::size_t s() const { return bank.s(); }
  std::size_t m() const { return lattice.m(); }

  // ceil(||M^{-1}||_inf (K_coeff + rho_phi + rho_filter)) + 1 unless set
  long long K_samp() const;
  double space_resolution() const;
  // rho_phi + rho_filter
  long long reach() const;
};

class Pipeline {
 public:
  explicit Pipeline(Model model);

  const Model& model() const { return model_; }

  const std::shared_ptr<const SymbolTable>& symbols();
  const SymbolSource& source();
  const ModulationField& field();
  const SpectralBounds& bounds();
  const RefinedBounds& refined_bounds();
  const Completeness& completeness();
  const SystemClassification& classification();
  // Throws NotLeftInvertible unless forced; forced duals use the Moore-Penrose inverse.
  const DualField& duals(bool force = false);
  const KernelSet& kernels(bool force = false);

  // [-W, W]^d with W = K_coeff + 2 reach + 1, at the space resolution.
  const Grid& working_grid() const { return grid_; }
  // Working box shrunk by the reach.
  const Box& interior() const { return interior_; }

  // Random complex coefficients on the K_coeff box, unit l2 norm.
  CoefficientArray random_coefficients(std::uint64_t seed) const;
  SpaceElement element(const CoefficientArray& coeffs) const;

 private:
  Model model_;
  Grid grid_;
  Box interior_;
  std::shared_ptr<const SymbolTable> symbols_;
  std::optional<SymbolSource> source_;
  std::optional<ModulationField> field_;
  std::optional<SpectralBounds> bounds_;
  std::optional<RefinedBounds> refined_;
  std::optional<Completeness> completeness_;
  std::optional<SystemClassification> classification_;
  std::optional<DualField> duals_[2];
  std::optional<KernelSet> kernels_[2];
};

struct ReconstructionRun {
  SampleSet samples;
  SpaceElement original;
  SpaceElement reconstructed;
  double sample_energy = 0.0;
  double rel_error = 0.0;  // absolute when f vanishes on the interior
};

ReconstructionRun run_reconstruction(Pipeline& pipe, const CoefficientArray& coeffs, bool force = false);

// sqrt(||a - b||^2 / ||b||^2) over grid points in `region`; the absolute
// error when b vanishes there.
double relative_error(const SpaceElement& a, const SpaceElement& b, const Box& region);

}  // namespace sisamp
