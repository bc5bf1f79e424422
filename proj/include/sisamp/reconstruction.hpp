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

// Dual rows of the modulation matrices, reconstruction kernels, lattice
// samples and the reconstruction expansion.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sisamp/common.hpp"
#include "sisamp/filters.hpp"
#include "sisamp/index_box.hpp"
#include "sisamp/lattice.hpp"
#include "sisamp/modulation.hpp"
#include "sisamp/sispace.hpp"

namespace sisamp {

// (G*G)^{-1} G*, or the Moore-Penrose inverse when `force` is set.
Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& G, bool force = false);

struct PseudoInverseField {
  std::vector<std::vector<Eigen::MatrixXcd>> pinv;  // [p][point], m x s
  double max_residual = 0.0;                        // max ||G^+ G - I||_max
};

// Throws NotLeftInvertible when A_G <= floor unless forced.
PseudoInverseField pseudo_inverse_field(const ModulationField& field, double A_G, double floor = 1e-8,
                                        bool force = false);

/// d^p(x) = first row of G_p^+(x), tabulated on the cell grid and
/// available pointwise.
class DualField {
 public:
  DualField(SymbolSource g, SamplingLattice lat, const ModulationField& field, double A_G, double floor = 1e-8,
            bool force = false);

  const SamplingLattice& lattice() const { return lat_; }
  std::size_t s() const { return g_.s(); }
  bool forced() const { return force_; }

  // rows[p][point * s + j]
  const std::vector<std::vector<cplx>>& rows() const { return rows_; }
  // max over the grid of ||d^p G_p - e_1||_inf
  double residual() const { return residual_; }
  double max_modulus() const { return max_modulus_; }

  std::vector<cplx> row_at(std::size_t p, std::span<const double> x) const;

 private:
  SymbolSource g_;
  SamplingLattice lat_;
  bool force_;
  std::vector<std::vector<cplx>> rows_;
  double residual_ = 0.0;
  double max_modulus_ = 0.0;
};

/// S_j^p = sum_alpha c^{jp}_alpha phi_p(. - alpha), |alpha|_inf <= K.
class KernelSet {
 public:
  KernelSet(std::shared_ptr<const GeneratorSet> gens, std::size_t s, std::vector<IndexedArray> coeffs);

  std::size_t s() const { return s_; }
  std::size_t N() const { return static_cast<std::size_t>(gens_->N()); }
  const std::shared_ptr<const GeneratorSet>& generators() const { return gens_; }
  const IndexedArray& coefficients(std::size_t j, std::size_t p) const { return coeffs_[j * N() + p]; }
  // S_j^p tabulated (clip policy) on `grid`.
  SpaceElement tabulate(std::size_t j, std::size_t p, const Grid& grid) const;

 private:
  std::shared_ptr<const GeneratorSet> gens_;
  std::size_t s_;
  std::vector<IndexedArray> coeffs_;  // [j * N + p]
};

// c^{jp} = fourier coefficients of the patch function equal to
// d_j^p(x) e_0(M^T x) on subcube p, sampled at R points per unit length.
KernelSet build_kernels(const DualField& duals, std::shared_ptr<const GeneratorSet> gens, long long K, double R);

/// L_j f^{(p)}(M alpha), |alpha|_inf <= K_samp.
class SampleSet {
 public:
  SampleSet(int dim, std::size_t s, std::size_t N, long long K_samp);

  int dim() const { return box_.dim(); }
  std::size_t s() const { return s_; }
  std::size_t N() const { return N_; }
  const IndexBox& box() const { return box_; }
  IndexedArray& values(std::size_t j, std::size_t p) { return values_[j * N_ + p]; }
  const IndexedArray& values(std::size_t j, std::size_t p) const { return values_[j * N_ + p]; }
  double energy() const;

  // Rows j,p,alpha...,re,im with zero-based j and p.
  void write_csv(std::ostream& os) const;
  static SampleSet read_csv(std::istream& is);

 private:
  std::size_t s_;
  std::size_t N_;
  IndexBox box_;
  std::vector<IndexedArray> values_;
};

// (L_j phi_p)(delta) on the integer offsets where it can be nonzero.
std::vector<IndexedArray> filtered_generator_table(const FilterBank& bank, const GeneratorSet& gens);

// Throws OutOfReliableRegion when a sample window leaves the working box
// where the part has content.
SampleSet take_samples(const SpaceElement& f, const FilterBank& bank, const SamplingLattice& lat, long long K_samp);

// b_{p,beta} = m sum_j sum_alpha samples(j,p,alpha) c^{jp}_{beta - M alpha}
CoefficientArray reconstruction_coefficients(const SampleSet& samples, const KernelSet& kernels,
                                             const SamplingLattice& lat);
SpaceElement reconstruct(const SampleSet& samples, const KernelSet& kernels, const SamplingLattice& lat,
                         const Grid& grid);
// d = 1: the same expansion summed from lattice translates of tabulated
// kernels; component q of the result.
std::vector<cplx> reconstruct_tabulated(const SampleSet& samples, const KernelSet& kernels, const SamplingLattice& lat,
                                        const Grid& grid, std::size_t q);

}  // namespace sisamp
