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

// Modulation matrices G_p(y), their spectral bounds, and the resulting
// completeness / Bessel / frame / Riesz verdicts.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sisamp/common.hpp"
#include "sisamp/filters.hpp"
#include "sisamp/gridfn.hpp"
#include "sisamp/lattice.hpp"

namespace sisamp {

/// g_j on subcube p, read through its Z^d/N-periodic extension.
class SymbolSource {
 public:
  using Fn = std::function<cplx(std::size_t j, std::size_t p, std::span<const double> x)>;

  static SymbolSource from_table(std::shared_ptr<const SymbolTable> table);
  // fn is consulted only on subcube p; arguments are folded there first.
  static SymbolSource from_functions(int dim, int N, std::size_t s, Fn fn);

  int dim() const { return dim_; }
  int N() const { return N_; }
  std::size_t s() const { return s_; }
  cplx operator()(std::size_t j, std::size_t p, std::span<const double> x) const;

 private:
  int dim_ = 1;
  int N_ = 1;
  std::size_t s_ = 0;
  std::shared_ptr<const SymbolTable> table_;
  Fn fn_;
};

// G_p(y)_{jk} = g_j^per(y + s_k), s_k = M^{-T} gamma_k / N.
Eigen::MatrixXcd modulation_matrix_at(const SymbolSource& g, const SamplingLattice& lat, std::size_t p,
                                      std::span<const double> y);

struct ModulationPiece {
  std::size_t p = 0;
  std::size_t s = 0;
  std::size_t m = 0;
  std::vector<cplx> entries;  // point-major, then row-major s x m

  std::size_t points() const { return s * m == 0 ? 0 : entries.size() / (s * m); }
  cplx at(std::size_t point, std::size_t j, std::size_t k) const { return entries[(point * s + j) * m + k]; }
  Eigen::MatrixXcd matrix(std::size_t point) const;
};

class ModulationField {
 public:
  ModulationField(const SymbolSource& g, SamplingLattice lat, std::size_t resolution);

  const SamplingLattice& lattice() const { return lat_; }
  const CellGrid& grid() const { return grid_; }
  std::size_t s() const { return s_; }
  std::size_t m() const { return lat_.m(); }
  std::size_t pieces() const { return pieces_.size(); }
  const ModulationPiece& piece(std::size_t p) const { return pieces_[p]; }

  // (G_p F_p)_j on the cell grid; F_p from vectorize_patch on the same grid.
  std::vector<std::vector<cplx>> apply(std::size_t p, const PatchVector& F) const;

 private:
  SamplingLattice lat_;
  CellGrid grid_;
  std::size_t s_;
  std::vector<ModulationPiece> pieces_;
};

struct SpectralBounds {
  double A_G = 0.0;
  double B_G = 0.0;
  std::vector<std::vector<double>> lambda_min;  // [p][point]
  std::vector<std::vector<double>> lambda_max;
  std::size_t argmin_p = 0, argmin_point = 0;
  std::size_t argmax_p = 0, argmax_point = 0;
  RVec argmin_y, argmax_y;
};

SpectralBounds spectral_bounds(const ModulationField& field);

struct RefinedBounds {
  SpectralBounds coarse;
  SpectralBounds fine;  // doubled resolution
  double change_A = 0.0;
  double change_B = 0.0;
  bool converged = false;  // both changes below 1%
};

RefinedBounds spectral_bounds_refined(const SymbolSource& g, const SamplingLattice& lat, std::size_t resolution);

struct Completeness {
  bool complete = false;
  std::vector<bool> per_piece;
  std::size_t deficient_points = 0;
  double min_sigma_ratio = 0.0;  // min over the grid of sigma_min / sigma_max
};

// Numerical rank m at every grid point: sigma_min > tol * sigma_max. A point
// budget > 0 tolerates that fraction of deficient points.
Completeness completeness_test(const ModulationField& field, double rank_tol = 1e-8, double budget = 0.0);

struct SystemClassification {
  bool complete = false;
  bool bessel = false;
  bool frame = false;
  bool riesz = false;
  double bessel_bound = 0.0;  // B_G / m
  double frame_lower = 0.0;   // A_G / m
  double frame_upper = 0.0;   // B_G / m
};

SystemClassification classify(const SpectralBounds& bounds, std::size_t s, std::size_t m, const Completeness& completeness,
                              double frame_floor = 1e-8, double blowup_cap = 1e12);

}  // namespace sisamp
