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

// Tabulated complex functions on uniform midpoint grids, the exponential
// basis e_alpha(x) = N^{d/2} exp(-2 pi i N alpha.x), Fourier coefficients on
// the subcubes [(p-1)/N, p/N]^d and the coset vectorization of a patch.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "sisamp/common.hpp"
#include "sisamp/index_box.hpp"
#include "sisamp/lattice.hpp"

namespace sisamp {

struct Box {
  RVec lower;
  RVec upper;

  int dim() const { return static_cast<int>(lower.size()); }
  double volume() const;
  bool contains(std::span<const double> x) const;  // closed
  static Box cube(int dim, double lo, double hi);
};

/// Uniform grid of cell midpoints: lower + (i + 1/2) h per axis.
class Grid {
 public:
  Grid() = default;
  Grid(Box box, std::vector<std::size_t> counts);
  // counts = round(extent * R) per axis (at least 2)
  static Grid with_resolution(Box box, double R);

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return size_; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double cell_volume() const { return cell_volume_; }

  double coord(int axis, std::size_t i) const;
  RVec axis_coords(int axis) const;
  void point(std::size_t flat, std::span<double> out) const;
  RVec point(std::size_t flat) const;
  std::size_t flat(std::span<const std::size_t> idx) const;

  bool same_layout(const Grid& other) const;

 private:
  Box box_;
  std::vector<std::size_t> counts_;
  RVec spacing_;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
};

/// How a GridFunction is read outside its box.
enum class Extension {
  none,      // DomainMismatch
  zero,      // compactly supported data
  periodic,  // period = box extent
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<cplx> values, Extension ext = Extension::none);
  static GridFunction tabulate(const Grid& grid, const std::function<cplx(std::span<const double>)>& f,
                               Extension ext = Extension::none);

  const Grid& grid() const { return grid_; }
  Extension extension() const { return ext_; }
  bool periodic() const { return ext_ == Extension::periodic; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  // Periodic data: 6-point Lagrange per axis with wrap-around.
  // Otherwise: multilinear between midpoints.
  cplx evaluate(std::span<const double> x) const;

  double norm2() const;

 private:
  cplx evaluate_periodic(std::span<const double> x) const;
  cplx evaluate_multilinear(std::span<const double> x) const;

  Grid grid_;
  std::vector<cplx> values_;
  Extension ext_ = Extension::none;
};

// Midpoint rule over `box`, whose faces must fall on grid cell boundaries
// (after periodic folding for periodic data).
cplx quadrature(const GridFunction& f, const Box& box);
inline cplx quadrature(const GridFunction& f) { return quadrature(f, f.grid().box()); }

cplx exp_basis(std::span<const long long> alpha, int N, std::span<const double> x);

// out[nu] = sum_x values[x] prod_a tables[a][nu_a * shape[a] + x_a]
// values and out are row-major; tables[a] has out_shape[a] rows.
std::vector<cplx> separable_transform(std::span<const cplx> values, const std::vector<std::size_t>& shape,
                                      const std::vector<std::vector<cplx>>& tables,
                                      const std::vector<std::size_t>& out_shape);

// N^{d/2} int g(x) exp(2 pi i N nu.x) dx for every nu in `freqs`, by the
// midpoint rule on g's grid.
IndexedArray grid_spectrum(const GridFunction& g, int N, const IndexBox& freqs);

// sum_nu c_nu e_nu(x) at every point of `grid`.
std::vector<cplx> evaluate_exponentials(const IndexedArray& coeffs, int N, const Grid& grid);

// [(p)/N, (p+1)/N]^d, p zero-based.
Box subcube(int dim, int N, std::size_t p);

/// F on [0,1]^d stored as its N subcube pieces F_p, each periodic with
/// period 1/N (the Z^d/N-periodic extension of F chi_p).
class PatchFunction {
 public:
  PatchFunction() = default;
  PatchFunction(int dim, int N, std::vector<GridFunction> pieces);

  static PatchFunction tabulate(int dim, int N, double R, const std::function<cplx(std::span<const double>)>& F);
  // Piece p = sum_beta coeffs[p]_beta e_beta.
  static PatchFunction from_exponentials(int dim, int N, double R, const std::vector<IndexedArray>& coeffs);
  static PatchFunction zero(int dim, int N, double R);

  int dim() const { return dim_; }
  int N() const { return N_; }
  const GridFunction& piece(std::size_t p) const { return pieces_[p]; }
  GridFunction& piece(std::size_t p) { return pieces_[p]; }
  std::size_t pieces() const { return pieces_.size(); }

  // F(x) for x in [0,1]^d
  cplx evaluate(std::span<const double> x) const;
  double norm2() const;
  double piece_norm2(std::size_t p) const { return pieces_[p].norm2(); }

 private:
  int dim_ = 1;
  int N_ = 1;
  std::vector<GridFunction> pieces_;
};

// c_{F,p,alpha} = N^{d/2} int_{subcube p} F(x) exp(2 pi i N alpha.x) dx, |alpha|_inf <= K
IndexedArray fourier_coefficients(const PatchFunction& F, std::size_t p, long long K);

/// Midpoint grid in u over [0,1)^d mapped to the fundamental cell
/// y = M^{-T} u / N.
class CellGrid {
 public:
  CellGrid() = default;
  CellGrid(const SamplingLattice& lat, std::size_t resolution);

  int dim() const { return dim_; }
  std::size_t resolution() const { return res_; }
  std::size_t size() const { return size_; }
  // integration weight of one point: |cell| / size
  double weight() const { return weight_; }
  void u_point(std::size_t flat, std::span<double> u) const;
  RVec point(std::size_t flat) const;

 private:
  int dim_ = 1;
  int N_ = 1;
  std::size_t res_ = 0;
  std::size_t size_ = 0;
  double weight_ = 0.0;
  RVec inv_t_;
};

/// F_p(y) = ((F chi_p)(y + s_1), ..., (F chi_p)(y + s_m)) on a CellGrid,
/// s_k = M^{-T} gamma_k / N.
struct PatchVector {
  CellGrid grid;
  std::vector<std::vector<cplx>> components;  // m x grid.size()

  double norm2() const;
};

PatchVector vectorize_patch(const PatchFunction& F, std::size_t p, const SamplingLattice& lat, const CellGrid& grid);

void write_csv(const GridFunction& g, std::ostream& os);
GridFunction read_csv(std::istream& is);

}  // namespace sisamp
