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

// Generators, coefficient arrays and tabulated elements of the
// shift-invariant space spanned by the integer translates of phi_1..phi_N.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sisamp/common.hpp"
#include "sisamp/gridfn.hpp"
#include "sisamp/index_box.hpp"

namespace sisamp {

enum class SplineKind { zero, box, hat, cubic };

/// One axis of a tensor-product profile: B((x - shift) / width).
/// box = indicator of [0,1), hat = centered linear B-spline on [-1,1],
/// cubic = centered cubic B-spline on [-2,2].
struct Spline1D {
  SplineKind kind = SplineKind::zero;
  double shift = 0.0;
  double width = 1.0;

  double operator()(double x) const;
  double lower() const;
  double upper() const;
};

/// Compactly supported scalar function on R^d: a scaled tensor product of
/// B-splines, or tabulated data read with multilinear interpolation.
class Profile {
 public:
  static Profile zero(int dim);
  static Profile spline(std::vector<Spline1D> axes, cplx scale = 1.0);
  static Profile spline(int dim, SplineKind kind, RVec shift = {});
  // Normalized average over the centered box of the given widths.
  static Profile box_average(RVec widths);
  static Profile tabulated(GridFunction g);

  int dim() const { return dim_; }
  bool is_zero() const { return zero_; }
  cplx operator()(std::span<const double> x) const;
  Box support() const;
  // x -> conj(p(-x))
  Profile reflected_conjugate() const;

 private:
  int dim_ = 1;
  bool zero_ = true;
  std::vector<Spline1D> axes_;
  cplx scale_ = 1.0;
  std::shared_ptr<const GridFunction> table_;
  bool reflect_ = false;
  bool conjugate_ = false;
};

struct Generator {
  std::vector<Profile> components;  // r entries
};

class GeneratorSet {
 public:
  GeneratorSet(int dim, int r, std::vector<Generator> generators);

  int dim() const { return dim_; }
  int r() const { return r_; }
  int N() const { return static_cast<int>(gens_.size()); }
  const Profile& component(std::size_t j, std::size_t q) const { return gens_[j].components[q]; }
  const Generator& generator(std::size_t j) const { return gens_[j]; }

  // Hull of the component supports of phi_j.
  Box support(std::size_t j) const;
  // Smallest integer rho with every support inside [-rho, rho]^d.
  long long support_radius() const;

  // Largest jump between adjacent samples at resolution R (0 for continuous
  // data as R grows, O(1) at a discontinuity).
  double continuity_defect(double R) const;
  // sup_x sum_j sum_q sum_alpha |phi_{j,q}(x - alpha)|^2 sampled on [0,1)^d.
  double translate_energy_sup(double R) const;

 private:
  int dim_;
  int r_;
  std::vector<Generator> gens_;
};

/// a_{j,alpha} for j = 0..N-1 over a common index box.
class CoefficientArray {
 public:
  CoefficientArray() = default;
  CoefficientArray(std::size_t N, IndexBox box);
  explicit CoefficientArray(std::vector<IndexedArray> per_generator);

  std::size_t N() const { return arrays_.size(); }
  const IndexBox& box() const { return arrays_.front().box(); }
  const IndexedArray& operator[](std::size_t j) const { return arrays_[j]; }
  IndexedArray& operator[](std::size_t j) { return arrays_[j]; }
  double norm2() const;

 private:
  std::vector<IndexedArray> arrays_;
};

enum class BoxPolicy {
  strict,  // BoxTooSmall when a nonzero translate leaves the grid box
  clip,    // tabulate only the part inside the box
};

/// f = sum_p f^{(p)}, f^{(p)} = sum_alpha a_{p,alpha} phi_p(. - alpha),
/// tabulated on a working grid, with the coefficients kept for exact
/// point evaluation.
class SpaceElement {
 public:
  SpaceElement(std::shared_ptr<const GeneratorSet> gens, Grid grid, CoefficientArray coeffs,
               std::vector<std::vector<std::vector<cplx>>> parts);

  const Grid& grid() const { return grid_; }
  int r() const { return gens_->r(); }
  std::size_t parts() const { return parts_.size(); }
  const std::shared_ptr<const GeneratorSet>& generators() const { return gens_; }
  const CoefficientArray& coefficients() const { return coeffs_; }

  const std::vector<cplx>& part(std::size_t p, std::size_t q) const { return parts_[p][q]; }
  const std::vector<cplx>& total(std::size_t q) const { return total_[q]; }
  GridFunction total_function(std::size_t q) const;

  // Exact values from the coefficients.
  cplx evaluate_part(std::size_t p, std::size_t q, std::span<const double> x) const;
  cplx evaluate(std::size_t q, std::span<const double> x) const;

  // Hull of the shifted supports carrying nonzero coefficients of part p;
  // nullopt for an identically zero part.
  std::optional<Box> content_support(std::size_t p) const;

  double norm2() const;
  // Midpoint rule restricted to grid points inside `region`.
  double norm2_on(const Box& region) const;

  const std::optional<PatchFunction>& source() const { return source_; }
  void set_source(PatchFunction F) { source_ = std::move(F); }

 private:
  std::shared_ptr<const GeneratorSet> gens_;
  Grid grid_;
  CoefficientArray coeffs_;
  std::vector<std::vector<std::vector<cplx>>> parts_;  // [p][q][point]
  std::vector<std::vector<cplx>> total_;                // [q][point]
  std::optional<PatchFunction> source_;
};

// [-K - rho, K + rho]^d at R samples per unit, rho = support radius.
Grid working_grid(const GeneratorSet& gens, long long K, double R);

// The grid must have integer resolution 1/h and integer-aligned corners.
SpaceElement synthesize(std::shared_ptr<const GeneratorSet> gens, const CoefficientArray& coeffs, const Grid& grid,
                        BoxPolicy policy = BoxPolicy::strict);

// c_{F,j,alpha} = fourier_coefficients(F, j, K), then synthesize.
SpaceElement synthesis_operator_T(std::shared_ptr<const GeneratorSet> gens, const PatchFunction& F, long long K,
                                  const Grid& grid, BoxPolicy policy = BoxPolicy::strict);

// int a(x) conj(b(x - shift)) dx, tensor Gauss-Legendre on 1/16 cells.
cplx profile_inner_product(const Profile& a, const Profile& b, std::span<const double> shift);

// Gamma_{jk}(delta) = sum_q int phi_{j,q}(x) conj(phi_{k,q}(x - delta)) dx,
// returned row-major as N*N arrays over the delta box where it can be nonzero.
std::vector<IndexedArray> translate_gram(const GeneratorSet& gens);

struct RieszOptions {
  std::size_t trials = 64;
  long long K_coeff = 8;
  std::uint64_t seed = 1;
  double resolution = 64;
  double ratio_cap = 1e8;
  std::size_t symbol_samples = 64;
  std::size_t gram_limit = 2500;
};

struct RieszEstimate {
  double A_lo = 0.0;
  double B_hi = 0.0;
  std::size_t trials = 0;
  double probe_min = 0.0, probe_max = 0.0;    // random unit coefficient arrays
  double gram_min = 0.0, gram_max = 0.0;      // finite Gram section, NaN when skipped
  double symbol_min = 0.0, symbol_max = 0.0;  // eigen-range of the Gram symbol
};

// A_lo / B_hi are the extremes over the three routes. Throws
// DegenerateGenerators when A_lo <= 0 or B_hi / A_lo exceeds the cap.
RieszEstimate riesz_bounds_estimate(std::shared_ptr<const GeneratorSet> gens, const RieszOptions& opts);

}  // namespace sisamp
