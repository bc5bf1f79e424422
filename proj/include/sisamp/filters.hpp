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

// Linear shift-invariant sampling systems and their symbols.

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sisamp/common.hpp"
#include "sisamp/gridfn.hpp"
#include "sisamp/index_box.hpp"
#include "sisamp/sispace.hpp"

namespace sisamp {

/// Ideal sampling: (L f)(t) = f_q(t - offset).
struct PointEvaluation {
  std::size_t component = 0;
  RVec offset;
};

/// (L f)(t) = sum_q int f_q(x) p_q(t - x) dx, one kernel per component.
struct Convolution {
  std::vector<Profile> kernels;
};

using FilterSystem = std::variant<PointEvaluation, Convolution>;

class FilterBank {
 public:
  // strict_l1 rejects point evaluations.
  FilterBank(int dim, int r, std::vector<FilterSystem> systems, bool strict_l1 = false);

  int dim() const { return dim_; }
  int r() const { return r_; }
  std::size_t s() const { return systems_.size(); }
  const FilterSystem& system(std::size_t j) const { return systems_[j]; }
  bool is_point(std::size_t j) const { return std::holds_alternative<PointEvaluation>(systems_[j]); }

  // Box of x - t over which (L_j f)(t) reads f.
  Box window(std::size_t j) const;
  // Smallest integer rho with every window inside [-rho, rho]^d.
  long long support_radius() const;

 private:
  int dim_;
  int r_;
  std::vector<FilterSystem> systems_;
};

// Midpoint quadrature of the convolution form on the grid of f (r components
// sharing one grid); point evaluation interpolates multilinearly.
cplx apply_filter(const FilterBank& bank, std::size_t j, std::span<const GridFunction> f, std::span<const double> t);
// Same value from sum_q <f_q, h_q(. - t)>, h_q(x) = conj(p_q(-x)).
cplx apply_filter_inner(const FilterBank& bank, std::size_t j, std::span<const GridFunction> f,
                        std::span<const double> t);

// (L_j phi_p)(x), exact for piecewise polynomials with breakpoints on 1/16.
cplx filtered_generator(const FilterBank& bank, std::size_t j, const GeneratorSet& gens, std::size_t p,
                        std::span<const double> x);

// Exact value on f (or on its part p) from the coefficients. Throws
// OutOfReliableRegion when the window leaves the grid box where f has content.
cplx apply_filter(const FilterBank& bank, std::size_t j, const SpaceElement& f, std::span<const double> t);
cplx apply_filter_part(const FilterBank& bank, std::size_t j, const SpaceElement& f, std::size_t p,
                       std::span<const double> t);

struct FilterSamples {
  IndexedArray values;  // (L_j phi_p)(alpha), |alpha|_inf <= K_sym
  bool truncated = false;
  double lost_max = 0.0;  // largest modulus outside the box
};

FilterSamples generator_filter_samples(const FilterBank& bank, const GeneratorSet& gens, std::size_t j,
                                       std::size_t p, long long K_sym, bool strict = false);

/// g_{j,p}(x) = sum_alpha (L_j phi_p)(alpha) exp(-2 pi i N alpha.x), kept as
/// its nonzero terms.
class SymbolTable {
 public:
  struct Term {
    IVec alpha;
    cplx value;
  };

  SymbolTable() = default;
  SymbolTable(int dim, int N, std::size_t s, std::vector<std::vector<Term>> terms, std::vector<FilterSamples> samples);

  int dim() const { return dim_; }
  int N() const { return N_; }
  std::size_t s() const { return s_; }
  const std::vector<Term>& terms(std::size_t j, std::size_t p) const { return terms_[j * static_cast<std::size_t>(N_) + p]; }
  const FilterSamples& samples(std::size_t j, std::size_t p) const { return samples_[j * static_cast<std::size_t>(N_) + p]; }
  bool truncated() const;

  cplx evaluate(std::size_t j, std::size_t p, std::span<const double> x) const;
  // Periodic GridFunction on subcube p at R points per unit length.
  GridFunction tabulate(std::size_t j, std::size_t p, double R) const;
  // max |g_{j,p}| on a midpoint grid with `res` points per axis of the period.
  double ess_sup(std::size_t j, std::size_t p, std::size_t res = 128) const;

 private:
  int dim_ = 1;
  int N_ = 1;
  std::size_t s_ = 0;
  std::vector<std::vector<Term>> terms_;  // [j * N + p]
  std::vector<FilterSamples> samples_;
};

SymbolTable build_symbols(const FilterBank& bank, const GeneratorSet& gens, long long K_sym, bool strict = false);

}  // namespace sisamp
