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

#include <cstddef>
#include <span>
#include <vector>

#include "sisamp/common.hpp"

namespace sisamp {

/// Square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int dim, IVec row_major);
  static IntMatrix identity(int dim);

  int dim() const { return dim_; }
  long long operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  const IVec& data() const { return a_; }

  IntMatrix transpose() const;
  IVec apply(std::span<const long long> v) const;
  long long determinant() const;
  // adj(A) with A * adj(A) = det(A) I
  IntMatrix adjugate() const;

 private:
  int dim_ = 0;
  IVec a_;
};

// Exact |det M|; throws SingularMatrix when det M = 0.
long long abs_determinant(const IntMatrix& M);

// Representatives of Z^d / M^T Z^d: gamma_1 = 0, pairwise inequivalent.
// Each representative is the first member of its coset met while scanning
// [0, m-1]^d with axis 0 fastest; the list is in that scan order.
std::vector<IVec> coset_representatives(const IntMatrix& M);

struct Rational {
  long long num = 0;
  long long den = 1;
  static Rational make(long long num, long long den);
  Rational operator+(const Rational& o) const;
  bool operator==(const Rational& o) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Half-open affine cell offset + linear [0,1)^d.
struct Cell {
  RVec offset;
  RVec linear;          // d x d row-major
  RVec inverse_linear;  // linear^{-1} = N M^T
  Rational volume;

  bool contains(std::span<const double> x) const;
};

class SamplingLattice {
 public:
  SamplingLattice(IntMatrix M, int N);
  // Custom representative order; validated (gamma_1 = 0, m distinct cosets).
  SamplingLattice(IntMatrix M, int N, std::vector<IVec> gammas);

  int dim() const { return M_.dim(); }
  int N() const { return N_; }
  const IntMatrix& matrix() const { return M_; }
  std::size_t m() const { return static_cast<std::size_t>(m_); }
  const std::vector<IVec>& gammas() const { return gammas_; }

  // Index k (0-based) of the coset containing alpha.
  std::size_t reduce_to_coset(std::span<const long long> alpha) const;
  bool equivalent(std::span<const long long> a, std::span<const long long> b) const;

  // M^{-T} as doubles, row-major.
  const RVec& inv_transpose() const { return inv_t_; }
  // M^{-T} gamma_k / N
  const RVec& coset_shift(std::size_t k) const { return shifts_[k]; }
  // M^{-T} u / N: maps [0,1)^d onto the fundamental cell M^{-T}[0,1/N)^d.
  RVec cell_point(std::span<const double> u) const;
  // M alpha
  IVec lattice_point(std::span<const long long> alpha) const { return M_.apply(alpha); }
  // max_i sum_j |M_ij|
  long long inf_norm() const;
  // max_i sum_j |(M^{-1})_ij|
  double inverse_inf_norm() const;

 private:
  IVec coset_key(std::span<const long long> alpha) const;
  void finish_setup();

  IntMatrix M_;
  int N_ = 1;
  long long m_ = 1;
  IntMatrix adj_t_;  // adj(M^T)
  std::vector<IVec> gammas_;
  std::vector<IVec> keys_;
  RVec inv_t_;
  std::vector<RVec> shifts_;
};

std::vector<Cell> build_cells(const SamplingLattice& lat);

// Number of pairs (k, n) with x + n/N in Q_k, n ranging over a box of
// integer translates wide enough to reach every cell. A tiling of R^d by
// the Z^d/N translates of the cells gives exactly one hit per point.
std::size_t count_cell_hits(const SamplingLattice& lat, const std::vector<Cell>& cells,
                            std::span<const double> x);

}  // namespace sisamp
