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

#include "sisamp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sisamp {

namespace {

long long floor_mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

// Fraction-free Gaussian elimination; exact for integer input.
long long bareiss(std::vector<long long> a, int n) {
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[static_cast<std::size_t>(k * n + k)] == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[static_cast<std::size_t>(i * n + k)] != 0) { swap = i; break; }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<std::size_t>(k * n + j)], a[static_cast<std::size_t>(swap * n + j)]);
      sign = -sign;
    }
    const long long pivot = a[static_cast<std::size_t>(k * n + k)];
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        auto& aij = a[static_cast<std::size_t>(i * n + j)];
        aij = (aij * pivot - a[static_cast<std::size_t>(i * n + k)] * a[static_cast<std::size_t>(k * n + j)]) / prev;
      }
    }
    prev = pivot;
  }
  return sign * a[static_cast<std::size_t>((n - 1) * n + (n - 1))];
}

}  // namespace

IntMatrix::IntMatrix(int dim, IVec row_major) : dim_(dim), a_(std::move(row_major)) {
  if (dim < 1 || a_.size() != static_cast<std::size_t>(dim * dim))
    throw Error(ErrorKind::ShapeMismatch, "integer matrix must be d x d with d >= 1");
}

IntMatrix IntMatrix::identity(int dim) {
  IVec a(static_cast<std::size_t>(dim * dim), 0);
  for (int i = 0; i < dim; ++i) a[static_cast<std::size_t>(i * dim + i)] = 1;
  return IntMatrix(dim, std::move(a));
}

IntMatrix IntMatrix::transpose() const {
  IVec t(a_.size());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t[static_cast<std::size_t>(j * dim_ + i)] = (*this)(i, j);
  return IntMatrix(dim_, std::move(t));
}

IVec IntMatrix::apply(std::span<const long long> v) const {
  IVec out(static_cast<std::size_t>(dim_), 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

long long IntMatrix::determinant() const { return bareiss(a_, dim_); }

IntMatrix IntMatrix::adjugate() const {
  const int n = dim_;
  IVec adj(a_.size());
  if (n == 1) return IntMatrix(1, {1});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // cofactor C_ij; adj = C^T
      std::vector<long long> minor;
      minor.reserve(static_cast<std::size_t>((n - 1) * (n - 1)));
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0; c < n; ++c)
          if (c != j) minor.push_back((*this)(r, c));
      }
      const long long cof = ((i + j) % 2 == 0 ? 1 : -1) * bareiss(std::move(minor), n - 1);
      adj[static_cast<std::size_t>(j * n + i)] = cof;
    }
  }
  return IntMatrix(n, std::move(adj));
}

long long abs_determinant(const IntMatrix& M) {
  const long long det = M.determinant();
  if (det == 0) throw Error(ErrorKind::SingularMatrix, "sampling matrix has zero determinant");
  return det < 0 ? -det : det;
}

std::vector<IVec> coset_representatives(const IntMatrix& M) {
  const long long m = abs_determinant(M);
  const IntMatrix adj_t = M.transpose().adjugate();
  const int d = M.dim();

  std::vector<IVec> reps;
  std::vector<IVec> keys;
  IVec alpha(static_cast<std::size_t>(d), 0);
  // [0, m-1]^d meets every coset since m e_i lies in M^T Z^d.
  while (true) {
    IVec key = adj_t.apply(alpha);
    for (auto& v : key) v = floor_mod(v, m);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(std::move(key));
      reps.push_back(alpha);
      if (static_cast<long long>(reps.size()) == m) break;
    }
    int a = 0;
    while (a < d && ++alpha[static_cast<std::size_t>(a)] == m) alpha[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  return reps;
}

Rational Rational::make(long long num, long long den) {
  if (den == 0) throw Error(ErrorKind::ValidationError, "zero denominator");
  if (den < 0) { num = -num; den = -den; }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational Rational::operator+(const Rational& o) const {
  return make(num * o.den + o.num * den, den * o.den);
}

bool Cell::contains(std::span<const double> x) const {
  const std::size_t d = offset.size();
  for (std::size_t i = 0; i < d; ++i) {
    double u = 0.0;
    for (std::size_t j = 0; j < d; ++j) u += inverse_linear[i * d + j] * (x[j] - offset[j]);
    if (!(u >= 0.0 && u < 1.0)) return false;
  }
  return true;
}

SamplingLattice::SamplingLattice(IntMatrix M, int N) : M_(std::move(M)), N_(N) {
  if (N_ < 1) throw Error(ErrorKind::ValidationError, "N must be positive");
  check_regime(M_.dim(), N_);
  m_ = abs_determinant(M_);
  adj_t_ = M_.transpose().adjugate();
  gammas_ = coset_representatives(M_);
  finish_setup();
}

SamplingLattice::SamplingLattice(IntMatrix M, int N, std::vector<IVec> gammas) : M_(std::move(M)), N_(N) {
  if (N_ < 1) throw Error(ErrorKind::ValidationError, "N must be positive");
  check_regime(M_.dim(), N_);
  m_ = abs_determinant(M_);
  adj_t_ = M_.transpose().adjugate();
  if (static_cast<long long>(gammas.size()) != m_)
    throw Error(ErrorKind::ValidationError, "expected |det M| coset representatives");
  for (const auto& g : gammas)
    if (static_cast<int>(g.size()) != M_.dim()) throw Error(ErrorKind::ShapeMismatch, "representative has wrong dimension");
  if (std::any_of(gammas.front().begin(), gammas.front().end(), [](long long v) { return v != 0; }))
    throw Error(ErrorKind::ValidationError, "gamma_1 must be 0");
  gammas_ = std::move(gammas);
  for (std::size_t a = 0; a < gammas_.size(); ++a)
    for (std::size_t b = a + 1; b < gammas_.size(); ++b)
      if (coset_key(gammas_[a]) == coset_key(gammas_[b]))
        throw Error(ErrorKind::ValidationError, "coset representatives are not pairwise inequivalent");
  finish_setup();
}

void SamplingLattice::finish_setup() {
  const int d = M_.dim();
  const long long det = M_.transpose().determinant();
  inv_t_.assign(static_cast<std::size_t>(d * d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      inv_t_[static_cast<std::size_t>(i * d + j)] = static_cast<double>(adj_t_(i, j)) / static_cast<double>(det);
  keys_.clear();
  shifts_.clear();
  for (const auto& g : gammas_) {
    keys_.push_back(coset_key(g));
    RVec s(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j)
        s[static_cast<std::size_t>(i)] += inv_t_[static_cast<std::size_t>(i * d + j)] * static_cast<double>(g[static_cast<std::size_t>(j)]);
      s[static_cast<std::size_t>(i)] /= static_cast<double>(N_);
    }
    shifts_.push_back(std::move(s));
  }
}

IVec SamplingLattice::coset_key(std::span<const long long> alpha) const {
  IVec key = adj_t_.apply(alpha);
  for (auto& v : key) v = floor_mod(v, m_);
  return key;
}

std::size_t SamplingLattice::reduce_to_coset(std::span<const long long> alpha) const {
  const IVec key = coset_key(alpha);
  for (std::size_t k = 0; k < keys_.size(); ++k)
    if (keys_[k] == key) return k;
  throw Error(ErrorKind::ValidationError, "coset table incomplete");  // unreachable for a valid lattice
}

bool SamplingLattice::equivalent(std::span<const long long> a, std::span<const long long> b) const {
  return coset_key(a) == coset_key(b);
}

RVec SamplingLattice::cell_point(std::span<const double> u) const {
  const int d = M_.dim();
  RVec y(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += inv_t_[static_cast<std::size_t>(i * d + j)] * u[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc / static_cast<double>(N_);
  }
  return y;
}

long long SamplingLattice::inf_norm() const {
  long long best = 0;
  for (int i = 0; i < M_.dim(); ++i) {
    long long row = 0;
    for (int j = 0; j < M_.dim(); ++j) row += std::llabs(M_(i, j));
    best = std::max(best, row);
  }
  return best;
}

double SamplingLattice::inverse_inf_norm() const {
  // M^{-1} = (M^{-T})^T
  const int d = M_.dim();
  double best = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::abs(inv_t_[static_cast<std::size_t>(j * d + i)]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<Cell> build_cells(const SamplingLattice& lat) {
  const int d = lat.dim();
  const auto N = static_cast<double>(lat.N());
  RVec linear(lat.inv_transpose());
  for (auto& v : linear) v /= N;
  RVec inverse(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      inverse[static_cast<std::size_t>(i * d + j)] = N * static_cast<double>(lat.matrix()(j, i));

  long long Nd = 1;
  for (int i = 0; i < d; ++i) Nd *= lat.N();
  const Rational vol = Rational::make(1, static_cast<long long>(lat.m()) * Nd);

  std::vector<Cell> cells;
  cells.reserve(lat.m());
  for (std::size_t k = 0; k < lat.m(); ++k) cells.push_back(Cell{lat.coset_shift(k), linear, inverse, vol});
  return cells;
}

std::size_t count_cell_hits(const SamplingLattice& lat, const std::vector<Cell>& cells, std::span<const double> x) {
  const int d = lat.dim();
  double minv_norm = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::abs(lat.inv_transpose()[static_cast<std::size_t>(i * d + j)]);
    minv_norm = std::max(minv_norm, row);
  }
  const auto reach = static_cast<long long>(std::ceil(1.0 + minv_norm * static_cast<double>(lat.m()))) + 1;

  std::size_t hits = 0;
  IVec n(static_cast<std::size_t>(d), -reach);
  RVec shifted(static_cast<std::size_t>(d));
  while (true) {
    for (int i = 0; i < d; ++i)
      shifted[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + static_cast<double>(n[static_cast<std::size_t>(i)]) / lat.N();
    for (const auto& c : cells)
      if (c.contains(shifted)) ++hits;
    int a = 0;
    while (a < d && ++n[static_cast<std::size_t>(a)] > reach) n[static_cast<std::size_t>(a++)] = -reach;
    if (a == d) break;
  }
  return hits;
}

}  // namespace sisamp
