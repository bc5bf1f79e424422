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

#include "sisamp/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sisamp {

SymbolSource SymbolSource::from_table(std::shared_ptr<const SymbolTable> table) {
  SymbolSource src;
  src.dim_ = table->dim();
  src.N_ = table->N();
  src.s_ = table->s();
  src.table_ = std::move(table);
  return src;
}

SymbolSource SymbolSource::from_functions(int dim, int N, std::size_t s, Fn fn) {
  check_regime(dim, N);
  if (s == 0) throw Error(ErrorKind::ValidationError, "symbol source needs s >= 1");
  SymbolSource src;
  src.dim_ = dim;
  src.N_ = N;
  src.s_ = s;
  src.fn_ = std::move(fn);
  return src;
}

cplx SymbolSource::operator()(std::size_t j, std::size_t p, std::span<const double> x) const {
  if (table_) return table_->evaluate(j, p, x);
  const Box cube = subcube(dim_, N_, p);
  const double period = 1.0 / N_;
  double y[8];
  for (int a = 0; a < dim_; ++a) {
    const auto u = static_cast<std::size_t>(a);
    double r = std::fmod(x[u] - cube.lower[u], period);
    if (r < 0.0) r += period;
    y[a] = cube.lower[u] + r;
  }
  return fn_(j, p, std::span<const double>(y, static_cast<std::size_t>(dim_)));
}

Eigen::MatrixXcd modulation_matrix_at(const SymbolSource& g, const SamplingLattice& lat, std::size_t p,
                                      std::span<const double> y) {
  check_regime(lat.dim(), lat.N());
  if (g.dim() != lat.dim() || g.N() != lat.N()) throw Error(ErrorKind::ShapeMismatch, "symbols do not match the lattice");
  const auto s = static_cast<Eigen::Index>(g.s());
  const auto m = static_cast<Eigen::Index>(lat.m());
  Eigen::MatrixXcd G(s, m);
  RVec x(y.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    const RVec& shift = lat.coset_shift(static_cast<std::size_t>(k));
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = y[a] + shift[a];
    for (Eigen::Index j = 0; j < s; ++j) G(j, k) = g(static_cast<std::size_t>(j), p, x);
  }
  return G;
}

Eigen::MatrixXcd ModulationPiece::matrix(std::size_t point) const {
  Eigen::MatrixXcd G(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < m; ++k) G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = at(point, j, k);
  return G;
}

ModulationField::ModulationField(const SymbolSource& g, SamplingLattice lat, std::size_t resolution)
    : lat_(std::move(lat)), grid_(lat_, resolution), s_(g.s()) {
  check_regime(lat_.dim(), lat_.N());
  const std::size_t m = lat_.m();
  for (std::size_t p = 0; p < static_cast<std::size_t>(lat_.N()); ++p) {
    ModulationPiece piece{p, s_, m, std::vector<cplx>(grid_.size() * s_ * m)};
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const RVec y = grid_.point(i);
      const Eigen::MatrixXcd G = modulation_matrix_at(g, lat_, p, y);
      for (std::size_t j = 0; j < s_; ++j)
        for (std::size_t k = 0; k < m; ++k)
          piece.entries[(i * s_ + j) * m + k] = G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    pieces_.push_back(std::move(piece));
  }
}

std::vector<std::vector<cplx>> ModulationField::apply(std::size_t p, const PatchVector& F) const {
  const std::size_t m = lat_.m();
  if (F.components.size() != m || F.grid.size() != grid_.size()) throw Error(ErrorKind::ShapeMismatch, "patch vector does not match the field");
  const ModulationPiece& piece = pieces_[p];
  std::vector<std::vector<cplx>> out(s_, std::vector<cplx>(grid_.size()));
  for (std::size_t i = 0; i < grid_.size(); ++i)
    for (std::size_t j = 0; j < s_; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < m; ++k) acc += piece.at(i, j, k) * F.components[k][i];
      out[j][i] = acc;
    }
  return out;
}

SpectralBounds spectral_bounds(const ModulationField& field) {
  SpectralBounds b;
  b.A_G = std::numeric_limits<double>::infinity();
  b.B_G = -1.0;
  for (std::size_t p = 0; p < field.pieces(); ++p) {
    const ModulationPiece& piece = field.piece(p);
    std::vector<double> lo(piece.points()), hi(piece.points());
    for (std::size_t i = 0; i < piece.points(); ++i) {
      const Eigen::MatrixXcd G = piece.matrix(i);
      const Eigen::MatrixXcd H = G.adjoint() * G;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
      lo[i] = std::max(0.0, es.eigenvalues()(0));
      hi[i] = std::max(0.0, es.eigenvalues()(H.rows() - 1));
      if (lo[i] < b.A_G) {
        b.A_G = lo[i];
        b.argmin_p = p;
        b.argmin_point = i;
      }
      if (hi[i] > b.B_G) {
        b.B_G = hi[i];
        b.argmax_p = p;
        b.argmax_point = i;
      }
    }
    b.lambda_min.push_back(std::move(lo));
    b.lambda_max.push_back(std::move(hi));
  }
  b.argmin_y = field.grid().point(b.argmin_point);
  b.argmax_y = field.grid().point(b.argmax_point);
  return b;
}

RefinedBounds spectral_bounds_refined(const SymbolSource& g, const SamplingLattice& lat, std::size_t resolution) {
  RefinedBounds r;
  r.coarse = spectral_bounds(ModulationField(g, lat, resolution));
  r.fine = spectral_bounds(ModulationField(g, lat, 2 * resolution));
  const double floor = 1e-12 * std::max(r.fine.B_G, 1e-300);
  r.change_A = std::abs(r.fine.A_G - r.coarse.A_G) / std::max({r.fine.A_G, r.coarse.A_G, floor});
  r.change_B = std::abs(r.fine.B_G - r.coarse.B_G) / std::max({r.fine.B_G, r.coarse.B_G, floor});
  if (r.fine.A_G <= floor && r.coarse.A_G <= floor) r.change_A = 0.0;
  r.converged = r.change_A < 0.01 && r.change_B < 0.01;
  return r;
}

Completeness completeness_test(const ModulationField& field, double rank_tol, double budget) {
  Completeness c;
  c.min_sigma_ratio = std::numeric_limits<double>::infinity();
  std::size_t total = 0;
  for (std::size_t p = 0; p < field.pieces(); ++p) {
    const ModulationPiece& piece = field.piece(p);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < piece.points(); ++i) {
      double ratio = 0.0;
      if (piece.s >= piece.m) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(piece.matrix(i));
        const auto& sv = svd.singularValues();
        ratio = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
      }
      c.min_sigma_ratio = std::min(c.min_sigma_ratio, ratio);
      if (!(ratio > rank_tol)) ++bad;
    }
    total += piece.points();
    c.deficient_points += bad;
    c.per_piece.push_back(static_cast<double>(bad) <= budget * static_cast<double>(piece.points()));
  }
  c.complete = static_cast<double>(c.deficient_points) <= budget * static_cast<double>(total) &&
               std::all_of(c.per_piece.begin(), c.per_piece.end(), [](bool v) { return v; });
  return c;
}

SystemClassification classify(const SpectralBounds& bounds, std::size_t s, std::size_t m, const Completeness& completeness,
                              double frame_floor, double blowup_cap) {
  SystemClassification c;
  const auto md = static_cast<double>(m);
  c.complete = completeness.complete;
  c.bessel = bounds.B_G < blowup_cap;
  c.bessel_bound = bounds.B_G / md;
  c.frame = c.bessel && c.complete && bounds.A_G > frame_floor;
  if (c.frame) {
    c.frame_lower = bounds.A_G / md;
    c.frame_upper = bounds.B_G / md;
  }
  c.riesz = c.frame && s == m;
  return c;
}

}  // namespace sisamp
