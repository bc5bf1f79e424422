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

#include "sisamp/filters.hpp"

#include <algorithm>
#include <cmath>

namespace sisamp {

namespace {

void check_point(const FilterBank& bank, std::span<const double> t) {
  if (t.size() != static_cast<std::size_t>(bank.dim())) throw Error(ErrorKind::ShapeMismatch, "sample point has wrong dimension");
}

Box shifted(const Box& b, std::span<const double> t) {
  Box out = b;
  for (std::size_t a = 0; a < t.size(); ++a) {
    out.lower[a] += t[a];
    out.upper[a] += t[a];
  }
  return out;
}

bool inside(const Box& inner, const Box& outer) {
  for (std::size_t a = 0; a < inner.lower.size(); ++a)
    if (inner.lower[a] < outer.lower[a] - 1e-12 || inner.upper[a] > outer.upper[a] + 1e-12) return false;
  return true;
}

bool overlaps(const Box& a, const Box& b) {
  for (std::size_t u = 0; u < a.lower.size(); ++u)
    if (a.upper[u] < b.lower[u] || b.upper[u] < a.lower[u]) return false;
  return true;
}

// Grid-point quadrature of sum_q f_q(x) w_q(x) over the points of f's grid in `region`.
template <class Weight>
cplx grid_sum(std::span<const GridFunction> f, const Box& region, Weight&& w) {
  const Grid& grid = f.front().grid();
  const int d = grid.dim();
  const auto ud = static_cast<std::size_t>(d);
  std::vector<std::size_t> lo(ud), ext(ud), idx(ud);
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) {
    const auto u = static_cast<std::size_t>(a);
    const double h = grid.spacing(a);
    const double l = grid.box().lower[u];
    const auto i0 = std::max<long long>(0, static_cast<long long>(std::floor((region.lower[u] - l) / h - 0.5)));
    const auto i1 = std::min<long long>(static_cast<long long>(grid.count(a)) - 1,
                                        static_cast<long long>(std::ceil((region.upper[u] - l) / h - 0.5)));
    if (i1 < i0) return {};
    lo[u] = static_cast<std::size_t>(i0);
    ext[u] = static_cast<std::size_t>(i1 - i0 + 1);
    total *= ext[u];
  }
  RVec x(ud);
  cplx acc{};
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    for (std::size_t u = ud; u-- > 0;) {
      idx[u] = lo[u] + rem % ext[u];
      rem /= ext[u];
      x[u] = grid.coord(static_cast<int>(u), idx[u]);
    }
    const std::size_t flat = grid.flat(idx);
    for (std::size_t q = 0; q < f.size(); ++q) {
      const cplx v = f[q].values()[flat];
      if (v != cplx{}) acc += v * w(q, std::span<const double>(x));
    }
  }
  return acc * grid.cell_volume();
}

void check_grid_input(const FilterBank& bank, std::size_t j, std::span<const GridFunction> f, std::span<const double> t) {
  check_point(bank, t);
  if (f.size() != static_cast<std::size_t>(bank.r())) throw Error(ErrorKind::ShapeMismatch, "filter input needs r components");
  for (const auto& g : f)
    if (!g.grid().same_layout(f.front().grid())) throw Error(ErrorKind::ShapeMismatch, "filter input components must share a grid");
  if (!inside(shifted(bank.window(j), t), f.front().grid().box()))
    throw Error(ErrorKind::OutOfReliableRegion, "filter window leaves the tabulated box");
}

}  // namespace

FilterBank::FilterBank(int dim, int r, std::vector<FilterSystem> systems, bool strict_l1)
    : dim_(dim), r_(r), systems_(std::move(systems)) {
  if (systems_.empty()) throw Error(ErrorKind::ValidationError, "filter bank needs s >= 1");
  for (const auto& sys : systems_) {
    if (const auto* pe = std::get_if<PointEvaluation>(&sys)) {
      if (strict_l1) throw Error(ErrorKind::ValidationError, "point evaluation is not an L1 kernel");
      if (pe->component >= static_cast<std::size_t>(r_)) throw Error(ErrorKind::ValidationError, "point evaluation component out of range");
      if (pe->offset.size() != static_cast<std::size_t>(dim_)) throw Error(ErrorKind::ShapeMismatch, "point evaluation offset has wrong dimension");
    } else {
      const auto& conv = std::get<Convolution>(sys);
      if (conv.kernels.size() != static_cast<std::size_t>(r_)) throw Error(ErrorKind::ShapeMismatch, "convolution needs r kernels");
      for (const auto& k : conv.kernels)
        if (k.dim() != dim_) throw Error(ErrorKind::ShapeMismatch, "kernel has wrong dimension");
    }
  }
}

Box FilterBank::window(std::size_t j) const {
  if (const auto* pe = std::get_if<PointEvaluation>(&systems_[j])) {
    Box b = Box::cube(dim_, 0.0, 0.0);
    for (std::size_t a = 0; a < pe->offset.size(); ++a) b.lower[a] = b.upper[a] = -pe->offset[a];
    return b;
  }
  std::optional<Box> hull;
  for (const auto& k : std::get<Convolution>(systems_[j]).kernels) {
    if (k.is_zero()) continue;
    const Box s = k.support();
    Box w = s;
    for (std::size_t a = 0; a < s.lower.size(); ++a) {
      w.lower[a] = -s.upper[a];
      w.upper[a] = -s.lower[a];
    }
    if (!hull) {
      hull = w;
    } else {
      for (std::size_t a = 0; a < w.lower.size(); ++a) {
        hull->lower[a] = std::min(hull->lower[a], w.lower[a]);
        hull->upper[a] = std::max(hull->upper[a], w.upper[a]);
      }
    }
  }
  return hull ? *hull : Box::cube(dim_, 0.0, 0.0);
}

long long FilterBank::support_radius() const {
  double reach = 0.0;
  for (std::size_t j = 0; j < systems_.size(); ++j) {
    const Box w = window(j);
    for (std::size_t a = 0; a < w.lower.size(); ++a) reach = std::max({reach, std::abs(w.lower[a]), std::abs(w.upper[a])});
  }
  return static_cast<long long>(std::ceil(reach - 1e-12));
}

cplx apply_filter(const FilterBank& bank, std::size_t j, std::span<const GridFunction> f, std::span<const double> t) {
  check_grid_input(bank, j, f, t);
  if (const auto* pe = std::get_if<PointEvaluation>(&bank.system(j))) {
    RVec x(t.begin(), t.end());
    for (std::size_t a = 0; a < x.size(); ++a) x[a] -= pe->offset[a];
    return f[pe->component].evaluate(x);
  }
  const auto& kernels = std::get<Convolution>(bank.system(j)).kernels;
  RVec y(t.size());
  return grid_sum(f, shifted(bank.window(j), t), [&](std::size_t q, std::span<const double> x) {
    for (std::size_t a = 0; a < y.size(); ++a) y[a] = t[a] - x[a];
    return kernels[q](y);
  });
}

cplx apply_filter_inner(const FilterBank& bank, std::size_t j, std::span<const GridFunction> f,
                        std::span<const double> t) {
  check_grid_input(bank, j, f, t);
  if (bank.is_point(j)) return apply_filter(bank, j, f, t);
  std::vector<Profile> h;
  for (const auto& k : std::get<Convolution>(bank.system(j)).kernels) h.push_back(k.reflected_conjugate());
  RVec y(t.size());
  return grid_sum(f, shifted(bank.window(j), t), [&](std::size_t q, std::span<const double> x) {
    for (std::size_t a = 0; a < y.size(); ++a) y[a] = x[a] - t[a];
    return std::conj(h[q](y));
  });
}

cplx filtered_generator(const FilterBank& bank, std::size_t j, const GeneratorSet& gens, std::size_t p,
                        std::span<const double> x) {
  if (const auto* pe = std::get_if<PointEvaluation>(&bank.system(j))) {
    RVec y(x.begin(), x.end());
    for (std::size_t a = 0; a < y.size(); ++a) y[a] -= pe->offset[a];
    return gens.component(p, pe->component)(y);
  }
  const auto& kernels = std::get<Convolution>(bank.system(j)).kernels;
  cplx acc{};
  for (std::size_t q = 0; q < kernels.size(); ++q)
    acc += profile_inner_product(gens.component(p, q), kernels[q].reflected_conjugate(), x);
  return acc;
}

cplx apply_filter_part(const FilterBank& bank, std::size_t j, const SpaceElement& f, std::size_t p,
                       std::span<const double> t) {
  check_point(bank, t);
  const GeneratorSet& gens = *f.generators();
  const Box w = shifted(bank.window(j), t);
  if (!inside(w, f.grid().box())) {
    const auto content = f.content_support(p);
    if (content && overlaps(w, *content))
      throw Error(ErrorKind::OutOfReliableRegion, "filter window leaves the working box where f has content");
  }
  // (L phi_p)(y) can be nonzero only for y + window meeting supp phi_p.
  const Box sup = gens.support(p);
  const Box wj = bank.window(j);
  const IndexedArray& a = f.coefficients()[p];
  const auto ud = static_cast<std::size_t>(bank.dim());
  IVec lo(ud), hi(ud);
  for (std::size_t u = 0; u < ud; ++u) {
    lo[u] = std::max(a.box().lo()[u], static_cast<long long>(std::floor(t[u] - (sup.upper[u] - wj.lower[u]))));
    hi[u] = std::min(a.box().hi()[u], static_cast<long long>(std::ceil(t[u] - (sup.lower[u] - wj.upper[u]))));
    if (hi[u] < lo[u]) return {};
  }
  const IndexBox range(lo, hi);
  IVec alpha(ud);
  RVec y(ud);
  cplx acc{};
  for (std::size_t k = 0; k < range.size(); ++k) {
    range.at(k, alpha);
    const cplx c = a.at(alpha);
    if (c == cplx{}) continue;
    for (std::size_t u = 0; u < ud; ++u) y[u] = t[u] - static_cast<double>(alpha[u]);
    acc += c * filtered_generator(bank, j, gens, p, y);
  }
  return acc;
}

cplx apply_filter(const FilterBank& bank, std::size_t j, const SpaceElement& f, std::span<const double> t) {
  cplx acc{};
  for (std::size_t p = 0; p < f.parts(); ++p) acc += apply_filter_part(bank, j, f, p, t);
  return acc;
}

FilterSamples generator_filter_samples(const FilterBank& bank, const GeneratorSet& gens, std::size_t j,
                                       std::size_t p, long long K_sym, bool strict) {
  const int d = gens.dim();
  const long long reach = gens.support_radius() + bank.support_radius() + 1;
  const IndexBox inner(d, K_sym);
  const IndexBox outer(d, std::max(K_sym, reach));
  FilterSamples out{IndexedArray(inner), false, 0.0};
  IVec alpha(static_cast<std::size_t>(d));
  RVec x(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < outer.size(); ++k) {
    outer.at(k, alpha);
    for (std::size_t u = 0; u < x.size(); ++u) x[u] = static_cast<double>(alpha[u]);
    cplx v = filtered_generator(bank, j, gens, p, x);
    if (std::abs(v) < 1e-15) v = 0.0;
    if (inner.contains(alpha))
      out.values.ref(alpha) = v;
    else
      out.lost_max = std::max(out.lost_max, std::abs(v));
  }
  out.truncated = out.lost_max > 1e-12;
  if (out.truncated && strict)
    throw Error(ErrorKind::TruncationLoss, "filtered generator samples reach beyond K_sym = " + std::to_string(K_sym));
  return out;
}

SymbolTable::SymbolTable(int dim, int N, std::size_t s, std::vector<std::vector<Term>> terms,
                         std::vector<FilterSamples> samples)
    : dim_(dim), N_(N), s_(s), terms_(std::move(terms)), samples_(std::move(samples)) {
  if (terms_.size() != s_ * static_cast<std::size_t>(N_)) throw Error(ErrorKind::ShapeMismatch, "symbol table needs s*N entries");
}

bool SymbolTable::truncated() const {
  return std::any_of(samples_.begin(), samples_.end(), [](const FilterSamples& s) { return s.truncated; });
}

cplx SymbolTable::evaluate(std::size_t j, std::size_t p, std::span<const double> x) const {
  cplx acc{};
  for (const auto& term : terms(j, p)) {
    double ph = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) ph += static_cast<double>(term.alpha[a]) * x[a];
    acc += term.value * std::polar(1.0, -kTwoPi * N_ * ph);
  }
  return acc;
}

GridFunction SymbolTable::tabulate(std::size_t j, std::size_t p, double R) const {
  const Grid grid = Grid::with_resolution(subcube(dim_, N_, p), R);
  return GridFunction::tabulate(grid, [&](std::span<const double> x) { return evaluate(j, p, x); }, Extension::periodic);
}

double SymbolTable::ess_sup(std::size_t j, std::size_t p, std::size_t res) const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(dim_), res);
  const Grid grid(subcube(dim_, N_, p), counts);
  double sup = 0.0;
  RVec x(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    sup = std::max(sup, std::abs(evaluate(j, p, x)));
  }
  return sup;
}

SymbolTable build_symbols(const FilterBank& bank, const GeneratorSet& gens, long long K_sym, bool strict) {
  if (bank.dim() != gens.dim() || bank.r() != gens.r()) throw Error(ErrorKind::ShapeMismatch, "filter bank does not match the generators");
  const auto N = static_cast<std::size_t>(gens.N());
  std::vector<std::vector<SymbolTable::Term>> terms;
  std::vector<FilterSamples> samples;
  for (std::size_t j = 0; j < bank.s(); ++j) {
    for (std::size_t p = 0; p < N; ++p) {
      FilterSamples fs = generator_filter_samples(bank, gens, j, p, K_sym, strict);
      std::vector<SymbolTable::Term> t;
      for (std::size_t k = 0; k < fs.values.size(); ++k)
        if (fs.values[k] != cplx{}) t.push_back({fs.values.box().at(k), fs.values[k]});
      terms.push_back(std::move(t));
      samples.push_back(std::move(fs));
    }
  }
  return SymbolTable(gens.dim(), gens.N(), bank.s(), std::move(terms), std::move(samples));
}

}  // namespace sisamp
