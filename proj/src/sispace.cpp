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

#include "sisamp/sispace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "sisamp/random.hpp"
#include "sisamp/simd.hpp"

namespace sisamp {

namespace {

constexpr double kGaussNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
constexpr double kGaussWeights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
constexpr int kGaussCellsPerUnit = 16;

long long integer_resolution(double spacing) {
  const double R = 1.0 / spacing;
  const long long r = std::llround(R);
  if (r < 1 || std::abs(R - static_cast<double>(r)) > 1e-9 * R)
    throw Error(ErrorKind::DomainMismatch, "synthesis grid needs an integer number of samples per unit length");
  return r;
}

}  // namespace

double Spline1D::operator()(double x) const {
  const double u = (x - shift) / width;
  switch (kind) {
    case SplineKind::zero: return 0.0;
    case SplineKind::box: return (u >= 0.0 && u < 1.0) ? 1.0 : 0.0;
    case SplineKind::hat: return std::max(0.0, 1.0 - std::abs(u));
    case SplineKind::cubic: {
      const double a = std::abs(u);
      if (a < 1.0) return (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0;
      if (a < 2.0) return (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
      return 0.0;
    }
  }
  return 0.0;
}

double Spline1D::lower() const {
  switch (kind) {
    case SplineKind::hat: return shift - width;
    case SplineKind::cubic: return shift - 2.0 * width;
    default: return shift;
  }
}

double Spline1D::upper() const {
  switch (kind) {
    case SplineKind::box: return shift + width;
    case SplineKind::hat: return shift + width;
    case SplineKind::cubic: return shift + 2.0 * width;
    default: return shift;
  }
}

Profile Profile::zero(int dim) {
  Profile p;
  p.dim_ = dim;
  p.zero_ = true;
  return p;
}

Profile Profile::spline(std::vector<Spline1D> axes, cplx scale) {
  Profile p;
  p.dim_ = static_cast<int>(axes.size());
  p.zero_ = scale == cplx{} || std::any_of(axes.begin(), axes.end(), [](const Spline1D& s) {
              return s.kind == SplineKind::zero || !(s.width > 0.0);
            });
  p.axes_ = std::move(axes);
  p.scale_ = scale;
  return p;
}

Profile Profile::spline(int dim, SplineKind kind, RVec shift) {
  if (shift.empty()) shift.assign(static_cast<std::size_t>(dim), 0.0);
  if (shift.size() != static_cast<std::size_t>(dim)) throw Error(ErrorKind::ShapeMismatch, "profile shift has wrong dimension");
  std::vector<Spline1D> axes;
  for (double s : shift) axes.push_back(Spline1D{kind, s, 1.0});
  return spline(std::move(axes));
}

Profile Profile::box_average(RVec widths) {
  std::vector<Spline1D> axes;
  double scale = 1.0;
  for (double w : widths) {
    if (!(w > 0.0)) throw Error(ErrorKind::ValidationError, "box kernel width must be positive");
    axes.push_back(Spline1D{SplineKind::box, -0.5 * w, w});
    scale /= w;
  }
  return spline(std::move(axes), scale);
}

Profile Profile::tabulated(GridFunction g) {
  Profile p;
  p.dim_ = g.grid().dim();
  p.zero_ = false;
  p.table_ = std::make_shared<const GridFunction>(GridFunction(g.grid(), g.values(), Extension::zero));
  return p;
}

cplx Profile::operator()(std::span<const double> x) const {
  if (zero_) return {};
  double buf[8];
  std::span<const double> xs = x;
  if (reflect_) {
    for (int a = 0; a < dim_; ++a) buf[a] = -x[static_cast<std::size_t>(a)];
    xs = std::span<const double>(buf, static_cast<std::size_t>(dim_));
  }
  cplx v;
  if (table_) {
    v = table_->evaluate(xs);
  } else {
    double prod = 1.0;
    for (int a = 0; a < dim_ && prod != 0.0; ++a) prod *= axes_[static_cast<std::size_t>(a)](xs[static_cast<std::size_t>(a)]);
    v = scale_ * prod;
  }
  return conjugate_ ? std::conj(v) : v;
}

Box Profile::support() const {
  Box b = Box::cube(dim_, 0.0, 0.0);
  if (zero_) return b;
  if (table_) {
    b = table_->grid().box();
  } else {
    for (int a = 0; a < dim_; ++a) {
      b.lower[static_cast<std::size_t>(a)] = axes_[static_cast<std::size_t>(a)].lower();
      b.upper[static_cast<std::size_t>(a)] = axes_[static_cast<std::size_t>(a)].upper();
    }
  }
  if (reflect_) {
    for (int a = 0; a < dim_; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      const double lo = -b.upper[ua];
      b.upper[ua] = -b.lower[ua];
      b.lower[ua] = lo;
    }
  }
  return b;
}

Profile Profile::reflected_conjugate() const {
  Profile p = *this;
  p.reflect_ = !reflect_;
  p.conjugate_ = !conjugate_;
  return p;
}

GeneratorSet::GeneratorSet(int dim, int r, std::vector<Generator> generators)
    : dim_(dim), r_(r), gens_(std::move(generators)) {
  if (dim_ < 1 || r_ < 1 || gens_.empty()) throw Error(ErrorKind::ValidationError, "generator set needs d, r, N >= 1");
  for (const auto& g : gens_) {
    if (g.components.size() != static_cast<std::size_t>(r_))
      throw Error(ErrorKind::ShapeMismatch, "every generator needs r components");
    for (const auto& c : g.components)
      if (c.dim() != dim_) throw Error(ErrorKind::ShapeMismatch, "generator component has wrong dimension");
  }
}

Box GeneratorSet::support(std::size_t j) const {
  std::optional<Box> hull;
  for (const auto& c : gens_[j].components) {
    if (c.is_zero()) continue;
    const Box s = c.support();
    if (!hull) {
      hull = s;
      continue;
    }
    for (int a = 0; a < dim_; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      hull->lower[ua] = std::min(hull->lower[ua], s.lower[ua]);
      hull->upper[ua] = std::max(hull->upper[ua], s.upper[ua]);
    }
  }
  return hull ? *hull : Box::cube(dim_, 0.0, 0.0);
}

long long GeneratorSet::support_radius() const {
  double reach = 0.0;
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    const Box s = support(j);
    for (int a = 0; a < dim_; ++a) {
      reach = std::max(reach, std::abs(s.lower[static_cast<std::size_t>(a)]));
      reach = std::max(reach, std::abs(s.upper[static_cast<std::size_t>(a)]));
    }
  }
  return static_cast<long long>(std::ceil(reach - 1e-12));
}

double GeneratorSet::continuity_defect(double R) const {
  double worst = 0.0;
  for (const auto& g : gens_) {
    for (const auto& c : g.components) {
      if (c.is_zero()) continue;
      Box b = c.support();
      for (int a = 0; a < dim_; ++a) {
        b.lower[static_cast<std::size_t>(a)] -= 2.0 / R;
        b.upper[static_cast<std::size_t>(a)] += 2.0 / R;
      }
      const GridFunction t = GridFunction::tabulate(Grid::with_resolution(b, R), [&](std::span<const double> x) { return c(x); });
      const Grid& grid = t.grid();
      std::vector<std::size_t> idx(static_cast<std::size_t>(dim_));
      for (std::size_t f = 0; f < grid.size(); ++f) {
        std::size_t rem = f;
        for (int a = dim_; a-- > 0;) {
          idx[static_cast<std::size_t>(a)] = rem % grid.count(a);
          rem /= grid.count(a);
        }
        for (int a = 0; a < dim_; ++a) {
          const auto ua = static_cast<std::size_t>(a);
          if (idx[ua] + 1 >= grid.count(a)) continue;
          ++idx[ua];
          worst = std::max(worst, std::abs(t.values()[grid.flat(idx)] - t.values()[f]));
          --idx[ua];
        }
      }
    }
  }
  return worst;
}

double GeneratorSet::translate_energy_sup(double R) const {
  const Grid grid = Grid::with_resolution(Box::cube(dim_, 0.0, 1.0), R);
  const long long rho = support_radius() + 1;
  const IndexBox shifts(dim_, rho);
  double sup = 0.0;
  RVec x(static_cast<std::size_t>(dim_)), y(static_cast<std::size_t>(dim_));
  IVec alpha(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    double s = 0.0;
    for (std::size_t f = 0; f < shifts.size(); ++f) {
      shifts.at(f, alpha);
      for (int a = 0; a < dim_; ++a) y[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] - static_cast<double>(alpha[static_cast<std::size_t>(a)]);
      for (const auto& g : gens_)
        for (const auto& c : g.components) s += std::norm(c(y));
    }
    sup = std::max(sup, s);
  }
  return sup;
}

CoefficientArray::CoefficientArray(std::size_t N, IndexBox box) {
  if (N == 0) throw Error(ErrorKind::ValidationError, "coefficient array needs N >= 1");
  arrays_.assign(N, IndexedArray(std::move(box)));
}

CoefficientArray::CoefficientArray(std::vector<IndexedArray> per_generator) : arrays_(std::move(per_generator)) {
  if (arrays_.empty()) throw Error(ErrorKind::ValidationError, "coefficient array needs N >= 1");
  for (const auto& a : arrays_)
    if (a.box().lo() != arrays_.front().box().lo() || a.box().hi() != arrays_.front().box().hi())
      throw Error(ErrorKind::ShapeMismatch, "coefficient arrays must share one index box");
}

double CoefficientArray::norm2() const {
  double s = 0.0;
  for (const auto& a : arrays_) s += a.norm2();
  return s;
}

SpaceElement::SpaceElement(std::shared_ptr<const GeneratorSet> gens, Grid grid, CoefficientArray coeffs,
                           std::vector<std::vector<std::vector<cplx>>> parts)
    : gens_(std::move(gens)), grid_(std::move(grid)), coeffs_(std::move(coeffs)), parts_(std::move(parts)) {
  const auto r = static_cast<std::size_t>(gens_->r());
  total_.assign(r, std::vector<cplx>(grid_.size(), cplx{}));
  for (const auto& part : parts_) {
    if (part.size() != r) throw Error(ErrorKind::ShapeMismatch, "space element part needs r components");
    for (std::size_t q = 0; q < r; ++q) {
      if (part[q].size() != grid_.size()) throw Error(ErrorKind::ShapeMismatch, "space element part does not match grid");
      for (std::size_t i = 0; i < grid_.size(); ++i) total_[q][i] += part[q][i];
    }
  }
}

GridFunction SpaceElement::total_function(std::size_t q) const { return GridFunction(grid_, total_[q], Extension::zero); }

cplx SpaceElement::evaluate_part(std::size_t p, std::size_t q, std::span<const double> x) const {
  const Profile& phi = gens_->component(p, q);
  if (phi.is_zero()) return {};
  const int d = gens_->dim();
  const Box sup = phi.support();
  const IndexedArray& a = coeffs_[p];
  // alpha with x - alpha inside the support
  IVec lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int ax = 0; ax < d; ++ax) {
    const auto u = static_cast<std::size_t>(ax);
    lo[u] = std::max(a.box().lo()[u], static_cast<long long>(std::floor(x[u] - sup.upper[u])));
    hi[u] = std::min(a.box().hi()[u], static_cast<long long>(std::ceil(x[u] - sup.lower[u])));
    if (hi[u] < lo[u]) return {};
  }
  const IndexBox range(lo, hi);
  cplx acc{};
  IVec alpha(static_cast<std::size_t>(d));
  RVec y(static_cast<std::size_t>(d));
  for (std::size_t f = 0; f < range.size(); ++f) {
    range.at(f, alpha);
    const cplx c = a.at(alpha);
    if (c == cplx{}) continue;
    for (int ax = 0; ax < d; ++ax) y[static_cast<std::size_t>(ax)] = x[static_cast<std::size_t>(ax)] - static_cast<double>(alpha[static_cast<std::size_t>(ax)]);
    acc += c * phi(y);
  }
  return acc;
}

cplx SpaceElement::evaluate(std::size_t q, std::span<const double> x) const {
  cplx acc{};
  for (std::size_t p = 0; p < parts_.size(); ++p) acc += evaluate_part(p, q, x);
  return acc;
}

std::optional<Box> SpaceElement::content_support(std::size_t p) const {
  const int d = gens_->dim();
  const IndexedArray& a = coeffs_[p];
  const Box sup = gens_->support(p);
  std::optional<Box> hull;
  IVec alpha(static_cast<std::size_t>(d));
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] == cplx{}) continue;
    a.box().at(f, alpha);
    Box s = sup;
    for (int ax = 0; ax < d; ++ax) {
      const auto u = static_cast<std::size_t>(ax);
      s.lower[u] += static_cast<double>(alpha[u]);
      s.upper[u] += static_cast<double>(alpha[u]);
    }
    if (!hull) {
      hull = s;
    } else {
      for (int ax = 0; ax < d; ++ax) {
        const auto u = static_cast<std::size_t>(ax);
        hull->lower[u] = std::min(hull->lower[u], s.lower[u]);
        hull->upper[u] = std::max(hull->upper[u], s.upper[u]);
      }
    }
  }
  return hull;
}

double SpaceElement::norm2() const {
  double s = 0.0;
  for (const auto& t : total_) s += simd::norm2(t);
  return s * grid_.cell_volume();
}

double SpaceElement::norm2_on(const Box& region) const {
  double s = 0.0;
  RVec x(static_cast<std::size_t>(grid_.dim()));
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    grid_.point(i, x);
    if (!region.contains(x)) continue;
    for (const auto& t : total_) s += std::norm(t[i]);
  }
  return s * grid_.cell_volume();
}

Grid working_grid(const GeneratorSet& gens, long long K, double R) {
  const auto reach = static_cast<double>(K + gens.support_radius());
  return Grid::with_resolution(Box::cube(gens.dim(), -reach, reach), R);
}

SpaceElement synthesize(std::shared_ptr<const GeneratorSet> gens, const CoefficientArray& coeffs, const Grid& grid,
                        BoxPolicy policy) {
  const int d = gens->dim();
  const auto ud = static_cast<std::size_t>(d);
  if (coeffs.N() != static_cast<std::size_t>(gens->N())) throw Error(ErrorKind::ShapeMismatch, "need one coefficient array per generator");
  if (coeffs.box().dim() != d || grid.dim() != d) throw Error(ErrorKind::ShapeMismatch, "dimension mismatch in synthesize");

  std::vector<long long> R(ud), low(ud);
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    R[ua] = integer_resolution(grid.spacing(a));
    const double l = grid.box().lower[ua] * static_cast<double>(R[ua]);
    low[ua] = std::llround(l);
    if (std::abs(l - static_cast<double>(low[ua])) > 1e-9) throw Error(ErrorKind::DomainMismatch, "synthesis grid corner is not grid aligned");
  }

  const auto r = static_cast<std::size_t>(gens->r());
  std::vector<std::vector<std::vector<cplx>>> parts(coeffs.N(), std::vector<std::vector<cplx>>(r, std::vector<cplx>(grid.size())));
  IVec alpha(ud);
  for (std::size_t p = 0; p < coeffs.N(); ++p) {
    const IndexedArray& a = coeffs[p];
    if (policy == BoxPolicy::strict) {
      const Box sup = gens->support(p);
      for (std::size_t f = 0; f < a.size(); ++f) {
        if (a[f] == cplx{}) continue;
        a.box().at(f, alpha);
        for (std::size_t u = 0; u < ud; ++u) {
          if (sup.lower[u] + static_cast<double>(alpha[u]) < grid.box().lower[u] - 1e-12 ||
              sup.upper[u] + static_cast<double>(alpha[u]) > grid.box().upper[u] + 1e-12)
            throw Error(ErrorKind::BoxTooSmall, "translate of generator " + std::to_string(p) + " leaves the working box");
        }
      }
    }
    for (std::size_t q = 0; q < r; ++q) {
      const Profile& phi = gens->component(p, q);
      if (phi.is_zero()) continue;
      // Stamp: phi sampled at the midpoints (k + 1/2)/R, k in [rlo, rhi).
      const Box sup = phi.support();
      IVec rlo(ud), ext(ud);
      std::vector<std::size_t> sext(ud);
      for (std::size_t u = 0; u < ud; ++u) {
        rlo[u] = static_cast<long long>(std::floor(sup.lower[u] * static_cast<double>(R[u]) - 1e-9));
        const auto rhi = static_cast<long long>(std::ceil(sup.upper[u] * static_cast<double>(R[u]) + 1e-9));
        ext[u] = rhi - rlo[u];
        sext[u] = static_cast<std::size_t>(ext[u]);
      }
      RVec lo_corner(ud), hi_corner(ud);
      for (std::size_t u = 0; u < ud; ++u) {
        lo_corner[u] = static_cast<double>(rlo[u]) / static_cast<double>(R[u]);
        hi_corner[u] = static_cast<double>(rlo[u] + ext[u]) / static_cast<double>(R[u]);
      }
      const GridFunction stamp = GridFunction::tabulate(Grid(Box{lo_corner, hi_corner}, sext), [&](std::span<const double> x) { return phi(x); });

      const std::size_t row_len = sext[ud - 1];
      std::size_t rows = 1;
      for (std::size_t u = 0; u + 1 < ud; ++u) rows *= sext[u];
      std::vector<long long> gidx(ud);
      std::vector<std::size_t> row_idx(ud);
      auto& out = parts[p][q];
      for (std::size_t f = 0; f < a.size(); ++f) {
        const cplx c = a[f];
        if (c == cplx{}) continue;
        a.box().at(f, alpha);
        // global index = stamp index + rlo + alpha R - low
        IVec off(ud);
        for (std::size_t u = 0; u < ud; ++u) off[u] = rlo[u] + alpha[u] * R[u] - low[u];
        const long long n_last = static_cast<long long>(grid.count(d - 1));
        const long long k0 = std::max<long long>(0, -off[ud - 1]);
        const long long k1 = std::min<long long>(ext[ud - 1], n_last - off[ud - 1]);
        if (k1 <= k0) continue;
        for (std::size_t row = 0; row < rows; ++row) {
          std::size_t rem = row;
          bool inside = true;
          for (std::size_t u = ud - 1; u-- > 0;) {
            const std::size_t k = rem % sext[u];
            rem /= sext[u];
            const long long g = static_cast<long long>(k) + off[u];
            if (g < 0 || g >= static_cast<long long>(grid.count(static_cast<int>(u)))) { inside = false; break; }
            row_idx[u] = static_cast<std::size_t>(g);
          }
          if (!inside) continue;
          row_idx[ud - 1] = static_cast<std::size_t>(k0 + off[ud - 1]);
          const std::size_t dst = grid.flat(row_idx);
          const std::size_t src = row * row_len + static_cast<std::size_t>(k0);
          simd::axpy(c, std::span<const cplx>(stamp.values().data() + src, static_cast<std::size_t>(k1 - k0)),
                     std::span<cplx>(out.data() + dst, static_cast<std::size_t>(k1 - k0)));
        }
      }
    }
  }
  return SpaceElement(std::move(gens), grid, coeffs, std::move(parts));
}

SpaceElement synthesis_operator_T(std::shared_ptr<const GeneratorSet> gens, const PatchFunction& F, long long K,
                                  const Grid& grid, BoxPolicy policy) {
  check_regime(F.dim(), F.N());
  if (F.N() != gens->N() || F.dim() != gens->dim())
    throw Error(ErrorKind::ShapeMismatch, "patch function needs one piece per generator");
  std::vector<IndexedArray> c;
  for (std::size_t j = 0; j < F.pieces(); ++j) c.push_back(fourier_coefficients(F, j, K));
  SpaceElement f = synthesize(std::move(gens), CoefficientArray(std::move(c)), grid, policy);
  f.set_source(F);
  return f;
}

cplx profile_inner_product(const Profile& a, const Profile& b, std::span<const double> shift) {
  if (a.is_zero() || b.is_zero()) return {};
  const int d = a.dim();
  const auto ud = static_cast<std::size_t>(d);
  const Box sa = a.support();
  const Box sb = b.support();
  std::vector<long long> c0(ud), c1(ud);
  for (std::size_t u = 0; u < ud; ++u) {
    const double lo = std::max(sa.lower[u], sb.lower[u] + shift[u]);
    const double hi = std::min(sa.upper[u], sb.upper[u] + shift[u]);
    if (!(hi > lo)) return {};
    c0[u] = static_cast<long long>(std::floor(lo * kGaussCellsPerUnit + 1e-9));
    c1[u] = static_cast<long long>(std::ceil(hi * kGaussCellsPerUnit - 1e-9));
  }
  const double h = 1.0 / kGaussCellsPerUnit;
  std::vector<long long> cell(c0);
  std::vector<int> node(ud, 0);
  RVec x(ud), y(ud);
  cplx acc{};
  while (true) {
    std::fill(node.begin(), node.end(), 0);
    while (true) {
      double w = 1.0;
      for (std::size_t u = 0; u < ud; ++u) {
        x[u] = (static_cast<double>(cell[u]) + 0.5 * (1.0 + kGaussNodes[node[u]])) * h;
        y[u] = x[u] - shift[u];
        w *= 0.5 * h * kGaussWeights[node[u]];
      }
      acc += w * a(x) * std::conj(b(y));
      std::size_t u = ud;
      while (u-- > 0) {
        if (++node[u] < 4) break;
        node[u] = 0;
        if (u == 0) { u = ud; break; }
      }
      if (u == ud) break;
    }
    std::size_t u = ud;
    while (u-- > 0) {
      if (++cell[u] < c1[u]) break;
      cell[u] = c0[u];
      if (u == 0) { u = ud; break; }
    }
    if (u == ud) break;
  }
  return acc;
}

std::vector<IndexedArray> translate_gram(const GeneratorSet& gens) {
  const int d = gens.dim();
  const auto N = static_cast<std::size_t>(gens.N());
  const IndexBox deltas(d, 2 * gens.support_radius() + 1);
  std::vector<IndexedArray> out(N * N, IndexedArray(deltas));
  IVec delta(static_cast<std::size_t>(d));
  RVec shift(static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t f = 0; f < deltas.size(); ++f) {
        deltas.at(f, delta);
        for (int a = 0; a < d; ++a) shift[static_cast<std::size_t>(a)] = static_cast<double>(delta[static_cast<std::size_t>(a)]);
        cplx s{};
        for (int q = 0; q < gens.r(); ++q)
          s += profile_inner_product(gens.component(j, static_cast<std::size_t>(q)), gens.component(k, static_cast<std::size_t>(q)), shift);
        out[j * N + k][f] = s;
      }
    }
  }
  return out;
}

RieszEstimate riesz_bounds_estimate(std::shared_ptr<const GeneratorSet> gens, const RieszOptions& opts) {
  if (opts.trials < 1) throw Error(ErrorKind::ValidationError, "riesz estimate needs at least one trial");
  const int d = gens->dim();
  const auto ud = static_cast<std::size_t>(d);
  const auto N = static_cast<std::size_t>(gens->N());
  const auto gram = translate_gram(*gens);
  const IndexBox& deltas = gram.front().box();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  RieszEstimate est;
  est.trials = opts.trials;

  // Gram symbol sum_delta Gamma(delta) exp(-2 pi i delta.xi) on xi in {i/n}^d.
  {
    const std::size_t n = std::max<std::size_t>(2, opts.symbol_samples);
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= n;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    IVec delta(ud);
    Eigen::MatrixXcd H(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t t = 0; t < total; ++t) {
      RVec xi(ud);
      std::size_t rem = t;
      for (std::size_t a = ud; a-- > 0;) {
        xi[a] = static_cast<double>(rem % n) / static_cast<double>(n);
        rem /= n;
      }
      H.setZero();
      for (std::size_t f = 0; f < deltas.size(); ++f) {
        deltas.at(f, delta);
        double ph = 0.0;
        for (std::size_t a = 0; a < ud; ++a) ph += static_cast<double>(delta[a]) * xi[a];
        const cplx e = std::polar(1.0, -kTwoPi * ph);
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = 0; k < N; ++k)
            H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += gram[j * N + k][f] * e;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues()(0));
      hi = std::max(hi, es.eigenvalues()(static_cast<Eigen::Index>(N) - 1));
    }
    est.symbol_min = lo;
    est.symbol_max = hi;
  }

  const IndexBox coeff_box(d, opts.K_coeff);
  const std::size_t section = N * coeff_box.size();
  if (section <= opts.gram_limit) {
    const auto S = static_cast<Eigen::Index>(section);
    Eigen::MatrixXcd H(S, S);
    IVec alpha(ud), beta(ud), diff(ud);
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t fa = 0; fa < coeff_box.size(); ++fa) {
        coeff_box.at(fa, alpha);
        for (std::size_t k = 0; k < N; ++k) {
          for (std::size_t fb = 0; fb < coeff_box.size(); ++fb) {
            coeff_box.at(fb, beta);
            for (std::size_t a = 0; a < ud; ++a) diff[a] = beta[a] - alpha[a];
            H(static_cast<Eigen::Index>(j * coeff_box.size() + fa), static_cast<Eigen::Index>(k * coeff_box.size() + fb)) =
                gram[j * N + k].at(diff);
          }
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    est.gram_min = es.eigenvalues()(0);
    est.gram_max = es.eigenvalues()(S - 1);
  } else {
    est.gram_min = nan;
    est.gram_max = nan;
  }

  {
    const Grid grid = working_grid(*gens, opts.K_coeff, opts.resolution);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t t = 0; t < opts.trials; ++t) {
      Rng rng(derive_seed(opts.seed, t));
      CoefficientArray a(N, coeff_box);
      for (std::size_t j = 0; j < N; ++j)
        for (auto& v : a[j].values()) v = complex_gaussian(rng);
      const double scale = 1.0 / std::sqrt(a.norm2());
      for (std::size_t j = 0; j < N; ++j)
        for (auto& v : a[j].values()) v *= scale;
      const double e = synthesize(gens, a, grid).norm2();
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    est.probe_min = lo;
    est.probe_max = hi;
  }

  est.A_lo = std::min(est.probe_min, est.symbol_min);
  est.B_hi = std::max(est.probe_max, est.symbol_max);
  if (!std::isnan(est.gram_min)) {
    est.A_lo = std::min(est.A_lo, est.gram_min);
    est.B_hi = std::max(est.B_hi, est.gram_max);
  }
  if (!(est.A_lo > 1e-14 * est.B_hi) || est.B_hi / est.A_lo > opts.ratio_cap)
    throw Error(ErrorKind::DegenerateGenerators,
                "translates are nearly dependent (A_lo=" + std::to_string(est.A_lo) + ", B_hi=" + std::to_string(est.B_hi) + ")");
  return est;
}

}  // namespace sisamp
