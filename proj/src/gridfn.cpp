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

#include "sisamp/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "sisamp/simd.hpp"

namespace sisamp {

namespace {

constexpr double kAlignTol = 1e-7;

double fold(double rel, double period) {
  double r = rel - period * std::floor(rel / period);
  if (r >= period) r -= period;
  return r;
}

long long snap(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > kAlignTol)
    throw Error(ErrorKind::DomainMismatch, std::string(what) + " is not aligned with grid cell boundaries");
  return static_cast<long long>(r);
}

// Lagrange weights for nodes first, first+1, ..., first+L-1 at position t.
void lagrange_weights(double t, int first, int L, double* w) {
  for (int k = 0; k < L; ++k) {
    double num = 1.0, den = 1.0;
    const int xk = first + k;
    for (int j = 0; j < L; ++j) {
      if (j == k) continue;
      const int xj = first + j;
      num *= t - xj;
      den *= xk - xj;
    }
    w[k] = num / den;
  }
}

}  // namespace

double Box::volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < lower.size(); ++a) v *= upper[a] - lower[a];
  return v;
}

bool Box::contains(std::span<const double> x) const {
  for (std::size_t a = 0; a < lower.size(); ++a)
    if (x[a] < lower[a] || x[a] > upper[a]) return false;
  return true;
}

Box Box::cube(int dim, double lo, double hi) {
  return Box{RVec(static_cast<std::size_t>(dim), lo), RVec(static_cast<std::size_t>(dim), hi)};
}

Grid::Grid(Box box, std::vector<std::size_t> counts) : box_(std::move(box)), counts_(std::move(counts)) {
  if (box_.lower.size() != box_.upper.size() || counts_.size() != box_.lower.size() || counts_.empty() ||
      counts_.size() > 8)
    throw Error(ErrorKind::ShapeMismatch, "grid box and counts disagree in dimension");
  size_ = 1;
  cell_volume_ = 1.0;
  spacing_.resize(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (!(box_.upper[a] > box_.lower[a])) throw Error(ErrorKind::DomainMismatch, "grid box has non-positive extent");
    if (counts_[a] < 2) throw Error(ErrorKind::DomainMismatch, "grid needs at least 2 samples per axis");
    spacing_[a] = (box_.upper[a] - box_.lower[a]) / static_cast<double>(counts_[a]);
    size_ *= counts_[a];
    cell_volume_ *= spacing_[a];
  }
}

Grid Grid::with_resolution(Box box, double R) {
  std::vector<std::size_t> counts(box.lower.size());
  for (std::size_t a = 0; a < counts.size(); ++a)
    counts[a] = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround((box.upper[a] - box.lower[a]) * R)));
  return Grid(std::move(box), std::move(counts));
}

double Grid::coord(int axis, std::size_t i) const {
  const auto a = static_cast<std::size_t>(axis);
  return box_.lower[a] + (static_cast<double>(i) + 0.5) * spacing_[a];
}

RVec Grid::axis_coords(int axis) const {
  RVec c(count(axis));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coord(axis, i);
  return c;
}

void Grid::point(std::size_t flat, std::span<double> out) const {
  for (std::size_t a = counts_.size(); a-- > 0;) {
    out[a] = coord(static_cast<int>(a), flat % counts_[a]);
    flat /= counts_[a];
  }
}

RVec Grid::point(std::size_t flat) const {
  RVec x(counts_.size());
  point(flat, x);
  return x;
}

std::size_t Grid::flat(std::span<const std::size_t> idx) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < counts_.size(); ++a) f = f * counts_[a] + idx[a];
  return f;
}

bool Grid::same_layout(const Grid& other) const {
  return counts_ == other.counts_ && box_.lower == other.box_.lower && box_.upper == other.box_.upper;
}

GridFunction::GridFunction(Grid grid, std::vector<cplx> values, Extension ext)
    : grid_(std::move(grid)), values_(std::move(values)), ext_(ext) {
  if (values_.size() != grid_.size()) throw Error(ErrorKind::ShapeMismatch, "value array does not match grid");
}

GridFunction GridFunction::tabulate(const Grid& grid, const std::function<cplx(std::span<const double>)>& f,
                                    Extension ext) {
  std::vector<cplx> v(grid.size());
  RVec x(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    grid.point(i, x);
    v[i] = f(x);
  }
  return GridFunction(grid, std::move(v), ext);
}

cplx GridFunction::evaluate(std::span<const double> x) const {
  if (ext_ == Extension::periodic) return evaluate_periodic(x);
  if (!grid_.box().contains(x)) {
    if (ext_ == Extension::zero) return {};
    throw Error(ErrorKind::DomainMismatch, "evaluation point outside grid box");
  }
  return evaluate_multilinear(x);
}

cplx GridFunction::evaluate_periodic(std::span<const double> x) const {
  const int d = grid_.dim();
  int L[8];
  long long first[8];
  double w[8][6];
  for (int a = 0; a < d; ++a) {
    const auto n = static_cast<long long>(grid_.count(a));
    const double lo = grid_.box().lower[static_cast<std::size_t>(a)];
    const double period = grid_.box().upper[static_cast<std::size_t>(a)] - lo;
    const double s = fold(x[static_cast<std::size_t>(a)] - lo, period) / grid_.spacing(a) - 0.5;
    const double i0 = std::floor(s);
    const double t = s - i0;
    L[a] = static_cast<int>(std::min<long long>(6, n - n % 2));
    const int off = -(L[a] / 2 - 1);
    first[a] = static_cast<long long>(i0) + off;
    lagrange_weights(t, off, L[a], w[a]);
  }
  cplx acc{};
  int k[8] = {0};
  std::size_t idx[8];
  while (true) {
    double weight = 1.0;
    for (int a = 0; a < d; ++a) {
      const auto n = static_cast<long long>(grid_.count(a));
      long long i = (first[a] + k[a]) % n;
      if (i < 0) i += n;
      idx[a] = static_cast<std::size_t>(i);
      weight *= w[a][k[a]];
    }
    acc += weight * values_[grid_.flat(std::span<const std::size_t>(idx, static_cast<std::size_t>(d)))];
    int a = d - 1;
    while (a >= 0 && ++k[a] == L[a]) k[a--] = 0;
    if (a < 0) break;
  }
  return acc;
}

cplx GridFunction::evaluate_multilinear(std::span<const double> x) const {
  const int d = grid_.dim();
  std::size_t i0[8];
  double t[8];
  for (int a = 0; a < d; ++a) {
    const auto n = grid_.count(a);
    const double s = (x[static_cast<std::size_t>(a)] - grid_.box().lower[static_cast<std::size_t>(a)]) / grid_.spacing(a) - 0.5;
    if (s <= 0.0) {
      i0[a] = 0;
      t[a] = 0.0;
    } else if (s >= static_cast<double>(n - 1)) {
      i0[a] = n - 2;
      t[a] = 1.0;
    } else {
      const double f = std::floor(s);
      i0[a] = static_cast<std::size_t>(f);
      t[a] = s - f;
    }
  }
  cplx acc{};
  std::size_t idx[8];
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    double weight = 1.0;
    for (int a = 0; a < d; ++a) {
      const bool hi = (corner >> a) & 1u;
      idx[a] = i0[a] + (hi ? 1 : 0);
      weight *= hi ? t[a] : 1.0 - t[a];
    }
    if (weight != 0.0) acc += weight * values_[grid_.flat(std::span<const std::size_t>(idx, static_cast<std::size_t>(d)))];
  }
  return acc;
}

double GridFunction::norm2() const { return simd::norm2(values_) * grid_.cell_volume(); }

cplx quadrature(const GridFunction& f, const Box& box) {
  const Grid& g = f.grid();
  const int d = g.dim();
  if (box.dim() != d) throw Error(ErrorKind::DomainMismatch, "quadrature box has wrong dimension");
  std::vector<long long> i0(static_cast<std::size_t>(d)), i1(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    i0[ua] = snap((box.lower[ua] - g.box().lower[ua]) / g.spacing(a), "quadrature box");
    i1[ua] = snap((box.upper[ua] - g.box().lower[ua]) / g.spacing(a), "quadrature box");
    if (i1[ua] < i0[ua]) throw Error(ErrorKind::DomainMismatch, "quadrature box is inverted");
    if (!f.periodic() && (i0[ua] < 0 || i1[ua] > static_cast<long long>(g.count(a))))
      throw Error(ErrorKind::DomainMismatch, "quadrature box leaves the grid of a non-periodic function");
    if (i1[ua] == i0[ua]) return {};
  }
  cplx acc{};
  std::vector<long long> k(i0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d));
  while (true) {
    for (int a = 0; a < d; ++a) {
      const auto n = static_cast<long long>(g.count(a));
      long long i = k[static_cast<std::size_t>(a)] % n;
      if (i < 0) i += n;
      idx[static_cast<std::size_t>(a)] = static_cast<std::size_t>(i);
    }
    acc += f.values()[g.flat(idx)];
    int a = d - 1;
    while (a >= 0 && ++k[static_cast<std::size_t>(a)] == i1[static_cast<std::size_t>(a)]) {
      k[static_cast<std::size_t>(a)] = i0[static_cast<std::size_t>(a)];
      --a;
    }
    if (a < 0) break;
  }
  return acc * g.cell_volume();
}

cplx exp_basis(std::span<const long long> alpha, int N, std::span<const double> x) {
  double phase = 0.0;
  for (std::size_t a = 0; a < alpha.size(); ++a) phase += static_cast<double>(alpha[a]) * x[a];
  const double scale = std::pow(static_cast<double>(N), 0.5 * static_cast<double>(alpha.size()));
  return scale * std::polar(1.0, -kTwoPi * N * phase);
}

std::vector<cplx> separable_transform(std::span<const cplx> values, const std::vector<std::size_t>& shape,
                                      const std::vector<std::vector<cplx>>& tables,
                                      const std::vector<std::size_t>& out_shape) {
  const std::size_t d = shape.size();
  if (tables.size() != d || out_shape.size() != d) throw Error(ErrorKind::ShapeMismatch, "separable transform rank mismatch");
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  if (values.size() != total) throw Error(ErrorKind::ShapeMismatch, "separable transform input size");

  std::vector<cplx> cur(values.begin(), values.end());
  std::vector<cplx> tmp;
  // Each pass contracts the trailing axis and rotates it to the front, so
  // after d passes the axes are back in order.
  for (std::size_t step = 0; step < d; ++step) {
    const std::size_t axis = d - 1 - step;
    const std::size_t n = shape[axis];
    const std::size_t F = out_shape[axis];
    const auto& T = tables[axis];
    if (T.size() != n * F) throw Error(ErrorKind::ShapeMismatch, "separable transform table size");
    const std::size_t rows = cur.size() / n;
    tmp.assign(rows * F, cplx{});
    for (std::size_t r = 0; r < rows; ++r) {
      const std::span<const cplx> line(cur.data() + r * n, n);
      for (std::size_t f = 0; f < F; ++f)
        tmp[f * rows + r] = simd::dot(line, std::span<const cplx>(T.data() + f * n, n));
    }
    cur.swap(tmp);
  }
  return cur;
}

IndexedArray grid_spectrum(const GridFunction& g, int N, const IndexBox& freqs) {
  const Grid& grid = g.grid();
  const int d = grid.dim();
  if (freqs.dim() != d) throw Error(ErrorKind::ShapeMismatch, "frequency box dimension");
  std::vector<std::vector<cplx>> tables(static_cast<std::size_t>(d));
  std::vector<std::size_t> out_shape(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const auto n = grid.count(a);
    const auto F = static_cast<std::size_t>(freqs.extent(a));
    out_shape[ua] = F;
    tables[ua].resize(n * F);
    for (std::size_t f = 0; f < F; ++f) {
      const double nu = static_cast<double>(freqs.lo()[ua] + static_cast<long long>(f));
      for (std::size_t i = 0; i < n; ++i) tables[ua][f * n + i] = std::polar(1.0, kTwoPi * N * nu * grid.coord(a, i));
    }
  }
  auto out = separable_transform(g.values(), grid.counts(), tables, out_shape);
  const double scale = std::pow(static_cast<double>(N), 0.5 * d) * grid.cell_volume();
  for (auto& v : out) v *= scale;
  return IndexedArray(freqs, std::move(out));
}

std::vector<cplx> evaluate_exponentials(const IndexedArray& coeffs, int N, const Grid& grid) {
  const int d = grid.dim();
  const IndexBox& freqs = coeffs.box();
  if (freqs.dim() != d) throw Error(ErrorKind::ShapeMismatch, "coefficient box dimension");
  std::vector<std::vector<cplx>> tables(static_cast<std::size_t>(d));
  std::vector<std::size_t> in_shape(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const auto n = grid.count(a);
    const auto F = static_cast<std::size_t>(freqs.extent(a));
    in_shape[ua] = F;
    tables[ua].resize(n * F);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < F; ++f) {
        const double nu = static_cast<double>(freqs.lo()[ua] + static_cast<long long>(f));
        tables[ua][i * F + f] = std::polar(1.0, -kTwoPi * N * nu * grid.coord(a, i));
      }
    }
  }
  auto out = separable_transform(coeffs.values(), in_shape, tables, grid.counts());
  const double scale = std::pow(static_cast<double>(N), 0.5 * d);
  for (auto& v : out) v *= scale;
  return out;
}

Box subcube(int dim, int N, std::size_t p) {
  check_regime(dim, N);
  const double lo = static_cast<double>(p) / N;
  const double hi = static_cast<double>(p + 1) / N;
  return Box::cube(dim, lo, hi);
}

PatchFunction::PatchFunction(int dim, int N, std::vector<GridFunction> pieces)
    : dim_(dim), N_(N), pieces_(std::move(pieces)) {
  check_regime(dim, N);
  if (pieces_.size() != static_cast<std::size_t>(N)) throw Error(ErrorKind::ShapeMismatch, "need one piece per subcube");
  for (std::size_t p = 0; p < pieces_.size(); ++p) {
    const Box expect = subcube(dim, N, p);
    const Box& got = pieces_[p].grid().box();
    for (int a = 0; a < dim; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      if (std::abs(got.lower[ua] - expect.lower[ua]) > 1e-12 || std::abs(got.upper[ua] - expect.upper[ua]) > 1e-12)
        throw Error(ErrorKind::DomainMismatch, "piece " + std::to_string(p) + " does not cover its subcube");
    }
    if (!pieces_[p].periodic()) throw Error(ErrorKind::DomainMismatch, "patch pieces must be periodic");
  }
}

PatchFunction PatchFunction::tabulate(int dim, int N, double R, const std::function<cplx(std::span<const double>)>& F) {
  check_regime(dim, N);
  std::vector<GridFunction> pieces;
  for (int p = 0; p < N; ++p)
    pieces.push_back(GridFunction::tabulate(Grid::with_resolution(subcube(dim, N, static_cast<std::size_t>(p)), R), F,
                                            Extension::periodic));
  return PatchFunction(dim, N, std::move(pieces));
}

PatchFunction PatchFunction::from_exponentials(int dim, int N, double R, const std::vector<IndexedArray>& coeffs) {
  check_regime(dim, N);
  if (coeffs.size() != static_cast<std::size_t>(N)) throw Error(ErrorKind::ShapeMismatch, "need coefficients per piece");
  std::vector<GridFunction> pieces;
  for (int p = 0; p < N; ++p) {
    Grid g = Grid::with_resolution(subcube(dim, N, static_cast<std::size_t>(p)), R);
    auto v = evaluate_exponentials(coeffs[static_cast<std::size_t>(p)], N, g);
    pieces.emplace_back(std::move(g), std::move(v), Extension::periodic);
  }
  return PatchFunction(dim, N, std::move(pieces));
}

PatchFunction PatchFunction::zero(int dim, int N, double R) {
  return tabulate(dim, N, R, [](std::span<const double>) { return cplx{}; });
}

cplx PatchFunction::evaluate(std::span<const double> x) const {
  std::size_t p = 0;
  if (N_ > 1) {
    const double s = std::floor(x[0] * N_);
    p = static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(N_ - 1)));
  }
  return pieces_[p].evaluate(x);
}

double PatchFunction::norm2() const {
  double s = 0.0;
  for (const auto& piece : pieces_) s += piece.norm2();
  return s;
}

IndexedArray fourier_coefficients(const PatchFunction& F, std::size_t p, long long K) {
  if (K < 0) throw Error(ErrorKind::ValidationError, "truncation radius must be non-negative");
  if (p >= F.pieces()) throw Error(ErrorKind::DomainMismatch, "subcube index out of range");
  return grid_spectrum(F.piece(p), F.N(), IndexBox(F.dim(), K));
}

CellGrid::CellGrid(const SamplingLattice& lat, std::size_t resolution)
    : dim_(lat.dim()), N_(lat.N()), res_(resolution), inv_t_(lat.inv_transpose()) {
  if (res_ < 2) throw Error(ErrorKind::ValidationError, "cell resolution must be at least 2");
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= res_;
  double cell = 1.0 / static_cast<double>(lat.m());
  for (int a = 0; a < dim_; ++a) cell /= N_;
  weight_ = cell / static_cast<double>(size_);
}

void CellGrid::u_point(std::size_t flat, std::span<double> u) const {
  for (int a = dim_; a-- > 0;) {
    u[static_cast<std::size_t>(a)] = (static_cast<double>(flat % res_) + 0.5) / static_cast<double>(res_);
    flat /= res_;
  }
}

RVec CellGrid::point(std::size_t flat) const {
  const auto d = static_cast<std::size_t>(dim_);
  RVec u(d), y(d, 0.0);
  u_point(flat, u);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) y[i] += inv_t_[i * d + j] * u[j];
    y[i] /= N_;
  }
  return y;
}

double PatchVector::norm2() const {
  double s = 0.0;
  for (const auto& c : components) s += simd::norm2(c);
  return s * grid.weight();
}

PatchVector vectorize_patch(const PatchFunction& F, std::size_t p, const SamplingLattice& lat, const CellGrid& grid) {
  check_regime(lat.dim(), lat.N());
  if (F.N() != lat.N() || F.dim() != lat.dim())
    throw Error(ErrorKind::ShapeMismatch, "patch function and lattice disagree on d or N");
  const std::size_t m = lat.m();
  const auto d = static_cast<std::size_t>(lat.dim());
  PatchVector out{grid, std::vector<std::vector<cplx>>(m, std::vector<cplx>(grid.size()))};
  const GridFunction& piece = F.piece(p);
  RVec x(d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const RVec y = grid.point(i);
    for (std::size_t k = 0; k < m; ++k) {
      const RVec& s = lat.coset_shift(k);
      for (std::size_t a = 0; a < d; ++a) x[a] = y[a] + s[a];
      out.components[k][i] = piece.evaluate(x);
    }
  }
  return out;
}

void write_csv(const GridFunction& g, std::ostream& os) {
  const Grid& grid = g.grid();
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "# sisamp gridfunction v1\n# dim," << grid.dim() << "\n# lower";
  for (double v : grid.box().lower) os << ',' << v;
  os << "\n# upper";
  for (double v : grid.box().upper) os << ',' << v;
  os << "\n# counts";
  for (auto c : grid.counts()) os << ',' << c;
  os << "\n# extension," << (g.extension() == Extension::periodic ? "periodic" : g.extension() == Extension::zero ? "zero" : "none")
     << "\nindex,re,im\n";
  for (std::size_t i = 0; i < g.values().size(); ++i) os << i << ',' << g.values()[i].real() << ',' << g.values()[i].imag() << '\n';
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  int dim = 0;
  RVec lower, upper;
  std::vector<std::size_t> counts;
  Extension ext = Extension::zero;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "gridfunction csv line " + std::to_string(lineno) + ": " + why);
  };
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
  };
  std::vector<cplx> values;
  bool in_body = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (!in_body && line[0] == '#') {
        auto f = split(line.substr(1));
        if (f.empty()) continue;
        std::string key = f[0];
        key.erase(0, key.find_first_not_of(' '));
        if (key == "dim") dim = std::stoi(f.at(1));
        else if (key == "lower") for (std::size_t i = 1; i < f.size(); ++i) lower.push_back(std::stod(f[i]));
        else if (key == "upper") for (std::size_t i = 1; i < f.size(); ++i) upper.push_back(std::stod(f[i]));
        else if (key == "counts") for (std::size_t i = 1; i < f.size(); ++i) counts.push_back(std::stoul(f[i]));
        else if (key == "extension") {
          const std::string e = f.at(1);
          ext = e == "periodic" ? Extension::periodic : e == "none" ? Extension::none : Extension::zero;
        }
        continue;
      }
      if (!in_body) {
        if (line.rfind("index", 0) != 0) fail("expected 'index,re,im' header");
        in_body = true;
        if (dim < 1 || lower.size() != static_cast<std::size_t>(dim) || upper.size() != lower.size() || counts.size() != lower.size())
          fail("incomplete grid metadata");
        std::size_t total = 1;
        for (auto c : counts) total *= c;
        values.assign(total, cplx{});
        continue;
      }
      auto f = split(line);
      if (f.size() != 3) fail("expected index,re,im");
      const auto idx = std::stoul(f[0]);
      if (idx >= values.size()) fail("index out of range");
      values[idx] = cplx(std::stod(f[1]), std::stod(f[2]));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!in_body) throw Error(ErrorKind::ParseError, "gridfunction csv: missing data section");
  return GridFunction(Grid(Box{lower, upper}, counts), std::move(values), ext);
}

}  // namespace sisamp
