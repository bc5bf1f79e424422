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

#include "sisamp/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sisamp {

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& G, bool force) {
  if (!force) {
    const Eigen::MatrixXcd H = G.adjoint() * G;
    return H.ldlt().solve(G.adjoint());
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-12 * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) inv(i) = sv(i) > cut ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

PseudoInverseField pseudo_inverse_field(const ModulationField& field, double A_G, double floor, bool force) {
  if (!(A_G > floor) && !force)
  {
    std::ostringstream msg;
    msg << "A_G = " << std::setprecision(6) << A_G << " is not above the pseudo-inverse floor " << floor;
    throw Error(ErrorKind::NotLeftInvertible, msg.str());
  }
  PseudoInverseField out;
  const auto m = static_cast<Eigen::Index>(field.m());
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);
  for (std::size_t p = 0; p < field.pieces(); ++p) {
    const ModulationPiece& piece = field.piece(p);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(piece.points());
    for (std::size_t i = 0; i < piece.points(); ++i) {
      const Eigen::MatrixXcd G = piece.matrix(i);
      Eigen::MatrixXcd P = pseudo_inverse(G, force);
      out.max_residual = std::max(out.max_residual, (P * G - I).cwiseAbs().maxCoeff());
      mats.push_back(std::move(P));
    }
    out.pinv.push_back(std::move(mats));
  }
  return out;
}

DualField::DualField(SymbolSource g, SamplingLattice lat, const ModulationField& field, double A_G, double floor,
                     bool force)
    : g_(std::move(g)), lat_(std::move(lat)), force_(force) {
  const PseudoInverseField pinv = pseudo_inverse_field(field, A_G, floor, force);
  const std::size_t s = g_.s();
  const auto m = static_cast<Eigen::Index>(field.m());
  for (std::size_t p = 0; p < field.pieces(); ++p) {
    const ModulationPiece& piece = field.piece(p);
    std::vector<cplx> rows(piece.points() * s);
    for (std::size_t i = 0; i < piece.points(); ++i) {
      const Eigen::RowVectorXcd d = pinv.pinv[p][i].row(0);
      for (std::size_t j = 0; j < s; ++j) {
        rows[i * s + j] = d(static_cast<Eigen::Index>(j));
        max_modulus_ = std::max(max_modulus_, std::abs(rows[i * s + j]));
      }
      Eigen::RowVectorXcd e = d * piece.matrix(i);
      e(0) -= 1.0;
      if (m > 0) residual_ = std::max(residual_, e.cwiseAbs().maxCoeff());
    }
    rows_.push_back(std::move(rows));
  }
}

std::vector<cplx> DualField::row_at(std::size_t p, std::span<const double> x) const {
  const Eigen::MatrixXcd P = pseudo_inverse(modulation_matrix_at(g_, lat_, p, x), force_);
  std::vector<cplx> d(g_.s());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = P(0, static_cast<Eigen::Index>(j));
  return d;
}

KernelSet::KernelSet(std::shared_ptr<const GeneratorSet> gens, std::size_t s, std::vector<IndexedArray> coeffs)
    : gens_(std::move(gens)), s_(s), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != s_ * N()) throw Error(ErrorKind::ShapeMismatch, "kernel set needs s*N coefficient arrays");
}

SpaceElement KernelSet::tabulate(std::size_t j, std::size_t p, const Grid& grid) const {
  CoefficientArray c(N(), coefficients(j, p).box());
  c[p] = coefficients(j, p);
  return synthesize(gens_, c, grid, BoxPolicy::clip);
}

KernelSet build_kernels(const DualField& duals, std::shared_ptr<const GeneratorSet> gens, long long K, double R) {
  const SamplingLattice& lat = duals.lattice();
  check_regime(lat.dim(), lat.N());
  const int d = lat.dim();
  const int N = lat.N();
  const std::size_t s = duals.s();
  if (gens->N() != N || gens->dim() != d) throw Error(ErrorKind::ShapeMismatch, "generators do not match the lattice");
  const double e0 = std::pow(static_cast<double>(N), 0.5 * d);
  std::vector<IndexedArray> coeffs(s * static_cast<std::size_t>(N));
  for (std::size_t p = 0; p < static_cast<std::size_t>(N); ++p) {
    const Grid grid = Grid::with_resolution(subcube(d, N, p), R);
    std::vector<std::vector<cplx>> tab(s, std::vector<cplx>(grid.size()));
    RVec x(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.point(i, x);
      const std::vector<cplx> row = duals.row_at(p, x);
      for (std::size_t j = 0; j < s; ++j) tab[j][i] = row[j] * e0;
    }
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<GridFunction> pieces;
      for (std::size_t q = 0; q < static_cast<std::size_t>(N); ++q) {
        const Grid gq = Grid::with_resolution(subcube(d, N, q), R);
        pieces.emplace_back(gq, q == p ? tab[j] : std::vector<cplx>(gq.size()), Extension::periodic);
      }
      coeffs[j * static_cast<std::size_t>(N) + p] = fourier_coefficients(PatchFunction(d, N, std::move(pieces)), p, K);
    }
  }
  return KernelSet(std::move(gens), s, std::move(coeffs));
}

SampleSet::SampleSet(int dim, std::size_t s, std::size_t N, long long K_samp)
    : s_(s), N_(N), box_(dim, K_samp), values_(s * N, IndexedArray(box_)) {}

double SampleSet::energy() const {
  double e = 0.0;
  for (const auto& v : values_) e += v.norm2();
  return e;
}

void SampleSet::write_csv(std::ostream& os) const {
  const int d = dim();
  os << "# sisamp samples v1\n";
  os << "# dim," << d << ",s," << s_ << ",N," << N_ << ",K_samp," << box_.hi()[0] << "\n";
  os << "j,p";
  for (int a = 0; a < d; ++a) os << ",alpha" << a;
  os << ",re,im\n";
  os << std::setprecision(17);
  for (std::size_t j = 0; j < s_; ++j)
    for (std::size_t p = 0; p < N_; ++p) {
      const IndexedArray& v = values(j, p);
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << j << ',' << p;
        for (long long a : box_.at(k)) os << ',' << a;
        os << ',' << v[k].real() << ',' << v[k].imag() << '\n';
      }
    }
}

SampleSet SampleSet::read_csv(std::istream& is) {
  std::string line;
  auto fail = [](const std::string& why) { return Error(ErrorKind::ParseError, "sample CSV: " + why); };
  if (!std::getline(is, line) || line != "# sisamp samples v1") throw fail("missing header");
  if (!std::getline(is, line) || line.rfind("# dim,", 0) != 0) throw fail("missing shape line");
  int d = 0;
  std::size_t s = 0, N = 0;
  long long K = 0;
  {
    std::string body = line.substr(2);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream ss(body);
    std::string k1, k2, k3, k4;
    if (!(ss >> k1 >> d >> k2 >> s >> k3 >> N >> k4 >> K) || d < 1 || s < 1 || N < 1 || K < 0) throw fail("bad shape line");
  }
  SampleSet out(d, s, N, K);
  if (!std::getline(is, line)) throw fail("missing column line");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::size_t j = 0, p = 0;
    IVec alpha(static_cast<std::size_t>(d));
    double re = 0.0, im = 0.0;
    if (!(ss >> j >> p)) throw fail("bad row " + std::to_string(rows + 1));
    for (auto& a : alpha)
      if (!(ss >> a)) throw fail("bad row " + std::to_string(rows + 1));
    if (!(ss >> re >> im)) throw fail("bad row " + std::to_string(rows + 1));
    if (j >= s || p >= N || !out.box().contains(alpha)) throw fail("row " + std::to_string(rows + 1) + " out of range");
    out.values(j, p).ref(alpha) = cplx(re, im);
    ++rows;
  }
  return out;
}

std::vector<IndexedArray> filtered_generator_table(const FilterBank& bank, const GeneratorSet& gens) {
  const long long reach = gens.support_radius() + bank.support_radius() + 1;
  std::vector<IndexedArray> out;
  for (std::size_t j = 0; j < bank.s(); ++j)
    for (std::size_t p = 0; p < static_cast<std::size_t>(gens.N()); ++p)
      out.push_back(generator_filter_samples(bank, gens, j, p, reach).values);
  return out;
}

SampleSet take_samples(const SpaceElement& f, const FilterBank& bank, const SamplingLattice& lat, long long K_samp) {
  const GeneratorSet& gens = *f.generators();
  const int d = gens.dim();
  const auto ud = static_cast<std::size_t>(d);
  const auto N = static_cast<std::size_t>(gens.N());
  if (lat.dim() != d || bank.dim() != d) throw Error(ErrorKind::ShapeMismatch, "dimension mismatch in take_samples");
  SampleSet out(d, bank.s(), N, K_samp);
  const std::vector<IndexedArray> table = filtered_generator_table(bank, gens);
  const Box& gbox = f.grid().box();
  IVec alpha(ud), delta(ud), beta(ud);
  for (std::size_t j = 0; j < bank.s(); ++j) {
    const Box w = bank.window(j);
    for (std::size_t p = 0; p < N; ++p) {
      const IndexedArray& a = f.coefficients()[p];
      const IndexedArray& T = table[j * N + p];
      const auto content = f.content_support(p);
      IndexedArray& v = out.values(j, p);
      for (std::size_t k = 0; k < v.size(); ++k) {
        out.box().at(k, alpha);
        const IVec t = lat.lattice_point(alpha);
        if (content) {
          bool leaves = false, meets = true;
          for (std::size_t u = 0; u < ud; ++u) {
            const double lo = static_cast<double>(t[u]) + w.lower[u];
            const double hi = static_cast<double>(t[u]) + w.upper[u];
            if (lo < gbox.lower[u] - 1e-12 || hi > gbox.upper[u] + 1e-12) leaves = true;
            if (hi < content->lower[u] || content->upper[u] < lo) meets = false;
          }
          if (leaves && meets)
            throw Error(ErrorKind::OutOfReliableRegion, "sample window at lattice index " + std::to_string(k) + " leaves the working box");
        }
        cplx acc{};
        for (std::size_t e = 0; e < T.size(); ++e) {
          const cplx tv = T[e];
          if (tv == cplx{}) continue;
          T.box().at(e, delta);
          for (std::size_t u = 0; u < ud; ++u) beta[u] = t[u] - delta[u];
          const cplx c = a.at(beta);
          if (c != cplx{}) acc += c * tv;
        }
        v[k] = acc;
      }
    }
  }
  return out;
}

CoefficientArray reconstruction_coefficients(const SampleSet& samples, const KernelSet& kernels,
                                             const SamplingLattice& lat) {
  const int d = lat.dim();
  const auto ud = static_cast<std::size_t>(d);
  if (samples.s() != kernels.s() || samples.N() != kernels.N() || samples.dim() != d)
    throw Error(ErrorKind::ShapeMismatch, "samples and kernels come from different scenarios");
  long long Kk = 0;
  for (std::size_t j = 0; j < kernels.s(); ++j)
    for (std::size_t p = 0; p < kernels.N(); ++p) Kk = std::max(Kk, kernels.coefficients(j, p).box().hi()[0]);
  const long long radius = lat.inf_norm() * samples.box().hi()[0] + Kk;
  CoefficientArray b(kernels.N(), IndexBox(d, radius));
  const auto m = static_cast<double>(lat.m());
  IVec alpha(ud), delta(ud), beta(ud);
  for (std::size_t p = 0; p < kernels.N(); ++p) {
    IndexedArray& bp = b[p];
    for (std::size_t j = 0; j < kernels.s(); ++j) {
      const IndexedArray& c = kernels.coefficients(j, p);
      const IndexedArray& v = samples.values(j, p);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == cplx{}) continue;
        const cplx sv = m * v[k];
        samples.box().at(k, alpha);
        const IVec t = lat.lattice_point(alpha);
        for (std::size_t e = 0; e < c.size(); ++e) {
          c.box().at(e, delta);
          for (std::size_t u = 0; u < ud; ++u) beta[u] = t[u] + delta[u];
          bp.ref(beta) += sv * c[e];
        }
      }
    }
  }
  return b;
}

SpaceElement reconstruct(const SampleSet& samples, const KernelSet& kernels, const SamplingLattice& lat,
                         const Grid& grid) {
  return synthesize(kernels.generators(), reconstruction_coefficients(samples, kernels, lat), grid, BoxPolicy::clip);
}

std::vector<cplx> reconstruct_tabulated(const SampleSet& samples, const KernelSet& kernels, const SamplingLattice& lat,
                                        const Grid& grid, std::size_t q) {
  if (lat.dim() != 1 || grid.dim() != 1) throw Error(ErrorKind::UnsupportedRegime, "tabulated reconstruction is one-dimensional");
  if (samples.s() != kernels.s() || samples.N() != kernels.N()) throw Error(ErrorKind::ShapeMismatch, "samples and kernels come from different scenarios");
  const double Rr = 1.0 / grid.spacing(0);
  const auto R = std::llround(Rr);
  const auto n = static_cast<long long>(grid.size());
  const auto m = static_cast<double>(lat.m());
  std::vector<cplx> out(grid.size());
  for (std::size_t j = 0; j < kernels.s(); ++j)
    for (std::size_t p = 0; p < kernels.N(); ++p) {
      const SpaceElement kernel = kernels.tabulate(j, p, grid);
      const std::vector<cplx>& S = kernel.total(q);
      const IndexedArray& v = samples.values(j, p);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == cplx{}) continue;
        const long long shift = lat.lattice_point(samples.box().at(k))[0] * R;
        for (long long i = std::max(0LL, shift); i < std::min(n, n + shift); ++i)
          out[static_cast<std::size_t>(i)] += m * v[k] * S[static_cast<std::size_t>(i - shift)];
      }
    }
  return out;
}

}  // namespace sisamp
