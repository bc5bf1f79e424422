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

#include "sisamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "sisamp/random.hpp"

namespace sisamp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Seeds for the independent ensembles of one verify run.
enum Stream : std::uint64_t {
  kIdentity = 1,
  kSampling = 2,
  kSandwich = 3,
  kStability = 4,
  kReconstruction = 5,
  kDualFrame = 6,
  kTranslation = 7,
  kRiesz = 8,
};

std::uint64_t stream_seed(const Pipeline& pipe, Stream s, std::uint64_t member) {
  return derive_seed(derive_seed(pipe.model().params.seed, s), member);
}

GridFunction symbol_on(Pipeline& pipe, std::size_t j, std::size_t p, const Grid& grid) {
  const SymbolTable& table = *pipe.symbols();
  return GridFunction::tabulate(grid, [&](std::span<const double> x) { return table.evaluate(j, p, x); }, Extension::periodic);
}

// Radius of the lattice sample box that sees every sample of content with
// coefficient radius L.
long long sample_radius(const Model& model, long long L) {
  return static_cast<long long>(std::ceil(model.lattice.inverse_inf_norm() * static_cast<double>(L + model.reach()) - 1e-12)) + 1;
}

// Coarse grid carrying the coefficients exactly; only point values and
// filtered values are read from elements built on it.
Grid probe_grid(const Model& model, long long L) {
  const auto W = static_cast<double>(L + model.reach() + model.bank.support_radius());
  return Grid::with_resolution(Box::cube(model.dim(), -W, W), 4.0);
}

double norm_resolution(const Model& model) { return model.dim() == 1 ? model.space_resolution() : 16.0; }

CoefficientArray shift_coefficients(const CoefficientArray& a, std::span<const long long> shift, long long pad) {
  const IndexBox& box = a.box();
  IVec lo = box.lo(), hi = box.hi();
  for (std::size_t u = 0; u < lo.size(); ++u) {
    lo[u] += shift[u] - pad;
    hi[u] += shift[u] + pad;
  }
  CoefficientArray out(a.N(), IndexBox(lo, hi));
  IVec alpha(lo.size()), beta(lo.size());
  for (std::size_t p = 0; p < a.N(); ++p)
    for (std::size_t k = 0; k < box.size(); ++k) {
      box.at(k, alpha);
      for (std::size_t u = 0; u < alpha.size(); ++u) beta[u] = alpha[u] + shift[u];
      out[p].ref(beta) = a[p][k];
    }
  return out;
}

}  // namespace

PatchFunction random_smooth_patch(int dim, int N, double R, std::uint64_t seed, long long degree) {
  Rng rng(seed);
  std::vector<IndexedArray> coeffs;
  for (int p = 0; p < N; ++p) {
    IndexedArray c(IndexBox(dim, degree));
    for (auto& v : c.values()) v = complex_gaussian(rng);
    coeffs.push_back(std::move(c));
  }
  return PatchFunction::from_exponentials(dim, N, R, coeffs);
}

IndexedArray lattice_inner_products(Pipeline& pipe, const PatchFunction& F, std::size_t j, std::size_t p, long long K) {
  const Model& model = pipe.model();
  check_regime(F.dim(), F.N());
  if (F.dim() != model.dim() || F.N() != model.N()) throw Error(ErrorKind::ShapeMismatch, "patch function does not match the scenario");
  const GridFunction& piece = F.piece(p);
  const GridFunction g = symbol_on(pipe, j, p, piece.grid());
  std::vector<cplx> h(piece.values().size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = piece.values()[i] * g.values()[i];
  const IndexBox freqs(model.dim(), model.lattice.inf_norm() * K);
  const IndexedArray spectrum = grid_spectrum(GridFunction(piece.grid(), std::move(h), Extension::periodic), model.N(), freqs);
  IndexedArray out(IndexBox(model.dim(), K));
  IVec alpha(static_cast<std::size_t>(model.dim()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.box().at(k, alpha);
    out[k] = spectrum.at(model.lattice.lattice_point(alpha));
  }
  return out;
}

IdentityCheck check_modulation_identity(Pipeline& pipe, const PatchFunction& F, std::size_t p) {
  const Model& model = pipe.model();
  IdentityCheck r;
  for (std::size_t j = 0; j < model.s(); ++j) r.lhs += lattice_inner_products(pipe, F, j, p, model.params.K).norm2();
  const ModulationField& field = pipe.field();
  const PatchVector V = vectorize_patch(F, p, model.lattice, field.grid());
  double sum = 0.0;
  for (const auto& row : field.apply(p, V))
    for (const cplx& v : row) sum += std::norm(v);
  r.rhs = sum * field.grid().weight() / static_cast<double>(model.m());
  const double diff = std::abs(r.lhs - r.rhs);
  r.rel_error = r.rhs > 0.0 ? diff / r.rhs : diff;
  return r;
}

IdentityCheck check_sampling_identity(Pipeline& pipe, const SpaceElement& f, std::size_t j, std::size_t p,
                                      std::span<const long long> beta) {
  if (!f.source()) throw Error(ErrorKind::MissingProvenance, "space element was not produced from a patch function");
  const Model& model = pipe.model();
  const PatchFunction& F = *f.source();
  const IVec t = model.lattice.lattice_point(beta);
  RVec tx(t.begin(), t.end());
  IdentityCheck r;
  const cplx lhs = apply_filter_part(model.bank, j, f, p, tx);

  const GridFunction& piece = F.piece(p);
  const Grid& grid = piece.grid();
  const GridFunction g = symbol_on(pipe, j, p, grid);
  cplx acc{};
  RVec x(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    double ph = 0.0;
    for (std::size_t u = 0; u < x.size(); ++u) ph += static_cast<double>(t[u]) * x[u];
    acc += piece.values()[i] * g.values()[i] * std::polar(1.0, kTwoPi * model.N() * ph);
  }
  const cplx rhs = acc * grid.cell_volume() * std::pow(static_cast<double>(model.N()), 0.5 * model.dim());
  r.lhs = std::abs(lhs);
  r.rhs = std::abs(rhs);
  r.rel_error = std::abs(lhs - rhs);
  return r;
}

NullProbe null_direction(Pipeline& pipe, long long L) {
  const Model& model = pipe.model();
  const int d = model.dim();
  const auto ud = static_cast<std::size_t>(d);
  const auto N = static_cast<std::size_t>(model.N());
  const std::vector<IndexedArray> table = filtered_generator_table(model.bank, *model.generators);
  const IndexBox cols(d, L);
  const IndexBox rows(d, sample_radius(model, L));
  NullProbe best{CoefficientArray(N, cols), 0, std::numeric_limits<double>::infinity()};
  IVec alpha(ud), beta(ud), delta(ud);
  for (std::size_t p = 0; p < N; ++p) {
    Eigen::MatrixXcd S(static_cast<Eigen::Index>(model.s() * rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < model.s(); ++j) {
      const IndexedArray& T = table[j * N + p];
      for (std::size_t a = 0; a < rows.size(); ++a) {
        rows.at(a, alpha);
        const IVec t = model.lattice.lattice_point(alpha);
        for (std::size_t b = 0; b < cols.size(); ++b) {
          cols.at(b, beta);
          for (std::size_t u = 0; u < ud; ++u) delta[u] = t[u] - beta[u];
          S(static_cast<Eigen::Index>(j * rows.size() + a), static_cast<Eigen::Index>(b)) = T.at(delta);
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const bool wide = S.rows() < S.cols();
    const double smin = wide ? 0.0 : sv(sv.size() - 1);
    if (smin * smin < best.sigma_min2) {
      best.sigma_min2 = smin * smin;
      best.part = p;
      best.coeffs = CoefficientArray(N, cols);
      const Eigen::VectorXcd v = svd.matrixV().col(S.cols() - 1);
      for (std::size_t b = 0; b < cols.size(); ++b) best.coeffs[p][b] = v(static_cast<Eigen::Index>(b));
    }
  }
  return best;
}

AdversarialProbe bessel_probe(Pipeline& pipe, long long L) {
  const Model& model = pipe.model();
  const SpectralBounds& b = pipe.bounds();
  const std::size_t p = b.argmax_p;
  const RVec& y = b.argmax_y;
  const Eigen::MatrixXcd G = modulation_matrix_at(pipe.source(), model.lattice, p, y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.adjoint() * G);
  const Eigen::VectorXcd v = es.eigenvectors().col(G.cols() - 1);
  const IndexBox box(model.dim(), L);
  AdversarialProbe out{CoefficientArray(static_cast<std::size_t>(model.N()), box), p, L};
  IVec beta(static_cast<std::size_t>(model.dim()));
  for (std::size_t k = 0; k < box.size(); ++k) {
    box.at(k, beta);
    double w = 1.0, ph = 0.0;
    for (std::size_t u = 0; u < beta.size(); ++u) {
      w *= 1.0 - std::abs(static_cast<double>(beta[u])) / static_cast<double>(L + 1);
      ph += static_cast<double>(beta[u]) * y[u];
    }
    cplx sum{};
    for (std::size_t c = 0; c < model.m(); ++c) {
      const RVec& s = model.lattice.coset_shift(c);
      double phs = 0.0;
      for (std::size_t u = 0; u < beta.size(); ++u) phs += static_cast<double>(beta[u]) * s[u];
      sum += v(static_cast<Eigen::Index>(c)) * std::polar(1.0, kTwoPi * model.N() * phs);
    }
    out.coeffs[p][k] = w * std::polar(1.0, kTwoPi * model.N() * ph) * sum;
  }
  const double scale = 1.0 / std::sqrt(out.coeffs.norm2());
  for (auto& val : out.coeffs[p].values()) val *= scale;
  return out;
}

double sample_energy_ratio(Pipeline& pipe, const CoefficientArray& coeffs) {
  const Model& model = pipe.model();
  long long L = 0;
  for (std::size_t u = 0; u < static_cast<std::size_t>(model.dim()); ++u)
    L = std::max({L, std::abs(coeffs.box().lo()[u]), std::abs(coeffs.box().hi()[u])});
  const SpaceElement f = synthesize(model.generators, coeffs, probe_grid(model, L));
  const SampleSet samples = take_samples(f, model.bank, model.lattice, sample_radius(model, L));
  return samples.energy() / coeffs.norm2();
}

StabilityReport estimate_stability(Pipeline& pipe, std::size_t ensemble) {
  if (ensemble < 10) throw Error(ErrorKind::ValidationError, "stability ensemble needs at least 10 members");
  const Model& model = pipe.model();
  StabilityReport r;
  r.ensemble = ensemble;
  r.C1_coeff = r.C1_func = std::numeric_limits<double>::infinity();
  const Grid grid = Grid::with_resolution(pipe.working_grid().box(), norm_resolution(model));
  auto element = [&](const CoefficientArray& a) { return synthesize(model.generators, a, grid); };
  for (std::size_t t = 0; t < ensemble; ++t) {
    const CoefficientArray a = pipe.random_coefficients(stream_seed(pipe, kStability, t));
    const SpaceElement f = element(a);
    const double e = take_samples(f, model.bank, model.lattice, model.K_samp()).energy();
    const double rc = e / a.norm2();
    const double rf = e / f.norm2();
    r.C1_coeff = std::min(r.C1_coeff, rc);
    r.C2_coeff = std::max(r.C2_coeff, rc);
    r.C1_func = std::min(r.C1_func, rf);
    r.C2_func = std::max(r.C2_func, rf);
    if (t == 0) {
      CoefficientArray scaled = a;
      const cplx c(3.7, -1.2);
      for (std::size_t p = 0; p < scaled.N(); ++p)
        for (auto& v : scaled[p].values()) v *= c;
      const SpaceElement g = element(scaled);
      const double e2 = take_samples(g, model.bank, model.lattice, model.K_samp()).energy();
      r.scaling_defect = std::abs(e2 / g.norm2() - rf) / rf;
    }
  }

  const long long L = model.dim() == 1 ? model.params.K_coeff : std::min<long long>(model.params.K_coeff, 4);
  const NullProbe probe = null_direction(pipe, L);
  r.null_ratio = sample_energy_ratio(pipe, probe.coeffs);
  {
    const SpaceElement f = element(probe.coeffs);
    const double e = take_samples(f, model.bank, model.lattice, model.K_samp()).energy();
    r.C1_coeff = std::min(r.C1_coeff, r.null_ratio);
    r.C2_coeff = std::max(r.C2_coeff, r.null_ratio);
    r.C1_func = std::min(r.C1_func, e / f.norm2());
    r.C2_func = std::max(r.C2_func, e / f.norm2());
  }

  RieszOptions ro;
  ro.trials = model.params.riesz_trials;
  ro.K_coeff = model.params.K_coeff;
  ro.seed = stream_seed(pipe, kRiesz, 0);
  ro.resolution = model.dim() == 1 ? 64.0 : 16.0;
  r.riesz = riesz_bounds_estimate(model.generators, ro);

  const SpectralBounds& b = pipe.bounds();
  const double m = static_cast<double>(model.m());
  const bool frame = pipe.classification().frame;
  r.upper_coeff = (b.B_G / m) * (1.0 + 1e-3);
  r.upper_func = 1.05 * (b.B_G / m) / r.riesz.A_lo;
  r.lower_coeff = frame ? (b.A_G / m) * (1.0 - 1e-3) : 0.0;
  r.lower_func = frame ? 0.95 * (b.A_G / m) / r.riesz.B_hi : 0.0;
  r.within_envelopes = r.C2_coeff <= r.upper_coeff && r.C2_func <= r.upper_func && r.C1_coeff >= r.lower_coeff &&
                       r.C1_func >= r.lower_func && r.C1_coeff <= r.C2_coeff;
  return r;
}

namespace {

EquivalenceReport equivalence_from(Pipeline& pipe, const StabilityReport& stab) {
  const Model& model = pipe.model();
  EquivalenceReport r;
  r.A_G = pipe.bounds().A_G;
  r.a = r.A_G > model.tol.pinv_floor;
  r.C1 = stab.C1_coeff;
  r.b = r.C1 > model.tol.null_ratio;

  bool forced = false;
  try {
    const DualField& duals = pipe.duals(false);
    r.dual_residual = duals.residual();
    r.dual_max_modulus = duals.max_modulus();
    r.c = r.dual_max_modulus < model.tol.blowup_cap && r.dual_residual <= model.tol.dual_residual;
    r.dual_status = r.c ? "bounded" : "unbounded or inexact";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotLeftInvertible) throw;
    r.c = false;
    r.dual_residual = kNaN;
    r.dual_max_modulus = kNaN;
    r.dual_status = "not left invertible";
  }
  if (!r.c) forced = true;

  const long long L = model.dim() == 1 ? model.params.K_coeff : std::min<long long>(model.params.K_coeff, 4);
  const NullProbe probe = null_direction(pipe, L);
  r.null_reconstruction_error = run_reconstruction(pipe, probe.coeffs, forced).rel_error;
  r.max_reconstruction_error = r.null_reconstruction_error;
  for (std::size_t t = 0; t < model.params.reconstruction_trials; ++t) {
    const CoefficientArray a = pipe.random_coefficients(stream_seed(pipe, kReconstruction, t));
    r.max_reconstruction_error = std::max(r.max_reconstruction_error, run_reconstruction(pipe, a, forced).rel_error);
  }
  r.reconstruction_trials = model.params.reconstruction_trials + 1;
  r.d = r.max_reconstruction_error <= model.tol.reconstruct;
  r.agree = r.a == r.b && r.b == r.c && r.c == r.d;
  return r;
}

}  // namespace

EquivalenceReport equivalence_report(Pipeline& pipe) {
  return equivalence_from(pipe, estimate_stability(pipe, std::max<std::size_t>(10, pipe.model().params.stability_trials)));
}

VerifyReport run_verify(Pipeline& pipe) {
  const Model& model = pipe.model();
  const Params& P = model.params;
  const Tolerances& tol = model.tol;
  const int d = model.dim();
  const auto N = static_cast<std::size_t>(model.N());
  VerifyReport rep;
  rep.frame = pipe.classification().frame;

  // Modulation identity on random smooth F.
  rep.identity.bound = tol.identity;
  for (std::size_t t = 0; t < P.identity_trials; ++t) {
    const PatchFunction F = random_smooth_patch(d, model.N(), P.R, stream_seed(pipe, kIdentity, t));
    for (std::size_t p = 0; p < N; ++p)
      rep.identity.value = std::max(rep.identity.value, check_modulation_identity(pipe, F, p).rel_error);
  }
  rep.identity.trials = P.identity_trials;
  rep.identity.passed = rep.identity.value <= tol.identity;

  // Sampling identity at random (j, p, beta).
  {
    rep.sampling.bound = tol.sampling;
    Rng rng(stream_seed(pipe, kSampling, 0));
    std::uniform_int_distribution<std::size_t> pick_j(0, model.s() - 1), pick_p(0, N - 1);
    std::uniform_int_distribution<long long> pick_b(-3, 3);
    const Grid grid = probe_grid(model, P.K);
    std::optional<SpaceElement> f;
    for (std::size_t t = 0; t < P.sampling_probes; ++t) {
      if (t % 10 == 0) {
        const PatchFunction F = random_smooth_patch(d, model.N(), P.R, stream_seed(pipe, kSampling, t + 1));
        f = synthesis_operator_T(model.generators, F, P.K, grid);
      }
      const std::size_t j = pick_j(rng), p = pick_p(rng);
      IVec beta(static_cast<std::size_t>(d));
      for (auto& b : beta) b = pick_b(rng);
      rep.sampling.value = std::max(rep.sampling.value, check_sampling_identity(pipe, *f, j, p, beta).rel_error);
    }
    rep.sampling.trials = P.sampling_probes;
    rep.sampling.passed = rep.sampling.value <= tol.sampling;
  }

  rep.stability = estimate_stability(pipe, std::max<std::size_t>(10, P.stability_trials));
  const RieszEstimate& riesz = rep.stability.riesz;

  // ||T F||^2 between A_lo ||F||^2 and B_hi ||F||^2.
  {
    const Grid grid = working_grid(*model.generators, P.K, norm_resolution(model));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t t = 0; t < P.identity_trials; ++t) {
      const PatchFunction F = random_smooth_patch(d, model.N(), P.R, stream_seed(pipe, kSandwich, t));
      const double ratio = synthesis_operator_T(model.generators, F, P.K, grid).norm2() / F.norm2();
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    rep.riesz_lower = Stat{P.identity_trials, lo, riesz.A_lo * 0.98, lo >= riesz.A_lo * 0.98};
    rep.riesz_upper = Stat{P.identity_trials, hi, riesz.B_hi * 1.02, hi <= riesz.B_hi * 1.02};
  }

  // Bessel bound and its attainment.
  {
    const double m = static_cast<double>(model.m());
    const double BG = pipe.bounds().B_G;
    rep.bessel = Stat{rep.stability.ensemble + 1, rep.stability.C2_coeff, rep.stability.upper_coeff,
                      rep.stability.C2_coeff <= rep.stability.upper_coeff};
    const AdversarialProbe probe = bessel_probe(pipe, d == 1 ? 24 : 6);
    const double ratio = sample_energy_ratio(pipe, probe.coeffs);
    rep.bessel_tight = Stat{1, ratio, 0.9 * BG / m, ratio >= 0.9 * BG / m};
  }

  rep.equivalence = equivalence_from(pipe, rep.stability);

  // Dual residual and the torus dual-frame identity.
  if (rep.frame && rep.equivalence.c) {
    const DualField& duals = pipe.duals(false);
    rep.dual_residual = Stat{1, duals.residual(), tol.dual_residual, duals.residual() <= tol.dual_residual};

    double worst = 0.0;
    const double m = static_cast<double>(model.m());
    for (std::size_t p = 0; p < N; ++p) {
      const Grid grid = Grid::with_resolution(subcube(d, model.N(), p), P.R);
      std::vector<cplx> rows(grid.size() * model.s());
      RVec x(static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.point(i, x);
        const auto row = duals.row_at(p, x);
        std::copy(row.begin(), row.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * model.s()));
      }
      const IndexBox freqs(d, model.lattice.inf_norm() * P.K);
      for (std::size_t t = 0; t < P.dual_frame_trials; ++t) {
        const PatchFunction F = random_smooth_patch(d, model.N(), P.R, stream_seed(pipe, kDualFrame, t));
        std::vector<cplx> rebuilt(grid.size());
        for (std::size_t j = 0; j < model.s(); ++j) {
          const IndexedArray sigma = lattice_inner_products(pipe, F, j, p, P.K);
          IndexedArray placed(freqs);
          for (std::size_t k = 0; k < sigma.size(); ++k) placed.ref(model.lattice.lattice_point(sigma.box().at(k))) = sigma[k];
          const std::vector<cplx> u = evaluate_exponentials(placed, model.N(), grid);
          for (std::size_t i = 0; i < grid.size(); ++i) rebuilt[i] += m * rows[i * model.s() + j] * u[i];
        }
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          diff += std::norm(F.piece(p).values()[i] - rebuilt[i]);
          ref += std::norm(F.piece(p).values()[i]);
        }
        worst = std::max(worst, ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff));
      }
    }
    rep.dual_frame = Stat{P.dual_frame_trials, worst, tol.reconstruct, worst <= tol.reconstruct};
  } else {
    rep.dual_residual = Stat{0, kNaN, tol.dual_residual, true};
    rep.dual_frame = Stat{0, kNaN, tol.reconstruct, true};
  }

  if (rep.frame)
    rep.reconstruction = Stat{rep.equivalence.reconstruction_trials, rep.equivalence.max_reconstruction_error, tol.reconstruct,
                              rep.equivalence.max_reconstruction_error <= tol.reconstruct};
  else
    rep.reconstruction = Stat{1, rep.equivalence.null_reconstruction_error, 0.1, rep.equivalence.null_reconstruction_error > 0.1};

  // Shifting f by M beta shifts the samples by beta and the reconstruction by M beta.
  {
    const bool forced = !rep.equivalence.c;
    const KernelSet& kernels = pipe.kernels(forced);
    const CoefficientArray a = pipe.random_coefficients(stream_seed(pipe, kTranslation, 0));
    IVec beta(static_cast<std::size_t>(d), 0);
    beta[0] = 1;
    const IVec shift = model.lattice.lattice_point(beta);
    const CoefficientArray a_shift = shift_coefficients(a, shift, 0);
    const long long K_samp = model.K_samp() + 1;
    const Grid grid = probe_grid(model, P.K_coeff + model.lattice.inf_norm());
    const SampleSet s0 = take_samples(synthesize(model.generators, a, grid), model.bank, model.lattice, K_samp);
    const SampleSet s1 = take_samples(synthesize(model.generators, a_shift, grid), model.bank, model.lattice, K_samp);
    double sample_defect = 0.0, scale = 0.0;
    IVec alpha(beta.size()), back(beta.size());
    for (std::size_t j = 0; j < model.s(); ++j)
      for (std::size_t p = 0; p < N; ++p)
        for (std::size_t k = 0; k < s1.box().size(); ++k) {
          s1.box().at(k, alpha);
          for (std::size_t u = 0; u < alpha.size(); ++u) back[u] = alpha[u] - beta[u];
          sample_defect = std::max(sample_defect, std::abs(s1.values(j, p)[k] - s0.values(j, p).at(back)));
          scale = std::max(scale, std::abs(s1.values(j, p)[k]));
        }
    const CoefficientArray b0 = reconstruction_coefficients(s0, kernels, model.lattice);
    const CoefficientArray b1 = reconstruction_coefficients(s1, kernels, model.lattice);
    double coeff_defect = 0.0, bscale = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t k = 0; k < b1.box().size(); ++k) {
        b1.box().at(k, alpha);
        for (std::size_t u = 0; u < alpha.size(); ++u) back[u] = alpha[u] - shift[u];
        coeff_defect = std::max(coeff_defect, std::abs(b1[p][k] - b0[p].at(back)));
        bscale = std::max(bscale, std::abs(b1[p][k]));
      }
    const double defect = std::max(scale > 0.0 ? sample_defect / scale : sample_defect, bscale > 0.0 ? coeff_defect / bscale : coeff_defect);
    rep.translation = Stat{1, defect, 1e-10, defect <= 1e-10};
  }

  {
    const RefinedBounds& rb = pipe.refined_bounds();
    rep.refinement = Stat{1, std::max(rb.change_A, rb.change_B), 0.01, rb.converged};
  }

  const bool null_ok = rep.frame || rep.stability.null_ratio <= tol.null_ratio;
  rep.all_passed = rep.identity.passed && rep.sampling.passed && rep.riesz_lower.passed && rep.riesz_upper.passed &&
                   rep.bessel.passed && rep.bessel_tight.passed && rep.dual_residual.passed && rep.dual_frame.passed &&
                   rep.reconstruction.passed && rep.translation.passed && rep.refinement.passed &&
                   rep.stability.within_envelopes && rep.equivalence.agree && null_ok;
  return rep;
}

}  // namespace sisamp
