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

#include "sisamp/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "sisamp/random.hpp"

namespace sisamp {

long long Model::reach() const { return generators->support_radius() + bank.support_radius(); }

long long Model::K_samp() const {
  if (params.K_samp) return *params.K_samp;
  const double span = static_cast<double>(params.K_coeff + reach());
  return static_cast<long long>(std::ceil(lattice.inverse_inf_norm() * span - 1e-12)) + 1;
}

double Model::space_resolution() const {
  if (params.space_resolution) return *params.space_resolution;
  return dim() == 1 ? 256.0 : 32.0;
}

Pipeline::Pipeline(Model model) : model_(std::move(model)) {
  check_regime(model_.dim(), model_.N());
  const auto& g = *model_.generators;
  if (g.dim() != model_.dim() || g.N() != model_.N() || model_.bank.dim() != model_.dim() || model_.bank.r() != g.r())
    throw Error(ErrorKind::ShapeMismatch, "lattice, generators and filters disagree on d, N or r");
  const long long reach = model_.reach();
  const auto W = static_cast<double>(model_.params.K_coeff + 2 * reach + 1);
  grid_ = Grid::with_resolution(Box::cube(model_.dim(), -W, W), model_.space_resolution());
  interior_ = Box::cube(model_.dim(), -W + static_cast<double>(reach), W - static_cast<double>(reach));
}

const std::shared_ptr<const SymbolTable>& Pipeline::symbols() {
  if (!symbols_)
    symbols_ = std::make_shared<const SymbolTable>(
        build_symbols(model_.bank, *model_.generators, model_.params.K_sym, model_.params.strict_truncation));
  return symbols_;
}

const SymbolSource& Pipeline::source() {
  if (!source_) source_ = SymbolSource::from_table(symbols());
  return *source_;
}

const ModulationField& Pipeline::field() {
  if (!field_) field_.emplace(source(), model_.lattice, model_.params.cell_resolution);
  return *field_;
}

const SpectralBounds& Pipeline::bounds() {
  if (!bounds_) bounds_ = spectral_bounds(field());
  return *bounds_;
}

const RefinedBounds& Pipeline::refined_bounds() {
  if (!refined_) {
    RefinedBounds r;
    r.coarse = bounds();
    r.fine = spectral_bounds(ModulationField(source(), model_.lattice, 2 * model_.params.cell_resolution));
    const double floor = 1e-12 * std::max(r.fine.B_G, 1e-300);
    r.change_A = std::abs(r.fine.A_G - r.coarse.A_G) / std::max({r.fine.A_G, r.coarse.A_G, floor});
    r.change_B = std::abs(r.fine.B_G - r.coarse.B_G) / std::max({r.fine.B_G, r.coarse.B_G, floor});
    if (r.fine.A_G <= floor && r.coarse.A_G <= floor) r.change_A = 0.0;
    r.converged = r.change_A < 0.01 && r.change_B < 0.01;
    refined_ = std::move(r);
  }
  return *refined_;
}

const Completeness& Pipeline::completeness() {
  if (!completeness_) completeness_ = completeness_test(field(), model_.tol.rank);
  return *completeness_;
}

const SystemClassification& Pipeline::classification() {
  if (!classification_)
    classification_ = classify(bounds(), model_.s(), model_.m(), completeness(), model_.tol.pinv_floor, model_.tol.blowup_cap);
  return *classification_;
}

const DualField& Pipeline::duals(bool force) {
  auto& slot = duals_[force ? 1 : 0];
  if (!slot) slot.emplace(source(), model_.lattice, field(), bounds().A_G, model_.tol.pinv_floor, force);
  return *slot;
}

const KernelSet& Pipeline::kernels(bool force) {
  auto& slot = kernels_[force ? 1 : 0];
  if (!slot) slot = build_kernels(duals(force), model_.generators, model_.params.K, model_.params.R);
  return *slot;
}

CoefficientArray Pipeline::random_coefficients(std::uint64_t seed) const {
  Rng rng(seed);
  CoefficientArray a(static_cast<std::size_t>(model_.N()), IndexBox(model_.dim(), model_.params.K_coeff));
  for (std::size_t p = 0; p < a.N(); ++p)
    for (auto& v : a[p].values()) v = complex_gaussian(rng);
  const double scale = 1.0 / std::sqrt(a.norm2());
  for (std::size_t p = 0; p < a.N(); ++p)
    for (auto& v : a[p].values()) v *= scale;
  return a;
}

SpaceElement Pipeline::element(const CoefficientArray& coeffs) const {
  return synthesize(model_.generators, coeffs, grid_, BoxPolicy::strict);
}

double relative_error(const SpaceElement& a, const SpaceElement& b, const Box& region) {
  const Grid& grid = b.grid();
  if (!grid.same_layout(a.grid())) throw Error(ErrorKind::ShapeMismatch, "elements live on different grids");
  double diff = 0.0, ref = 0.0;
  RVec x(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    if (!region.contains(x)) continue;
    for (std::size_t q = 0; q < static_cast<std::size_t>(b.r()); ++q) {
      diff += std::norm(a.total(q)[i] - b.total(q)[i]);
      ref += std::norm(b.total(q)[i]);
    }
  }
  diff *= grid.cell_volume();
  ref *= grid.cell_volume();
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

ReconstructionRun run_reconstruction(Pipeline& pipe, const CoefficientArray& coeffs, bool force) {
  const Model& model = pipe.model();
  SpaceElement f = pipe.element(coeffs);
  SampleSet samples = take_samples(f, model.bank, model.lattice, model.K_samp());
  SpaceElement fhat = reconstruct(samples, pipe.kernels(force), model.lattice, pipe.working_grid());
  const double err = relative_error(fhat, f, pipe.interior());
  const double energy = samples.energy();
  return ReconstructionRun{std::move(samples), std::move(f), std::move(fhat), energy, err};
}

}  // namespace sisamp
