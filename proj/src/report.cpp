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

#include "sisamp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>

namespace sisamp {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json cplx_json(cplx v) { return json::array({v.real(), v.imag()}); }

json profile_json(const Profile& p) {
  if (p.is_zero()) return json{{"type", "zero"}};
  const Box b = p.support();
  return json{{"support_lower", b.lower}, {"support_upper", b.upper}};
}

json stat_json(const Stat& s) {
  return json{{"trials", s.trials}, {"value", number(s.value)}, {"bound", number(s.bound)}, {"passed", s.passed}};
}

json bounds_json(const SpectralBounds& b) {
  return json{{"A_G", b.A_G}, {"B_G", b.B_G}, {"argmin", {{"p", b.argmin_p}, {"y", b.argmin_y}}},
              {"argmax", {{"p", b.argmax_p}, {"y", b.argmax_y}}}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

json scenario_json(const Model& model) {
  json lat = json::array();
  for (int i = 0; i < model.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < model.dim(); ++k) row.push_back(model.lattice.matrix()(i, k));
    lat.push_back(row);
  }
  json gens = json::array();
  for (std::size_t j = 0; j < static_cast<std::size_t>(model.N()); ++j) {
    json comps = json::array();
    for (std::size_t q = 0; q < static_cast<std::size_t>(model.generators->r()); ++q) comps.push_back(profile_json(model.generators->component(j, q)));
    gens.push_back(json{{"components", comps}});
  }
  json filters = json::array();
  for (std::size_t j = 0; j < model.s(); ++j) {
    if (const auto* pe = std::get_if<PointEvaluation>(&model.bank.system(j))) {
      filters.push_back(json{{"type", "point"}, {"component", pe->component}, {"offset", pe->offset}});
    } else {
      json ks = json::array();
      for (const auto& k : std::get<Convolution>(model.bank.system(j)).kernels) ks.push_back(profile_json(k));
      filters.push_back(json{{"type", "convolution"}, {"kernels", ks}});
    }
  }
  const Params& p = model.params;
  const Tolerances& t = model.tol;
  return json{{"name", model.name},
              {"dim", model.dim()},
              {"N", model.N()},
              {"r", model.generators->r()},
              {"s", model.s()},
              {"m", model.m()},
              {"lattice", lat},
              {"gammas", model.lattice.gammas()},
              {"generators", gens},
              {"filters", filters},
              {"params",
               {{"R", p.R},
                {"K", p.K},
                {"K_sym", p.K_sym},
                {"K_coeff", p.K_coeff},
                {"K_samp", model.K_samp()},
                {"cell_resolution", p.cell_resolution},
                {"space_resolution", model.space_resolution()},
                {"seed", p.seed},
                {"identity_trials", p.identity_trials},
                {"sampling_probes", p.sampling_probes},
                {"stability_trials", p.stability_trials},
                {"reconstruction_trials", p.reconstruction_trials},
                {"dual_frame_trials", p.dual_frame_trials},
                {"riesz_trials", p.riesz_trials},
                {"strict_l1", p.strict_l1},
                {"strict_truncation", p.strict_truncation}}},
              {"tolerances",
               {{"rank", t.rank},
                {"identity", t.identity},
                {"reconstruct", t.reconstruct},
                {"sampling", t.sampling},
                {"dual_residual", t.dual_residual},
                {"null_ratio", t.null_ratio},
                {"pinv_floor", t.pinv_floor},
                {"blowup_cap", t.blowup_cap}}}};
}

json analyze_json(Pipeline& pipe) {
  const Model& model = pipe.model();
  const SymbolTable& table = *pipe.symbols();
  json symbols = json::array();
  for (std::size_t j = 0; j < model.s(); ++j)
    for (std::size_t p = 0; p < static_cast<std::size_t>(model.N()); ++p) {
      json terms = json::array();
      for (const auto& term : table.terms(j, p)) terms.push_back(json{{"alpha", term.alpha}, {"value", cplx_json(term.value)}});
      symbols.push_back(json{{"j", j},
                             {"p", p},
                             {"terms", terms},
                             {"ess_sup", table.ess_sup(j, p, model.dim() == 1 ? 1024 : 64)},
                             {"truncated", table.samples(j, p).truncated}});
    }
  const RefinedBounds& rb = pipe.refined_bounds();
  const Completeness& c = pipe.completeness();
  const SystemClassification& cl = pipe.classification();
  json per_piece = json::array();
  const SpectralBounds& b = pipe.bounds();
  for (std::size_t p = 0; p < b.lambda_min.size(); ++p) {
    double lo = b.lambda_min[p].empty() ? 0.0 : b.lambda_min[p][0], hi = 0.0;
    for (double v : b.lambda_min[p]) lo = std::min(lo, v);
    for (double v : b.lambda_max[p]) hi = std::max(hi, v);
    per_piece.push_back(json{{"p", p}, {"lambda_min", lo}, {"lambda_max", hi}, {"complete", static_cast<bool>(c.per_piece[p])}});
  }
  return json{{"schema", kReportSchema},
              {"command", "analyze"},
              {"scenario", scenario_json(model)},
              {"symbols", symbols},
              {"bounds", bounds_json(b)},
              {"refinement",
               {{"fine", bounds_json(rb.fine)}, {"change_A", rb.change_A}, {"change_B", rb.change_B}, {"converged", rb.converged}}},
              {"pieces", per_piece},
              {"completeness", {{"complete", c.complete}, {"deficient_points", c.deficient_points}, {"min_sigma_ratio", c.min_sigma_ratio}}},
              {"classification",
               {{"complete", cl.complete},
                {"bessel", cl.bessel},
                {"bessel_bound", cl.bessel_bound},
                {"frame", cl.frame},
                {"frame_bounds", cl.frame ? json::array({cl.frame_lower, cl.frame_upper}) : json(nullptr)},
                {"riesz", cl.riesz}}}};
}

json reconstruct_json(Pipeline& pipe, const ReconstructionRun& run, bool forced, std::uint64_t seed) {
  const Model& model = pipe.model();
  return json{{"schema", kReportSchema},
              {"command", "reconstruct"},
              {"scenario", scenario_json(model)},
              {"seed", seed},
              {"forced", forced},
              {"frame", pipe.classification().frame},
              {"K_samp", model.K_samp()},
              {"interior", {{"lower", pipe.interior().lower}, {"upper", pipe.interior().upper}}},
              {"sample_energy", run.sample_energy},
              {"norm2_f", run.original.norm2_on(pipe.interior())},
              {"rel_error", run.rel_error},
              {"tolerance", model.tol.reconstruct},
              {"passed", run.rel_error <= model.tol.reconstruct}};
}

json verify_json(Pipeline& pipe, const VerifyReport& rep) {
  const StabilityReport& s = rep.stability;
  const EquivalenceReport& e = rep.equivalence;
  return json{{"schema", kReportSchema},
              {"command", "verify"},
              {"scenario", scenario_json(pipe.model())},
              {"frame", rep.frame},
              {"checks",
               {{"modulation_identity", stat_json(rep.identity)},
                {"sampling_identity", stat_json(rep.sampling)},
                {"riesz_lower", stat_json(rep.riesz_lower)},
                {"riesz_upper", stat_json(rep.riesz_upper)},
                {"bessel_bound", stat_json(rep.bessel)},
                {"bessel_attained", stat_json(rep.bessel_tight)},
                {"dual_residual", stat_json(rep.dual_residual)},
                {"dual_frame_identity", stat_json(rep.dual_frame)},
                {"reconstruction", stat_json(rep.reconstruction)},
                {"translation_covariance", stat_json(rep.translation)},
                {"bound_refinement", stat_json(rep.refinement)}}},
              {"stability",
               {{"ensemble", s.ensemble},
                {"C1_coeff", s.C1_coeff},
                {"C2_coeff", s.C2_coeff},
                {"C1_func", s.C1_func},
                {"C2_func", s.C2_func},
                {"null_ratio", s.null_ratio},
                {"scaling_defect", s.scaling_defect},
                {"envelope_coeff", json::array({s.lower_coeff, s.upper_coeff})},
                {"envelope_func", json::array({number(s.lower_func), number(s.upper_func)})},
                {"within_envelopes", s.within_envelopes},
                {"riesz",
                 {{"A_lo", s.riesz.A_lo},
                  {"B_hi", s.riesz.B_hi},
                  {"probe", json::array({s.riesz.probe_min, s.riesz.probe_max})},
                  {"gram", json::array({number(s.riesz.gram_min), number(s.riesz.gram_max)})},
                  {"symbol", json::array({s.riesz.symbol_min, s.riesz.symbol_max})}}}}},
              {"equivalence",
               {{"a_bounds_positive", e.a},
                {"b_stable_sampler", e.b},
                {"c_bounded_dual", e.c},
                {"d_reconstructs", e.d},
                {"agree", e.agree},
                {"A_G", e.A_G},
                {"C1", e.C1},
                {"dual_status", e.dual_status},
                {"dual_residual", number(e.dual_residual)},
                {"dual_max_modulus", number(e.dual_max_modulus)},
                {"max_reconstruction_error", e.max_reconstruction_error},
                {"null_reconstruction_error", e.null_reconstruction_error},
                {"reconstruction_trials", e.reconstruction_trials}}},
              {"passed", rep.all_passed}};
}

void print_analyze_summary(std::ostream& os, Pipeline& pipe) {
  const SpectralBounds& b = pipe.bounds();
  const SystemClassification& c = pipe.classification();
  const Model& m = pipe.model();
  os << "scenario " << m.name << "  d=" << m.dim() << " N=" << m.N() << " s=" << m.s() << " m=" << m.m() << "\n";
  os << "  A_G        " << fmt(b.A_G) << "\n";
  os << "  B_G        " << fmt(b.B_G) << "\n";
  os << "  complete   " << yes(c.complete) << "\n";
  os << "  bessel     " << yes(c.bessel) << "  bound " << fmt(c.bessel_bound) << "\n";
  os << "  frame      " << yes(c.frame);
  if (c.frame) os << "  bounds [" << fmt(c.frame_lower) << ", " << fmt(c.frame_upper) << "]";
  os << "\n  riesz      " << yes(c.riesz) << "\n";
}

void print_reconstruct_summary(std::ostream& os, Pipeline& pipe, const ReconstructionRun& run) {
  os << "scenario " << pipe.model().name << "\n";
  os << "  samples energy   " << fmt(run.sample_energy) << "\n";
  os << "  relative error   " << fmt(run.rel_error) << "  (tolerance " << fmt(pipe.model().tol.reconstruct) << ")\n";
}

void print_verify_summary(std::ostream& os, const VerifyReport& rep) {
  auto row = [&](const char* name, const Stat& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-24s %-5s value %-12s bound %s\n", name, s.passed ? "ok" : "FAIL", fmt(s.value).c_str(),
                  fmt(s.bound).c_str());
    os << buf;
  };
  row("modulation identity", rep.identity);
  row("sampling identity", rep.sampling);
  row("riesz lower", rep.riesz_lower);
  row("riesz upper", rep.riesz_upper);
  row("bessel bound", rep.bessel);
  row("bessel attained", rep.bessel_tight);
  row("dual residual", rep.dual_residual);
  row("dual frame identity", rep.dual_frame);
  row("reconstruction", rep.reconstruction);
  row("translation covariance", rep.translation);
  row("bound refinement", rep.refinement);
  const EquivalenceReport& e = rep.equivalence;
  os << "  equivalence a=" << yes(e.a) << " b=" << yes(e.b) << " c=" << yes(e.c) << " d=" << yes(e.d)
     << (e.agree ? "  (agree)" : "  (DISAGREE)") << "\n";
  os << "  stability C1=" << fmt(rep.stability.C1_coeff) << " C2=" << fmt(rep.stability.C2_coeff)
     << (rep.stability.within_envelopes ? "  within envelopes" : "  OUTSIDE envelopes") << "\n";
  os << (rep.all_passed ? "verify: consistent\n" : "verify: invariant violation\n");
}

}  // namespace sisamp
