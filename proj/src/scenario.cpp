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

#include "sisamp/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sisamp {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + why);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

template <class T>
T get_as(const json& v, const std::string& path) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    field_error(path, "wrong type");
  }
}

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) field_error(path, "expected an integer");
  return v.get<long long>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, "expected a number");
  return v.get<double>();
}

RVec get_vector(const json& v, int dim, const std::string& path) {
  if (v.is_number()) return RVec(static_cast<std::size_t>(dim), v.get<double>());
  if (!v.is_array() || v.size() != static_cast<std::size_t>(dim)) field_error(path, "expected " + std::to_string(dim) + " numbers");
  RVec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

GridFunction load_table(const json& desc, const std::filesystem::path& base, int dim, const std::string& path) {
  const std::filesystem::path file = base / get_as<std::string>(require(desc, "file", path), path + ".file");
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::ValidationError, "referenced file does not exist: " + file.string());
  GridFunction g = read_csv(in);
  if (g.grid().dim() != dim) throw Error(ErrorKind::ValidationError, "table " + file.string() + " has the wrong dimension");
  return g;
}

Profile profile_from(const json& desc, const std::filesystem::path& base, int dim, const std::string& path) {
  const std::string type = get_as<std::string>(require(desc, "type", path), path + ".type");
  if (type == "zero") return Profile::zero(dim);
  if (type == "tabulated") return Profile::tabulated(load_table(desc, base, dim, path));
  if (type == "box" && desc.contains("width") && !desc.contains("shift")) return Profile::box_average(get_vector(desc["width"], dim, path + ".width"));
  SplineKind kind;
  if (type == "box")
    kind = SplineKind::box;
  else if (type == "hat")
    kind = SplineKind::hat;
  else if (type == "cubic")
    kind = SplineKind::cubic;
  else
    field_error(path + ".type", "unknown profile type '" + type + "'");
  const RVec shift = desc.contains("shift") ? get_vector(desc["shift"], dim, path + ".shift") : RVec(static_cast<std::size_t>(dim), 0.0);
  const RVec width = desc.contains("width") ? get_vector(desc["width"], dim, path + ".width") : RVec(static_cast<std::size_t>(dim), 1.0);
  std::vector<Spline1D> axes;
  for (int a = 0; a < dim; ++a) {
    const auto u = static_cast<std::size_t>(a);
    if (!(width[u] > 0.0)) field_error(path + ".width", "must be positive");
    axes.push_back(Spline1D{kind, shift[u], width[u]});
  }
  return Profile::spline(std::move(axes));
}

void positive(double v, const std::string& field) {
  if (!(v > 0.0)) throw Error(ErrorKind::ValidationError, "parameter '" + field + "' must be positive");
}

}  // namespace

Model parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) field_error("", "scenario must be a JSON object");

  const int dim = static_cast<int>(get_int(require(doc, "dim", ""), "dim"));
  const int N = doc.contains("N") ? static_cast<int>(get_int(doc["N"], "N")) : 1;
  const int r = doc.contains("r") ? static_cast<int>(get_int(doc["r"], "r")) : 1;
  if (dim < 1 || dim > 8) throw Error(ErrorKind::ValidationError, "dim must be between 1 and 8");
  if (N < 1) throw Error(ErrorKind::ValidationError, "N must be positive");
  if (r < 1) throw Error(ErrorKind::ValidationError, "r must be positive");
  check_regime(dim, N);

  const json& lat = require(doc, "lattice", "");
  if (!lat.is_array() || lat.size() != static_cast<std::size_t>(dim)) field_error("lattice", "expected " + std::to_string(dim) + " rows");
  IVec entries;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const std::string row = "lattice[" + std::to_string(i) + "]";
    if (!lat[i].is_array() || lat[i].size() != static_cast<std::size_t>(dim)) field_error(row, "expected " + std::to_string(dim) + " entries");
    for (std::size_t k = 0; k < lat[i].size(); ++k) entries.push_back(get_int(lat[i][k], row + "[" + std::to_string(k) + "]"));
  }
  IntMatrix M(dim, entries);
  if (M.determinant() == 0) throw Error(ErrorKind::ValidationError, "lattice matrix is singular");

  std::optional<SamplingLattice> lattice;
  if (doc.contains("gammas")) {
    std::vector<IVec> gammas;
    for (std::size_t k = 0; k < doc["gammas"].size(); ++k) {
      const RVec g = get_vector(doc["gammas"][k], dim, "gammas[" + std::to_string(k) + "]");
      IVec gi;
      for (double v : g) gi.push_back(std::llround(v));
      gammas.push_back(gi);
    }
    try {
      lattice.emplace(M, N, gammas);
    } catch (const Error& e) {
      throw Error(ErrorKind::ValidationError, std::string("gammas: ") + e.what());
    }
  } else {
    lattice.emplace(M, N);
  }

  const json& gens = require(doc, "generators", "");
  if (!gens.is_array() || gens.size() != static_cast<std::size_t>(N)) field_error("generators", "expected N = " + std::to_string(N) + " generators");
  std::vector<Generator> generators;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const std::string path = "generators[" + std::to_string(j) + "]";
    const json& comps = require(gens[j], "components", path);
    if (!comps.is_array() || comps.size() != static_cast<std::size_t>(r)) field_error(path + ".components", "expected r = " + std::to_string(r) + " components");
    Generator g;
    for (std::size_t q = 0; q < comps.size(); ++q)
      g.components.push_back(profile_from(comps[q], base_dir, dim, path + ".components[" + std::to_string(q) + "]"));
    generators.push_back(std::move(g));
  }
  auto gset = std::make_shared<const GeneratorSet>(dim, r, std::move(generators));
  for (std::size_t j = 0; j < static_cast<std::size_t>(N); ++j)
    for (std::size_t q = 0; q < static_cast<std::size_t>(r); ++q) {
      const Profile& p = gset->component(j, q);
      if (p.is_zero()) continue;
      GeneratorSet single(dim, 1, {Generator{{p}}});
      if (single.continuity_defect(dim == 1 ? 4096.0 : 256.0) > 0.05)
        throw Error(ErrorKind::ValidationError, "generator " + std::to_string(j) + " component " + std::to_string(q) + " is not continuous");
    }

  Params params;
  Tolerances tol;
  if (doc.contains("params")) {
    const json& p = doc["params"];
    if (!p.is_object()) field_error("params", "expected an object");
    for (const auto& [key, v] : p.items()) {
      const std::string path = "params." + key;
      if (key == "R") params.R = get_number(v, path);
      else if (key == "K") params.K = get_int(v, path);
      else if (key == "K_sym") params.K_sym = get_int(v, path);
      else if (key == "K_coeff") params.K_coeff = get_int(v, path);
      else if (key == "K_samp") params.K_samp = get_int(v, path);
      else if (key == "cell_resolution") params.cell_resolution = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "space_resolution") params.space_resolution = get_number(v, path);
      else if (key == "seed") params.seed = static_cast<std::uint64_t>(get_int(v, path));
      else if (key == "identity_trials") params.identity_trials = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "sampling_probes") params.sampling_probes = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "stability_trials") params.stability_trials = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "reconstruction_trials") params.reconstruction_trials = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "dual_frame_trials") params.dual_frame_trials = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "riesz_trials") params.riesz_trials = static_cast<std::size_t>(std::max<long long>(0, get_int(v, path)));
      else if (key == "strict_l1") params.strict_l1 = get_as<bool>(v, path);
      else if (key == "strict_truncation") params.strict_truncation = get_as<bool>(v, path);
      else field_error(path, "unknown parameter");
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) field_error("tolerances", "expected an object");
    for (const auto& [key, v] : t.items()) {
      const std::string path = "tolerances." + key;
      const double x = get_number(v, path);
      if (key == "rank") tol.rank = x;
      else if (key == "identity") tol.identity = x;
      else if (key == "reconstruct") tol.reconstruct = x;
      else if (key == "sampling") tol.sampling = x;
      else if (key == "dual_residual") tol.dual_residual = x;
      else if (key == "null_ratio") tol.null_ratio = x;
      else if (key == "pinv_floor") tol.pinv_floor = x;
      else if (key == "blowup_cap") tol.blowup_cap = x;
      else field_error(path, "unknown tolerance");
      positive(x, path);
    }
  }
  positive(params.R, "R");
  positive(static_cast<double>(params.K), "K");
  positive(static_cast<double>(params.K_sym), "K_sym");
  positive(static_cast<double>(params.K_coeff), "K_coeff");
  if (params.K_samp) positive(static_cast<double>(*params.K_samp), "K_samp");
  if (params.space_resolution) positive(*params.space_resolution, "space_resolution");
  if (params.cell_resolution < 2) throw Error(ErrorKind::ValidationError, "parameter 'cell_resolution' must be at least 2");
  if (std::abs(params.R - std::round(params.R)) > 1e-12) throw Error(ErrorKind::ValidationError, "parameter 'R' must be an integer");

  const json& fil = require(doc, "filters", "");
  if (!fil.is_array() || fil.empty()) field_error("filters", "expected a non-empty array");
  std::vector<FilterSystem> systems;
  for (std::size_t j = 0; j < fil.size(); ++j) {
    const std::string path = "filters[" + std::to_string(j) + "]";
    const std::string type = get_as<std::string>(require(fil[j], "type", path), path + ".type");
    if (type == "point") {
      PointEvaluation pe;
      pe.component = fil[j].contains("component") ? static_cast<std::size_t>(get_int(fil[j]["component"], path + ".component")) : 0;
      pe.offset = fil[j].contains("offset") ? get_vector(fil[j]["offset"], dim, path + ".offset") : RVec(static_cast<std::size_t>(dim), 0.0);
      systems.emplace_back(std::move(pe));
    } else if (type == "convolution") {
      const json& ks = require(fil[j], "kernels", path);
      if (!ks.is_array() || ks.size() != static_cast<std::size_t>(r)) field_error(path + ".kernels", "expected r = " + std::to_string(r) + " kernels");
      Convolution c;
      for (std::size_t q = 0; q < ks.size(); ++q) c.kernels.push_back(profile_from(ks[q], base_dir, dim, path + ".kernels[" + std::to_string(q) + "]"));
      systems.emplace_back(std::move(c));
    } else {
      field_error(path + ".type", "unknown filter type '" + type + "'");
    }
  }
  FilterBank bank(dim, r, std::move(systems), params.strict_l1);

  Model model{doc.contains("name") ? get_as<std::string>(doc["name"], "name") : std::string("scenario"),
              std::move(*lattice), std::move(gset), std::move(bank), params, tol};
  return model;
}

Model load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ValidationError, "cannot read scenario file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

}  // namespace sisamp
