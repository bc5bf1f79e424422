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

// sisamp analyze|reconstruct|verify <scenario.json> [--seed n] [--force] [--out dir]
//
// Exit codes: 0 consistent, 2 invariant violation, 3 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sisamp/report.hpp"
#include "sisamp/scenario.hpp"
#include "sisamp/verify.hpp"

namespace fs = std::filesystem;
using namespace sisamp;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 2;
constexpr int kInputError = 3;

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  bool force = false;
  std::string out = "sisamp-out";
  std::string coeffs = "random";
  bool quiet = false;
};

void write_json(const fs::path& file, const nlohmann::json& j) {
  std::ofstream os(file);
  if (!os) throw Error(ErrorKind::ValidationError, "cannot write " + file.string());
  os << j.dump(2) << "\n";
}

void write_grid(const fs::path& file, const GridFunction& g) {
  std::ofstream os(file);
  if (!os) throw Error(ErrorKind::ValidationError, "cannot write " + file.string());
  write_csv(g, os);
}

Model load(const Options& o) {
  Model model = load_scenario(o.scenario);
  if (o.seed) model.params.seed = *o.seed;
  return model;
}

int cmd_analyze(const Options& o) {
  Pipeline pipe(load(o));
  const nlohmann::json report = analyze_json(pipe);
  fs::create_directories(o.out);
  write_json(fs::path(o.out) / "analyze.json", report);
  if (!o.quiet) print_analyze_summary(std::cout, pipe);
  return kOk;
}

int cmd_reconstruct(const Options& o) {
  Pipeline pipe(load(o));
  const Model& model = pipe.model();
  const bool frame = pipe.classification().frame;
  const bool forced = o.force && !frame;
  CoefficientArray coeffs = pipe.random_coefficients(model.params.seed);
  if (o.coeffs == "zero")
    coeffs = CoefficientArray(static_cast<std::size_t>(model.N()), IndexBox(model.dim(), model.params.K_coeff));
  const ReconstructionRun run = run_reconstruction(pipe, coeffs, forced);

  fs::create_directories(o.out);
  const fs::path out(o.out);
  write_json(out / "reconstruct.json", reconstruct_json(pipe, run, forced, model.params.seed));
  {
    std::ofstream os(out / "samples.csv");
    run.samples.write_csv(os);
  }
  for (std::size_t q = 0; q < static_cast<std::size_t>(run.original.r()); ++q) {
    write_grid(out / ("f_q" + std::to_string(q) + ".csv"), run.original.total_function(q));
    write_grid(out / ("fhat_q" + std::to_string(q) + ".csv"), run.reconstructed.total_function(q));
  }
  const KernelSet& kernels = pipe.kernels(forced);
  for (std::size_t j = 0; j < kernels.s(); ++j)
    for (std::size_t p = 0; p < kernels.N(); ++p) {
      const SpaceElement S = kernels.tabulate(j, p, pipe.working_grid());
      for (std::size_t q = 0; q < static_cast<std::size_t>(S.r()); ++q)
        write_grid(out / ("kernel_j" + std::to_string(j) + "_p" + std::to_string(p) + "_q" + std::to_string(q) + ".csv"),
                   S.total_function(q));
    }
  if (!o.quiet) print_reconstruct_summary(std::cout, pipe, run);
  return run.rel_error <= model.tol.reconstruct ? kOk : kViolation;
}

int cmd_verify(const Options& o) {
  Pipeline pipe(load(o));
  const VerifyReport rep = run_verify(pipe);
  fs::create_directories(o.out);
  write_json(fs::path(o.out) / "verify.json", verify_json(pipe, rep));
  if (!o.quiet) print_verify_summary(std::cout, rep);
  return rep.all_passed ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and reconstruction in finitely generated shift-invariant spaces"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario, "scenario JSON file")->required();
    sub->add_option("--seed", o.seed, "override the scenario seed");
    sub->add_option("--out", o.out, "directory for reports and exports")->capture_default_str();
    sub->add_flag("--quiet", o.quiet, "suppress the summary table");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "symbols, modulation bounds and classification");
  add_common(analyze);
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "sample a random element and reconstruct it");
  add_common(reconstruct);
  reconstruct->add_flag("--force", o.force, "reconstruct with the Moore-Penrose inverse when the system is not a frame");
  reconstruct->add_option("--coeffs", o.coeffs, "coefficient source")->check(CLI::IsMember({"random", "zero"}))->capture_default_str();
  CLI::App* verify = app.add_subcommand("verify", "run every numerical check");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*reconstruct) return cmd_reconstruct(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "sisamp: " << e.what() << "\n";
    if (e.kind() == ErrorKind::NotLeftInvertible) std::cerr << "sisamp: rerun with --force to reconstruct anyway\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "sisamp: " << e.what() << "\n";
    return kInputError;
  }
}
