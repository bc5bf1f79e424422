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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sisamp/scenario.hpp"
#include "test_util.hpp"

using namespace sisamp;

namespace {

const char* kMinimal = R"({
  "dim": 1,
  "lattice": [[1]],
  "generators": [{"components": [{"type": "hat"}]}],
  "filters": [{"type": "point"}]
})";

std::string with(const std::string& key_value) {
  std::string s = kMinimal;
  s.insert(s.find('{') + 1, "\n  " + key_value + ",");
  return s;
}

std::string error_text(const std::string& text, ErrorKind expected) {
  try {
    parse_scenario(text, ".");
  } catch (const Error& e) {
    CHECK_MESSAGE(e.kind() == expected, e.what());
    return e.what();
  }
  FAIL("scenario was accepted");
  return {};
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("minimal file gets defaults") {
    const Model m = parse_scenario(kMinimal, ".");
    CHECK(m.params.R == 256);
    CHECK(m.params.K == 32);
    CHECK(m.params.cell_resolution == 128);
    CHECK(m.params.seed == 7);
    CHECK(m.tol.identity == 1e-3);
    CHECK(m.N() == 1);
    CHECK(m.m() == 1);
    CHECK(m.s() == 1);
    CHECK(m.bank.is_point(0));
    CHECK(m.name == "scenario");
  }

  TEST_CASE("parameters and tolerances") {
    const Model m = parse_scenario(with(R"("params": {"R": 128, "K": 16, "seed": 3, "K_samp": 9}, "tolerances": {"identity": 1e-4})"), ".");
    CHECK(m.params.R == 128);
    CHECK(m.params.K == 16);
    CHECK(m.params.seed == 3);
    CHECK(m.K_samp() == 9);
    CHECK(m.tol.identity == 1e-4);
    error_text(with(R"("params": {"bogus": 1})"), ErrorKind::ParseError);
    error_text(with(R"("tolerances": {"identity": -1})"), ErrorKind::ValidationError);
    error_text(with(R"("params": {"R": 100.5})"), ErrorKind::ValidationError);
  }

  TEST_CASE("regime and lattice validation") {
    const std::string two_by_two = R"({
      "dim": 2, "N": 2,
      "lattice": [[1, 0], [0, 1]],
      "generators": [{"components": [{"type": "hat"}]}, {"components": [{"type": "cubic"}]}],
      "filters": [{"type": "point"}]
    })";
    error_text(two_by_two, ErrorKind::UnsupportedRegime);
    error_text(with(R"("name": "x")").replace(with(R"("name": "x")").find("[[1]]"), 5, "[[0]]"), ErrorKind::ValidationError);
  }

  TEST_CASE("syntax errors carry the line") {
    const std::string broken = "{\n  \"dim\": 1,\n  \"lattice\": [[1]]\n  \"generators\": []\n}";
    const std::string what = error_text(broken, ErrorKind::ParseError);
    CHECK(what.find("line 4") != std::string::npos);
  }

  TEST_CASE("field errors carry the path") {
    std::string s = kMinimal;
    s.replace(s.find("\"hat\""), 5, "\"spline9\"");
    const std::string what = error_text(s, ErrorKind::ParseError);
    CHECK(what.find("generators[0].components[0]") != std::string::npos);
    error_text(R"({"lattice": [[1]]})", ErrorKind::ParseError);
  }

  TEST_CASE("discontinuous generators are rejected") {
    std::string s = kMinimal;
    s.replace(s.find("\"hat\""), 5, "\"box\"");
    error_text(s, ErrorKind::ValidationError);
  }

  TEST_CASE("tabulated generators") {
    const auto dir = std::filesystem::temp_directory_path() / "sisamp_scenario_test";
    std::filesystem::create_directories(dir);
    {
      std::ofstream out(dir / "hat.csv");
      write_csv(GridFunction::tabulate(Grid::with_resolution(Box::cube(1, -1.0, 1.0), 64),
                                       [](std::span<const double> x) { return cplx(1.0 - std::abs(x[0])); }),
                out);
    }
    std::string s = kMinimal;
    s.replace(s.find(R"({"type": "hat"})"), 15, R"({"type": "tabulated", "file": "hat.csv"})");
    const Model m = parse_scenario(s, dir);
    CHECK(m.generators->component(0, 0)(RVec{0.25}).real() == doctest::Approx(0.75).epsilon(1e-3));

    std::string missing = s;
    missing.replace(missing.find("hat.csv"), 7, "nope.csv");
    const std::string what = error_text(missing, ErrorKind::ValidationError);
    CHECK(what.find("nope.csv") != std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("golden scenarios load") {
    for (const char* f : {"classical.json", "oversampled.json", "averaging.json", "rank_deficient.json", "quincunx.json",
                          "vector_two_pieces.json"}) {
      CHECK_NOTHROW(test::golden(f));
    }
    CHECK_ERROR_KIND(test::golden("does_not_exist.json"), ErrorKind::ValidationError);
  }
}
