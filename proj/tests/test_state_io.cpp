// Copyright 2026 The bellpair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "bellpair/entanglement.hpp"
#include "bellpair/fixtures.hpp"
#include "bellpair/random.hpp"
#include "bellpair/state_io.hpp"

using namespace bellpair;
using Catch::Approx;

namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_state(text, {}, nullptr);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;  // sentinel: parsed fine
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("dump/parse round trip is byte-identical", "[state_io]") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    StateFile f{haar_state({2, 3, 2}, rng), trial % 2 ? std::optional<std::string>("label \"quoted\"") : std::nullopt};
    std::string text = dump_state(f);
    StateFile back = parse_state(text, {}, nullptr);
    CHECK(back.state.amps() == f.state.amps());
    CHECK(back.label == f.label);
    CHECK(dump_state(back) == text);
  }
}

TEST_CASE("save/load through the filesystem", "[state_io]") {
  auto dir = std::filesystem::temp_directory_path() / "bellpair_state_io";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "s.json").string();
  StateFile f{fixtures::counterexample(), "cx"};
  save_state(path, f);
  std::string first = slurp(path);
  save_state(path, load_state(path, {}, nullptr));
  CHECK(slurp(path) == first);
  CHECK_THROWS_AS(load_state((dir / "missing.json").string()), Error);
}

TEST_CASE("bundled fixture files match the generator", "[state_io]") {
  for (const auto& [name, file] : fixtures::bundled()) {
    std::string path = std::string(BELLPAIR_FIXTURES) + "/" + name;
    INFO(path);
    CHECK(slurp(path) == dump_state(file));
  }
}

TEST_CASE("parse errors", "[state_io]") {
  CHECK(parse_kind("not json") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"amps": [[1,0]]})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [2], "amps": [[1,0]]})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [0], "amps": []})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [2], "amps": [[1,0],[0]]})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [2], "amps": [[0,0],[0,0]]})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [2], "amps": [[1,0],[0,0]], "label": 3})") == ErrorKind::MalformedInput);
  CHECK(parse_kind(R"({"dims": [1024, 2048], "amps": []})") == ErrorKind::Oversize);
  CHECK(parse_kind(R"({"dims": [2], "amps": [[1,0],[0,0]]})") == ErrorKind::InvalidArgument);
}

TEST_CASE("unnormalized input is renormalized with a warning", "[state_io]") {
  std::ostringstream warn;
  auto f = parse_state(R"({"dims": [2], "amps": [[3,0],[0,4]]})", {}, &warn);
  CHECK(f.state.amps()[0].real() == Approx(0.6));
  CHECK(f.state.amps()[1].imag() == Approx(0.8));
  CHECK(warn.str().find("renormalizing") != std::string::npos);

  std::ostringstream quiet;
  parse_state(R"({"dims": [2], "amps": [[1,0],[1e-12,0]]})", {}, &quiet);
  CHECK(quiet.str().empty());
}

TEST_CASE("random states", "[state_io][random]") {
  std::mt19937_64 a(7), b(7);
  PureState s = haar_state({2, 2, 2, 2}, a);
  CHECK(s.amps() == haar_state({2, 2, 2, 2}, b).amps());
  CHECK(s.amps().norm() == Approx(1.0).margin(1e-12));
  CHECK_FALSE(separability_report(s).fully_product);
  CHECK_THROWS_AS(haar_state(std::vector<int>(21, 2), a), Error);

  CMatrix u = haar_unitary(4, a);
  CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}
