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

#include "bellpair/fixtures.hpp"
#include "bellpair/random.hpp"
#include "bellpair/reduction.hpp"
#include "bellpair/search.hpp"

using namespace bellpair;
using Catch::Approx;

TEST_CASE("reduce_to_qubits leaves qubit states alone", "[reduction]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    PureState s = haar_state({2, 2, 2}, rng);
    auto trace = reduce_to_qubits(s);
    CHECK(trace.output.amps() == s.amps());
    CHECK(trace.weight == 1.0);
    for (int p = 1; p <= 3; ++p) CHECK(trace.action(p).kind == PartyActionKind::Identity);
  }
}

TEST_CASE("reduce_to_qubits: qutrit GHZ", "[reduction]") {
  auto trace = reduce_to_qubits(fixtures::ghz(3, 3));
  for (int p = 1; p <= 3; ++p) CHECK(trace.action(p).kind == PartyActionKind::Truncated2D);
  CHECK(trace.dims() == std::vector<int>{2, 2, 2});
  CHECK(distance_up_to_phase(trace.output.amps(), fixtures::ghz(3).amps()) < 1e-12);
  CHECK(trace.weight == Approx(2.0 / 3.0).margin(1e-12));
  CHECK_FALSE(is_fully_product(trace.output));
}

TEST_CASE("reduce_to_qubits: product qutrit times entangled pair", "[reduction]") {
  CVector pair = CVector::Zero(9);
  pair[0] = pair[4] = pair[8] = 1 / std::sqrt(3.0);
  CVector amps = CVector::Zero(27);
  amps.head(9) = pair;  // party 1 in |0>
  auto trace = reduce_to_qubits(PureState({3, 3, 3}, amps));
  CHECK(trace.action(1).kind == PartyActionKind::Kept1D);
  CHECK((trace.action(1).retained[0] - CVector::Unit(3, 0)).norm() < 1e-12);
  CHECK(trace.action(2).kind == PartyActionKind::Truncated2D);
  CHECK(trace.action(3).kind == PartyActionKind::Truncated2D);
  CHECK(trace.dims() == std::vector<int>{1, 2, 2});
  CHECK_FALSE(is_product_across(trace.output, Bipartition(3, {2})));
}

TEST_CASE("embed_projection examples", "[reduction]") {
  SECTION("Kept1D lifts to the sole Schmidt vector") {
    CVector amps = CVector::Zero(18);
    CVector local(3);
    local << 0.6, Complex(0, 0.8), 0;
    // party 1 = local, parties 2,3 Bell-like in dims (3, 2)
    for (int i = 0; i < 3; ++i) {
      amps[i * 6 + 0] = local[i] * M_SQRT1_2;
      amps[i * 6 + 3] = local[i] * M_SQRT1_2;
    }
    auto trace = reduce_to_qubits(PureState({3, 3, 2}, amps));
    REQUIRE(trace.action(1).kind == PartyActionKind::Kept1D);
    LocalVector lifted = embed_projection(trace, LocalVector(1, CVector::Ones(1)));
    CHECK(distance_up_to_phase(lifted.coords(), local) < 1e-10);
  }
  SECTION("Truncated2D with computational retained vectors, |+>") {
    auto trace = reduce_to_qubits(fixtures::ghz(3, 3));
    LocalVector lifted = embed_projection(trace, LocalVector(2, kets::plus()));
    CVector expected(3);
    expected << M_SQRT1_2, M_SQRT1_2, 0;
    CHECK((lifted.coords() - expected).norm() < 1e-12);
  }
  SECTION("random qutrit trace, |1> lifts to the second retained vector") {
    std::mt19937_64 rng(41);
    auto trace = reduce_to_qubits(haar_state({3, 3, 3}, rng));
    REQUIRE(trace.action(2).kind == PartyActionKind::Truncated2D);
    LocalVector lifted = embed_projection(trace, LocalVector(2, kets::one()));
    CHECK((lifted.coords() - trace.action(2).retained[1]).norm() < 1e-12);
  }
  SECTION("errors") {
    auto trace = reduce_to_qubits(fixtures::ghz(3, 3));
    try {
      embed_projection(trace, LocalVector(4, kets::one()));
      FAIL();
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PartyNotInTrace);
    }
    CHECK_THROWS_AS(embed_projection(trace, LocalVector(1, CVector::Unit(3, 0))), Error);
  }
}

TEST_CASE("reduction preserves entanglement", "[reduction][property]") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> nd(2, 4), dd(2, 3);
  for (int trial = 0; trial < 500; ++trial) {
    int n = nd(rng);
    std::vector<int> dims;
    for (int k = 0; k < n; ++k) dims.push_back(dd(rng));
    PureState s = haar_state(dims, rng);
    // Every fourth state: make party 1 product with the rest.
    if (trial % 4 == 0 && n >= 3) {
      std::vector<int> rest(dims.begin() + 1, dims.end());
      PureState tail = haar_state(rest, rng);
      CVector head = random_gaussian_vector(dims[0], rng);
      head.normalize();
      CVector amps(static_cast<Eigen::Index>(total_dim(dims)));
      for (int i = 0; i < dims[0]; ++i) amps.segment(i * tail.amps().size(), tail.amps().size()) = head[i] * tail.amps();
      s = PureState(dims, amps);
    }
    REQUIRE_FALSE(is_fully_product(s));
    auto trace = reduce_to_qubits(s);
    for (int d : trace.dims()) CHECK(d <= 2);
    CHECK_FALSE(is_fully_product(trace.output));
  }
}

TEST_CASE("lifted projections reproduce the reduced residual", "[reduction][property]") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> dims = {3, 2, 3, 3};
    PureState s = haar_state(dims, rng);
    auto trace = reduce_to_qubits(s);
    std::vector<LocalVector> qubit, lifted;
    for (int p : {2, 4}) {
      qubit.push_back(LocalVector::normalized(p, random_gaussian_vector(trace.output.dim(p), rng)));
      lifted.push_back(embed_projection(trace, qubit.back()));
    }
    auto on_reduced = project(trace.output, qubit);
    auto on_original = project(s, lifted);
    std::vector<int> kept = {1, 3};
    PureState mapped = restrict_to_reduced(trace, on_original.residual, kept);
    CHECK(distance_up_to_phase(mapped.amps(), on_reduced.residual.amps()) < 1e-9);
  }
}
