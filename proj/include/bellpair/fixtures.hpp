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

#ifndef BELLPAIR_FIXTURES_HPP
#define BELLPAIR_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "bellpair/state_io.hpp"

namespace bellpair::fixtures {

/// Superposition with equal weights over the listed computational strings.
inline PureState uniform_superposition(std::vector<int> dims, const std::vector<std::string>& strings) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
  for (const auto& s : strings) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < s.size(); ++k) index = index * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(s[k] - '0');
    amps[static_cast<Eigen::Index>(index)] += 1.0;
  }
  return PureState::normalized(std::move(dims), std::move(amps));
}

/// (|0000> + |0101> + |0110> + |1111>)/2: every bipartition is entangled, yet
/// every computational projection of parties 3,4 leaves 1,2 in a product state.
inline PureState counterexample() { return uniform_superposition({2, 2, 2, 2}, {"0000", "0101", "0110", "1111"}); }

inline PureState ghz(int n, int d = 2) {
  std::vector<std::string> strings;
  for (int k = 0; k < d; ++k) strings.emplace_back(static_cast<std::size_t>(n), static_cast<char>('0' + k));
  return uniform_superposition(std::vector<int>(static_cast<std::size_t>(n), d), strings);
}

inline PureState w3() { return uniform_superposition({2, 2, 2}, {"001", "010", "100"}); }

inline PureState product4() { return uniform_superposition({2, 2, 2, 2}, {"0000"}); }

inline PureState bell() { return uniform_superposition({2, 2}, {"00", "11"}); }

/// Bundled fixture files: file name and contents.
inline std::vector<std::pair<std::string, StateFile>> bundled() {
  return {
      {"counterexample.json", {counterexample(), "four-qubit counterexample (|0000>+|0101>+|0110>+|1111>)/2"}},
      {"ghz3.json", {ghz(3), "GHZ3"}},
      {"ghz4.json", {ghz(4), "GHZ4"}},
      {"w3.json", {w3(), "W3"}},
      {"product4.json", {product4(), "|0000>"}},
      {"ghz3-qutrit.json", {ghz(3, 3), "qutrit GHZ (|000>+|111>+|222>)/sqrt3"}},
  };
}

}  // namespace bellpair::fixtures

#endif  // BELLPAIR_FIXTURES_HPP
