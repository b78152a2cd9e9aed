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

#ifndef BELLPAIR_BASIS_HPP
#define BELLPAIR_BASIS_HPP

#include <vector>

#include "bellpair/statevec.hpp"

namespace bellpair {

struct BasisFix {
  std::vector<int> subset;  // parties that received a Hadamard, ascending
  PureState fixed_state;
  double min_abs;
};

/// Applies H to every party in `subset`.
inline PureState apply_hadamards(const PureState& state, std::span<const int> subset, const Tolerances& tol = {}) {
  PureState out = state;
  const CMatrix h = hadamard();
  for (int p : subset) out = apply_local_unitary(out, p, h, tol);
  return out;
}

/// Smallest Hadamard subset (by size, then lexicographic) after which every
/// computational amplitude exceeds tol.amp_floor in magnitude. Parties of
/// dimension 1 never take part in the search.
inline BasisFix fix_nonvanishing(const PureState& state, const Tolerances& tol = {}) {
  std::vector<int> qubits;
  for (int p = 1; p <= state.num_parties(); ++p) {
    if (state.dim(p) == 2) qubits.push_back(p);
    else if (state.dim(p) != 1)
      throw Error(ErrorKind::DimensionMismatch, "basis fix needs qubits; reduce qudits first");
  }
  if (qubits.size() > 20) throw Error(ErrorKind::Oversize, "basis fix is limited to 20 qubits");

  const int m = static_cast<int>(qubits.size());
  std::vector<int> pick;
  for (int size = 0; size <= m; ++size) {
    // Lexicographic combinations of `size` positions out of m.
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      pick.clear();
      for (int i : idx) pick.push_back(qubits[static_cast<std::size_t>(i)]);
      PureState fixed = apply_hadamards(state, pick, tol);
      double min_abs = fixed.amps().cwiseAbs().minCoeff();
      if (min_abs > tol.amp_floor) return {pick, std::move(fixed), min_abs};
      int i = size - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - size + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw Error(ErrorKind::NoSubsetFound,
              "no Hadamard subset clears amp_floor = " + std::to_string(tol.amp_floor) +
                  "; a subset always exists in exact arithmetic, so lower amp_floor");
}

}  // namespace bellpair

#endif  // BELLPAIR_BASIS_HPP
