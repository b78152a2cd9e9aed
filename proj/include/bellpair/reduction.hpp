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

#ifndef BELLPAIR_REDUCTION_HPP
#define BELLPAIR_REDUCTION_HPP

#include <vector>

#include "bellpair/statevec.hpp"

namespace bellpair {

/*
 * Qudit-to-qubit reduction. Parties are visited in order 1..N. A party that
 * is product with the rest keeps only its single Schmidt vector and becomes a
 * dimension-1 factor; an entangled qudit is projected onto the span of its two
 * leading Schmidt vectors and relabelled as a qubit in that basis. Parties that
 * are already qubits (or dimension 1) are left untouched, so an all-qubit input
 * comes back unchanged.
 */

enum class PartyActionKind { Kept1D, Truncated2D, Identity };

inline const char* to_string(PartyActionKind k) {
  switch (k) {
    case PartyActionKind::Kept1D: return "Kept1D";
    case PartyActionKind::Truncated2D: return "Truncated2D";
    case PartyActionKind::Identity: return "Identity";
  }
  return "?";
}

struct PartyAction {
  PartyActionKind kind;
  int original_dim;
  /// Orthonormal vectors in the original party space; the reduced party's
  /// basis vector |k> corresponds to retained[k].
  std::vector<CVector> retained;

  /// Isometry V with columns `retained` (original_dim x reduced_dim).
  CMatrix isometry() const {
    CMatrix v(original_dim, static_cast<Eigen::Index>(retained.size()));
    for (std::size_t k = 0; k < retained.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = retained[k];
    return v;
  }
};

struct ReductionTrace {
  std::vector<PartyAction> actions;  // index party - 1
  PureState output;
  double weight = 1.0;  // product of the retained norms squared

  const std::vector<int>& dims() const { return output.dims(); }

  const PartyAction& action(int party) const {
    if (party < 1 || party > static_cast<int>(actions.size()))
      throw Error(ErrorKind::PartyNotInTrace, "party " + std::to_string(party) + " is not in the trace");
    return actions[static_cast<std::size_t>(party - 1)];
  }
};

inline ReductionTrace reduce_to_qubits(const PureState& state, const Tolerances& tol = {}) {
  const int n = state.num_parties();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "reduction needs at least two parties");
  std::vector<PartyAction> actions;
  PureState current = state;
  double weight = 1.0;
  for (int party = 1; party <= n; ++party) {
    const int d = current.dim(party);
    if (d <= 2) {
      PartyAction a{d == 1 ? PartyActionKind::Kept1D : PartyActionKind::Identity, d, {}};
      for (int k = 0; k < d; ++k) a.retained.push_back(CVector::Unit(d, k));
      actions.push_back(std::move(a));
      continue;
    }
    SchmidtDecomposition sd = schmidt(current, Bipartition::single(n, party), tol);
    PartyAction a{sd.rank() == 1 ? PartyActionKind::Kept1D : PartyActionKind::Truncated2D, d, {}};
    a.retained.assign(sd.left_vectors.begin(), sd.left_vectors.begin() + std::min(sd.rank(), 2));
    auto [dims, amps] = detail::apply_local_map(current, party, a.isometry().adjoint());
    double kept = amps.squaredNorm();
    weight *= kept;
    current = PureState(std::move(dims), amps / std::sqrt(kept), tol);
    actions.push_back(std::move(a));
  }
  return {std::move(actions), std::move(current), weight};
}

/// Lifts a projection vector on the reduced party back to the original party:
/// <V w| psi> = <w| V^dagger psi>.
inline LocalVector embed_projection(const ReductionTrace& trace, const LocalVector& qubit_assignment,
                                    const Tolerances& tol = {}) {
  const PartyAction& a = trace.action(qubit_assignment.party());
  if (qubit_assignment.dim() != static_cast<int>(a.retained.size()))
    throw Error(ErrorKind::DimensionMismatch, "assignment does not match the reduced party dimension");
  return LocalVector::normalized(qubit_assignment.party(), a.isometry() * qubit_assignment.coords(), tol);
}

/// Maps a state that lives on a subset of the original parties into the
/// reduced coordinates of those parties (applies V^dagger to each of them).
inline PureState restrict_to_reduced(const ReductionTrace& trace, const PureState& state,
                                     std::span<const int> parties, const Tolerances& tol = {}) {
  if (static_cast<int>(parties.size()) != state.num_parties())
    throw Error(ErrorKind::DimensionMismatch, "party list does not match the state");
  std::vector<int> dims = state.dims();
  CVector amps = state.amps();
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (amps.norm() < tol.zero) break;
    PureState tmp(dims, amps / amps.norm(), tol);
    auto mapped = detail::apply_local_map(tmp, static_cast<int>(i) + 1, trace.action(parties[i]).isometry().adjoint());
    dims = std::move(mapped.first);
    amps = std::move(mapped.second);
  }
  return PureState::normalized(std::move(dims), std::move(amps), tol);
}

}  // namespace bellpair

#endif  // BELLPAIR_REDUCTION_HPP
