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

#ifndef BELLPAIR_ENTANGLEMENT_HPP
#define BELLPAIR_ENTANGLEMENT_HPP

#include <vector>

#include "bellpair/statevec.hpp"

namespace bellpair {

inline int schmidt_rank(const PureState& state, const Bipartition& cut, const Tolerances& tol = {}) {
  CMatrix m = detail::reshape_for_cut(state, cut);
  Eigen::BDCSVD<CMatrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv[rank] > tol.rank) ++rank;
  return rank;
}

inline bool is_product_across(const PureState& state, const Bipartition& cut, const Tolerances& tol = {}) {
  return schmidt_rank(state, cut, tol) == 1;
}

struct CutRank {
  Bipartition cut;
  int rank;
};

struct SeparabilityReport {
  std::vector<CutRank> cuts;
  bool fully_product = true;
  std::vector<Bipartition> entangled_cuts;
};

/// Scans every 1|rest cut, plus every 2-vs-rest cut when N <= 6. Cuts are
/// listed once each, with side_a being the smaller side.
inline SeparabilityReport separability_report(const PureState& state, const Tolerances& tol = {}) {
  const int n = state.num_parties();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "separability needs at least two parties");
  SeparabilityReport report;
  auto add = [&](std::vector<int> side, bool single) {
    Bipartition cut(n, std::move(side));
    int rank = schmidt_rank(state, cut, tol);
    if (rank >= 2) report.entangled_cuts.push_back(cut);
    if (single && rank != 1) report.fully_product = false;
    report.cuts.push_back({std::move(cut), rank});
  };
  // For N = 2 the two single-party cuts coincide.
  for (int p = 1; p <= (n == 2 ? 1 : n); ++p) add({p}, true);
  if (n >= 4 && n <= 6) {
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) {
        // 2|2 cuts for N = 4 appear twice; keep the one containing party 1.
        if (n == 4 && p != 1) continue;
        add({p, q}, false);
      }
  }
  return report;
}

/// 2|a00 a11 - a01 a10| for a normalized two-qubit state.
inline double concurrence(const PureState& two_qubit) {
  if (two_qubit.dims() != std::vector<int>{2, 2})
    throw Error(ErrorKind::DimensionMismatch, "concurrence needs dims [2,2]");
  const CVector& a = two_qubit.amps();
  return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

}  // namespace bellpair

#endif  // BELLPAIR_ENTANGLEMENT_HPP
