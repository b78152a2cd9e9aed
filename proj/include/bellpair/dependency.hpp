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

#ifndef BELLPAIR_DEPENDENCY_HPP
#define BELLPAIR_DEPENDENCY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellpair/entanglement.hpp"
#include "bellpair/statevec.hpp"

namespace bellpair {

/*
 * Dependency tables. For a kept pair (p, q) of an N-qubit state, every
 * computational projection b' of the other N-2 parties leaves the pair in
 * either an entangled state or a product |alpha(b')>|beta(b')>. The table
 * records the product factors for all 2^(N-2) outcomes.
 *
 * Keys: b' is packed into an integer with the first projected party (lowest
 * party index) as the most significant bit, so ascending keys are the
 * ascending binary strings b'.
 */

using PartyPair = std::pair<int, int>;

inline PartyPair ordered_pair(PartyPair pair) {
  if (pair.first > pair.second) std::swap(pair.first, pair.second);
  return pair;
}

struct TableEntry {
  CVector alpha;  // factor on party p, phase-fixed
  CVector beta;   // factor on party q, phase-fixed
  double weight;
};

enum class Side { Alpha, Beta };

class DependencyTable {
 public:
  DependencyTable(PartyPair keep, std::vector<int> projected, std::vector<TableEntry> entries)
      : keep_(keep), projected_(std::move(projected)), entries_(std::move(entries)) {}

  PartyPair keep_pair() const { return keep_; }
  const std::vector<int>& projected_parties() const { return projected_; }
  const std::vector<TableEntry>& entries() const { return entries_; }
  std::size_t num_indices() const { return projected_.size(); }
  const TableEntry& at(std::uint64_t key) const { return entries_.at(key); }

  /// Bit mask selecting the projected party `party` inside a key.
  std::uint64_t bit_of(int party) const {
    for (std::size_t i = 0; i < projected_.size(); ++i)
      if (projected_[i] == party) return std::uint64_t{1} << (projected_.size() - 1 - i);
    throw Error(ErrorKind::InvalidArgument, "party " + std::to_string(party) + " is not a projected index");
  }

  std::string key_string(std::uint64_t key) const {
    std::string s;
    for (std::size_t i = projected_.size(); i-- > 0;) s += ((key >> i) & 1) ? '1' : '0';
    return s;
  }

  const CVector& factor(Side side, std::uint64_t key) const {
    return side == Side::Alpha ? at(key).alpha : at(key).beta;
  }

 private:
  PartyPair keep_;
  std::vector<int> projected_;
  std::vector<TableEntry> entries_;
};

struct EntangledAt {
  std::uint64_t key;
  std::string key_string;
  PureState residual;
  double concurrence;
  /// Every entangled key, filled only by a full scan.
  std::vector<std::uint64_t> all_keys;
};

using TableOutcome = std::variant<EntangledAt, DependencyTable>;

namespace detail {

inline std::vector<int> projected_parties(int n, PartyPair keep) {
  std::vector<int> out;
  for (int p = 1; p <= n; ++p)
    if (p != keep.first && p != keep.second) out.push_back(p);
  return out;
}

inline std::vector<LocalVector> computational_assignment(const std::vector<int>& parties, std::uint64_t key) {
  std::vector<LocalVector> out;
  const std::size_t m = parties.size();
  for (std::size_t i = 0; i < m; ++i) {
    int bit = static_cast<int>((key >> (m - 1 - i)) & 1);
    out.emplace_back(parties[i], CVector::Unit(2, bit));
  }
  return out;
}

inline void check_keep_pair(const PureState& state, PartyPair keep) {
  const int n = state.num_parties();
  if (keep.first == keep.second || keep.first < 1 || keep.second > n || keep.second < 1 || keep.first > n)
    throw Error(ErrorKind::InvalidArgument, "keep pair must be two distinct parties in range");
}

}  // namespace detail

/// Enumerates computational projections in ascending b' order. Returns the
/// first entangled outcome, or the complete table when all are product.
/// With `full_scan` the scan continues after the first hit and collects every
/// entangled key.
inline TableOutcome build_table(const PureState& state, PartyPair keep, const Tolerances& tol = {},
                                bool full_scan = false) {
  keep = ordered_pair(keep);
  detail::check_keep_pair(state, keep);
  for (int d : state.dims())
    if (d != 2) throw Error(ErrorKind::DimensionMismatch, "dependency tables need an all-qubit state");
  const int n = state.num_parties();
  if (n - 2 > 30) throw Error(ErrorKind::Oversize, "too many projected parties");
  std::vector<int> projected = detail::projected_parties(n, keep);
  const std::uint64_t count = std::uint64_t{1} << projected.size();

  std::vector<TableEntry> entries;
  entries.reserve(count);
  std::optional<EntangledAt> hit;
  for (std::uint64_t key = 0; key < count; ++key) {
    auto assignment = detail::computational_assignment(projected, key);
    ProjectionResult r = [&] {
      try {
        return project(state, assignment, tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOutcome) throw;
        throw Error(ErrorKind::ZeroOutcome,
                    "projection b'=" + DependencyTable(keep, projected, {}).key_string(key) +
                        " has zero weight; apply fix_nonvanishing first");
      }
    }();
    double c = concurrence(r.residual);
    if (c >= tol.prod) {
      if (!hit) {
        hit = EntangledAt{key, DependencyTable(keep, projected, {}).key_string(key), r.residual, c, {}};
        if (!full_scan) return *hit;
      }
      hit->all_keys.push_back(key);
      continue;
    }
    if (hit) continue;
    SchmidtDecomposition sd = schmidt(r.residual, Bipartition::single(2, 1), tol);
    CVector alpha = sd.left_vectors.front();
    CVector beta = sd.right_vectors.front();
    fix_phase(alpha, tol.indep);
    fix_phase(beta, tol.indep);
    entries.push_back({std::move(alpha), std::move(beta), r.weight});
  }
  if (hit) return *hit;
  return DependencyTable(keep, std::move(projected), std::move(entries));
}

/// Whether the chosen side changes when `party`'s bit flips, the other bits
/// fixed by `context` (the bit of `party` inside `context` is ignored).
inline bool depends_on(const DependencyTable& table, Side side, int party, std::uint64_t context,
                       const Tolerances& tol = {}) {
  const std::uint64_t bit = table.bit_of(party);
  if (context >= table.entries().size()) throw Error(ErrorKind::InvalidArgument, "context out of range");
  return linearly_independent(table.factor(side, context & ~bit), table.factor(side, context | bit), tol);
}

/// Indices (as party numbers) on which `side` depends in at least one context.
inline std::vector<int> dependent_indices(const DependencyTable& table, Side side, const Tolerances& tol = {}) {
  std::vector<int> out;
  for (int party : table.projected_parties()) {
    const std::uint64_t bit = table.bit_of(party);
    for (std::uint64_t ctx = 0; ctx < table.entries().size(); ++ctx) {
      if (ctx & bit) continue;
      if (depends_on(table, side, party, ctx, tol)) {
        out.push_back(party);
        break;
      }
    }
  }
  return out;
}

struct IndexPartition {
  std::vector<int> alpha_side;      // S: indices alpha depends on
  std::vector<int> beta_side;       // complement of S among the projected indices
  std::vector<int> beta_dependent;  // indices beta actually depends on (subset of beta_side)

  /// The bipartition {p} u S | {q} u complement induced on the full state.
  Bipartition induced_cut(int num_parties, PartyPair keep) const {
    std::vector<int> a = alpha_side;
    a.push_back(ordered_pair(keep).first);
    return Bipartition(num_parties, std::move(a));
  }
};

/// Present iff no projected index is a dependency of both alpha and beta.
inline std::optional<IndexPartition> partition_check(const DependencyTable& table, const Tolerances& tol = {}) {
  std::vector<int> a = dependent_indices(table, Side::Alpha, tol);
  std::vector<int> b = dependent_indices(table, Side::Beta, tol);
  for (int p : a)
    if (std::find(b.begin(), b.end(), p) != b.end()) return std::nullopt;
  IndexPartition out{a, {}, b};
  for (int p : table.projected_parties())
    if (std::find(a.begin(), a.end(), p) == a.end()) out.beta_side.push_back(p);
  return out;
}

}  // namespace bellpair

#endif  // BELLPAIR_DEPENDENCY_HPP
