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

#ifndef BELLPAIR_SEARCH_HPP
#define BELLPAIR_SEARCH_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "bellpair/dependency.hpp"
#include "bellpair/entanglement.hpp"
#include "bellpair/statevec.hpp"

namespace bellpair {

/*
 * Search for a product projection of the N-2 non-kept parties that leaves the
 * kept pair entangled. Stages run in order and the first candidate whose
 * residual concurrence reaches tol.success_floor wins:
 *
 *   S1  computational basis {|0>,|1>} on every projected qubit
 *   S2  alphabet {|0>,|1>,|+>,|->}
 *   S3  real tilted vectors cos(t)|0> + sin(t)|1> on one or two parties at a
 *       time, t on a grid over [0, pi); the other parties range over the S2
 *       alphabet
 *   S4  seeded random restarts refined by coordinate ascent on Bloch angles
 *
 * Candidates inside a stage are visited in a fixed lexicographic order, so the
 * winner never depends on timing. Dimension-1 parties are projected onto their
 * only basis vector.
 */

enum class Strategy { S1 = 1, S2 = 2, S3 = 3, S4 = 4 };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::S1: return "S1";
    case Strategy::S2: return "S2";
    case Strategy::S3: return "S3";
    case Strategy::S4: return "S4";
  }
  return "?";
}

struct StrategyLadder {
  int max_stage = 4;   // run S1..S<max_stage>
  int grid = 24;       // S3 points per angle
  int restarts = 10;   // S4 random starts
  int max_sweeps = 200;
  std::uint64_t s3_budget = std::uint64_t{1} << 22;  // cap on S3 candidate evaluations

  void validate() const {
    if (max_stage < 1 || max_stage > 4) throw Error(ErrorKind::InvalidArgument, "stage must be S1..S4");
    if (grid < 2) throw Error(ErrorKind::InvalidArgument, "S3 grid needs at least 2 points");
    if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "S4 needs at least one restart");
    if (max_sweeps < 1) throw Error(ErrorKind::InvalidArgument, "refine needs at least one sweep");
  }
};

struct ProjectionCertificate {
  PartyPair keep_pair;
  std::vector<LocalVector> assignments;  // ascending party order
  PureState residual;
  double concurrence;
  double weight;
  Strategy strategy_used;
};

/// Re-contracts the state with the certificate's assignments and checks the
/// stored residual, concurrence and success floor.
inline bool verify_certificate(const PureState& state, const ProjectionCertificate& cert,
                               const Tolerances& tol = {}, double tolerance = 1e-9) {
  try {
    ProjectionResult r = project(state, cert.assignments, tol);
    if (r.residual.dims() != std::vector<int>{2, 2}) return false;
    double c = concurrence(r.residual);
    return distance_up_to_phase(r.residual.amps(), cert.residual.amps()) <= tolerance &&
           std::abs(c - cert.concurrence) <= tolerance && std::abs(r.weight - cert.weight) <= tolerance &&
           cert.concurrence >= tol.success_floor;
  } catch (const Error&) {
    return false;
  }
}

inline bool is_fully_product(const PureState& state, const Tolerances& tol = {}) {
  if (state.num_parties() < 2) return true;
  for (int p = 1; p <= state.num_parties(); ++p)
    if (!is_product_across(state, Bipartition::single(state.num_parties(), p), tol)) return false;
  return true;
}

namespace detail {

/// Projected parties of a search, split into qubits (searched over) and
/// dimension-1 parties (fixed to [1]).
class SearchFrame {
 public:
  SearchFrame(const PureState& state, PartyPair keep, const Tolerances& tol)
      : state_(state), keep_(ordered_pair(keep)), tol_(tol) {
    for (int p : projected_parties(state.num_parties(), keep_)) {
      if (state.dim(p) == 2) qubits_.push_back(p);
      else trivial_.push_back(p);
    }
  }

  const std::vector<int>& qubits() const { return qubits_; }
  PartyPair keep() const { return keep_; }
  const PureState& state() const { return state_; }

  /// Assignment list in ascending party order from per-qubit vectors.
  std::vector<LocalVector> assignment(const std::vector<CVector>& vecs) const {
    std::vector<LocalVector> out;
    std::size_t qi = 0, ti = 0;
    for (int p : projected_parties(state_.num_parties(), keep_)) {
      if (ti < trivial_.size() && trivial_[ti] == p) {
        out.emplace_back(p, CVector::Ones(1));
        ++ti;
      } else {
        out.emplace_back(p, vecs[qi++]);
      }
    }
    return out;
  }

  /// Residual concurrence; 0 for an impossible outcome.
  double score(const std::vector<CVector>& vecs) const {
    try {
      return concurrence(project(state_, assignment(vecs), tol_).residual);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroOutcome) return 0.0;
      throw;
    }
  }

  ProjectionCertificate certify(const std::vector<CVector>& vecs, Strategy s) const {
    auto a = assignment(vecs);
    ProjectionResult r = project(state_, a, tol_);
    double c = concurrence(r.residual);
    return {keep_, std::move(a), std::move(r.residual), c, r.weight, s};
  }

 private:
  const PureState& state_;
  PartyPair keep_;
  Tolerances tol_;
  std::vector<int> qubits_;
  std::vector<int> trivial_;
};

/// Calls `visit(digits)` for every digit string over `base` of length `len`,
/// first position most significant; stops when `visit` returns true.
inline bool for_each_digits(std::size_t len, int base, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> digits(len, 0);
  while (true) {
    if (visit(digits)) return true;
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (++digits[k] < base) break;
      digits[k] = 0;
      if (k == 0) return false;
    }
    if (len == 0) return false;
  }
}

inline CVector alphabet(int symbol) {
  switch (symbol) {
    case 0: return kets::zero();
    case 1: return kets::one();
    case 2: return kets::plus();
    default: return kets::minus();
  }
}

struct BlochPoint {
  double theta;
  double phi;
};

inline BlochPoint to_bloch(const CVector& v) {
  return {2.0 * std::atan2(std::abs(v[1]), std::abs(v[0])), std::arg(v[1]) - std::arg(v[0])};
}

struct Best {
  double concurrence = -1.0;
  std::vector<CVector> vecs;
  void offer(double c, const std::vector<CVector>& v) {
    if (c > concurrence) {
      concurrence = c;
      vecs = v;
    }
  }
};

inline std::vector<CVector> ascend(const SearchFrame& frame, std::vector<BlochPoint> pts, double& value,
                                   std::mt19937_64& rng, int max_sweeps, double floor, bool& moved) {
  constexpr int kSamples = 48;
  constexpr double kGolden = 0.3819660112501051;
  constexpr double kTwoPi = 2.0 * M_PI;
  auto vectors = [](const std::vector<BlochPoint>& p) {
    std::vector<CVector> v;
    for (const auto& b : p) v.push_back(kets::bloch(b.theta, b.phi));
    return v;
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int kicks = 0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = value;
    for (std::size_t q = 0; q < pts.size(); ++q) {
      for (int coord = 0; coord < 2; ++coord) {
        const double span = coord == 0 ? M_PI : kTwoPi;
        auto eval = [&](double x) {
          auto trial = pts;
          (coord == 0 ? trial[q].theta : trial[q].phi) = x;
          return frame.score(vectors(trial));
        };
        double best_x = coord == 0 ? pts[q].theta : pts[q].phi, best_f = value;
        for (int s = 0; s < kSamples; ++s) {
          double x = span * s / kSamples;
          double f = eval(x);
          if (f > best_f) best_f = f, best_x = x;
        }
        // Golden-section polish on the bracket around the best sample.
        double lo = best_x - span / kSamples, hi = best_x + span / kSamples;
        double x1 = lo + kGolden * (hi - lo), x2 = hi - kGolden * (hi - lo);
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            lo = x1, x1 = x2, f1 = f2;
            x2 = hi - kGolden * (hi - lo);
            f2 = eval(x2);
          } else {
            hi = x2, x2 = x1, f2 = f1;
            x1 = lo + kGolden * (hi - lo);
            f1 = eval(x1);
          }
        }
        if (f1 > best_f) best_f = f1, best_x = x1;
        if (f2 > best_f) best_f = f2, best_x = x2;
        if (best_f > value + 1e-13) {
          (coord == 0 ? pts[q].theta : pts[q].phi) = best_x;
          value = best_f;
          moved = true;
        }
      }
    }
    if (value - before >= 1e-10) continue;
    // Flat landscape below the floor: jump to a random point that is no worse.
    if (value >= floor || kicks >= 20 || pts.empty()) break;
    ++kicks;
    auto trial = pts;
    for (auto& b : trial) b = {std::acos(2.0 * unit(rng) - 1.0), kTwoPi * unit(rng)};
    double f = frame.score(vectors(trial));
    if (f >= value) {
      pts = std::move(trial);
      value = f;
      moved = true;
    }
  }
  return vectors(pts);
}

struct PairSearch {
  std::optional<ProjectionCertificate> certificate;
  double best_concurrence = 0.0;
};

inline ProjectionCertificate refine_frame(const SearchFrame& frame, const std::vector<CVector>& start,
                                          std::uint64_t seed, int max_sweeps, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::vector<BlochPoint> pts;
  for (const auto& v : start) pts.push_back(to_bloch(v));
  double value = frame.score(start);
  bool moved = false;
  auto vecs = ascend(frame, pts, value, rng, max_sweeps, tol.success_floor, moved);
  return frame.certify(moved ? vecs : start, Strategy::S4);
}

inline PairSearch run_ladder(const SearchFrame& frame, const StrategyLadder& ladder, std::uint64_t seed,
                             const Tolerances& tol) {
  const std::size_t m = frame.qubits().size();
  Best best;
  std::optional<ProjectionCertificate> found;
  auto try_candidate = [&](const std::vector<CVector>& vecs, Strategy s) {
    double c = frame.score(vecs);
    best.offer(c, vecs);
    if (c >= tol.success_floor) {
      found = frame.certify(vecs, s);
      return true;
    }
    return false;
  };

  // S1 and S2 share the enumeration, differing only in the alphabet size.
  for (int stage = 1; stage <= std::min(ladder.max_stage, 2); ++stage) {
    const int base = stage == 1 ? 2 : 4;
    const Strategy s = stage == 1 ? Strategy::S1 : Strategy::S2;
    for_each_digits(m, base, [&](const std::vector<int>& digits) {
      std::vector<CVector> vecs;
      for (int d : digits) vecs.push_back(alphabet(d));
      return try_candidate(vecs, s);
    });
    if (found) return {found, found->concurrence};
  }

  if (ladder.max_stage >= 3 && m > 0) {
    std::uint64_t evaluations = 0;
    std::vector<std::vector<std::size_t>> tilt_sets;
    if (m == 1) tilt_sets.push_back({0});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) tilt_sets.push_back({i, j});
    for (const auto& tilted : tilt_sets) {
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < m; ++k)
        if (std::find(tilted.begin(), tilted.end(), k) == tilted.end()) others.push_back(k);
      bool done = for_each_digits(others.size(), 4, [&](const std::vector<int>& digits) {
        std::vector<CVector> vecs(m);
        for (std::size_t k = 0; k < others.size(); ++k) vecs[others[k]] = alphabet(digits[k]);
        return for_each_digits(tilted.size(), ladder.grid, [&](const std::vector<int>& g) {
          if (++evaluations > ladder.s3_budget) return true;
          for (std::size_t k = 0; k < tilted.size(); ++k)
            vecs[tilted[k]] = kets::tilted(M_PI * g[k] / ladder.grid);
          return try_candidate(vecs, Strategy::S3);
        });
      });
      if (done) break;
    }
    if (found) return {found, found->concurrence};
  }

  if (ladder.max_stage >= 4) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int r = 0; r < ladder.restarts; ++r) {
      std::vector<CVector> start;
      if (r == 0 && !best.vecs.empty()) {
        start = best.vecs;
      } else {
        for (std::size_t k = 0; k < m; ++k)
          start.push_back(kets::bloch(std::acos(2.0 * unit(rng) - 1.0), 2.0 * M_PI * unit(rng)));
      }
      std::optional<ProjectionCertificate> cert;
      try {
        cert = refine_frame(frame, start, rng(), ladder.max_sweeps, tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOutcome) throw;
        continue;
      }
      best.offer(cert->concurrence, start);
      if (cert->concurrence >= tol.success_floor) return {cert, cert->concurrence};
    }
  }
  return {std::nullopt, std::max(best.concurrence, 0.0)};
}

inline void check_search_input(const PureState& state, PartyPair keep) {
  check_keep_pair(state, keep);
  for (int d : state.dims())
    if (d > 2) throw Error(ErrorKind::DimensionMismatch, "search needs dims <= 2; reduce qudits first");
}

}  // namespace detail

/// Coordinate ascent on per-party Bloch angles maximizing the residual
/// concurrence. The concurrence never decreases; if no move improves the
/// start, the start assignments are returned as they are.
inline ProjectionCertificate refine(const PureState& state, PartyPair keep,
                                    const std::vector<LocalVector>& start, std::uint64_t seed,
                                    const Tolerances& tol = {}, int max_sweeps = 200) {
  detail::check_search_input(state, keep);
  detail::SearchFrame frame(state, keep, tol);
  std::vector<CVector> vecs;
  for (int p : frame.qubits()) {
    auto it = std::find_if(start.begin(), start.end(), [p](const LocalVector& v) { return v.party() == p; });
    if (it == start.end()) throw Error(ErrorKind::InvalidArgument, "start assignment misses a projected party");
    if (it->dim() != 2) throw Error(ErrorKind::DimensionMismatch, "start assignment is not a qubit vector");
    vecs.push_back(it->coords());
  }
  return detail::refine_frame(frame, vecs, seed, max_sweeps, tol);
}

/// Raised as Error(SearchExhausted); carries the best concurrence seen.
class SearchExhaustedError : public Error {
 public:
  SearchExhaustedError(double best, const std::string& what)
      : Error(ErrorKind::SearchExhausted, what), best_(best) {}
  double best_concurrence() const { return best_; }

 private:
  double best_;
};

inline ProjectionCertificate find_entangling_projection(const PureState& state, PartyPair keep,
                                                        const StrategyLadder& ladder = {},
                                                        std::uint64_t seed = 0, const Tolerances& tol = {}) {
  ladder.validate();
  keep = ordered_pair(keep);
  detail::check_search_input(state, keep);
  if (state.dim(keep.first) == 1 || state.dim(keep.second) == 1)
    throw Error(ErrorKind::FullyProduct, "a kept party has dimension 1");
  if (is_fully_product(state, tol)) throw Error(ErrorKind::FullyProduct, "input state is fully product");
  detail::SearchFrame frame(state, keep, tol);
  detail::PairSearch result = detail::run_ladder(frame, ladder, seed, tol);
  if (!result.certificate)
    throw SearchExhaustedError(result.best_concurrence,
                               "no stage up to S" + std::to_string(ladder.max_stage) +
                                   " reached success_floor; best concurrence " +
                                   std::to_string(result.best_concurrence));
  return *result.certificate;
}

struct PairFailure {
  ErrorKind kind;
  std::string message;
  double best_concurrence = 0.0;
};

using PairResult = std::variant<ProjectionCertificate, PairFailure>;

/// Per-pair seed so each pair's S4 stream is independent of the pair order.
inline std::uint64_t pair_seed(std::uint64_t seed, PartyPair pair) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pair.first), static_cast<std::uint32_t>(pair.second)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

inline std::map<PartyPair, PairResult> certify_all_pairs(const PureState& state, const StrategyLadder& ladder = {},
                                                         std::uint64_t seed = 0, const Tolerances& tol = {}) {
  std::map<PartyPair, PairResult> out;
  const int n = state.num_parties();
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q) {
      try {
        out.emplace(PartyPair{p, q}, find_entangling_projection(state, {p, q}, ladder, pair_seed(seed, {p, q}), tol));
      } catch (const SearchExhaustedError& e) {
        out.emplace(PartyPair{p, q}, PairFailure{e.kind(), e.what(), e.best_concurrence()});
      } catch (const Error& e) {
        out.emplace(PartyPair{p, q}, PairFailure{e.kind(), e.what(), 0.0});
      }
    }
  return out;
}

}  // namespace bellpair

#endif  // BELLPAIR_SEARCH_HPP
