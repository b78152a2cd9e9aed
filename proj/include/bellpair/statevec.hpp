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

#ifndef BELLPAIR_STATEVEC_HPP
#define BELLPAIR_STATEVEC_HPP

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellpair/core.hpp"

namespace bellpair {

/*
 * Dense pure states over N parties. Amplitudes are stored row-major with
 * party 1 the most significant digit, so |b_1 b_2 ... b_N> sits at flat index
 * sum_k b_k * stride_k. Party indices are 1-based throughout the public API.
 */

inline std::size_t total_dim(std::span<const int> dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

/// Multiplies `v` by a unit phase so its first coordinate with magnitude
/// above `floor` is real and positive.
inline void fix_phase(CVector& v, double floor) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double mag = std::abs(v[i]);
    if (mag > floor) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(mag, 0.0);
      return;
    }
  }
}

/// Max-norm distance between `a` and `b` after removing the best global phase.
inline double distance_up_to_phase(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  Complex overlap = a.dot(b);  // <a|b>
  Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a * phase - b).cwiseAbs().maxCoeff();
}

class PureState {
 public:
  /// Wraps amplitudes that are already normalized; nothing is rescaled.
  PureState(std::vector<int> dims, CVector amps, const Tolerances& tol = {})
      : dims_(std::move(dims)), amps_(std::move(amps)) {
    validate_shape();
    double n = amps_.norm();
    if (std::abs(n - 1.0) > tol.norm)
      throw Error(ErrorKind::NotNormalized,
                  "state norm " + std::to_string(n) + " differs from 1");
  }

  /// Normalizes and applies the global phase convention.
  static PureState normalized(std::vector<int> dims, CVector amps, const Tolerances& tol = {}) {
    double n = amps.norm();
    if (n < tol.zero) throw Error(ErrorKind::ZeroVector, "cannot normalize a zero state");
    amps /= n;
    fix_phase(amps, tol.zero);
    return PureState(std::move(dims), std::move(amps), tol);
  }

  /// Computational basis state |digits>.
  static PureState basis(std::vector<int> dims, std::span<const int> digits) {
    if (digits.size() != dims.size())
      throw Error(ErrorKind::DimensionMismatch, "digit count differs from party count");
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (digits[k] < 0 || digits[k] >= dims[k])
        throw Error(ErrorKind::InvalidArgument, "digit out of range");
      index = index * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(digits[k]);
    }
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(dims), std::move(amps));
  }

  const std::vector<int>& dims() const { return dims_; }
  const CVector& amps() const { return amps_; }
  int num_parties() const { return static_cast<int>(dims_.size()); }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party - 1)); }

  /// Row-major strides, last party fastest.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 1;) s[k - 1] = s[k] * static_cast<std::size_t>(dims_[k]);
    return s;
  }

 private:
  void validate_shape() const {
    if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "state needs at least one party");
    for (int d : dims_)
      if (d < 1) throw Error(ErrorKind::InvalidArgument, "local dimension must be positive");
    if (static_cast<std::size_t>(amps_.size()) != total_dim(dims_))
      throw Error(ErrorKind::DimensionMismatch, "amplitude count differs from product of dims");
  }

  std::vector<int> dims_;
  CVector amps_;
};

/// Normalized local vector attached to a party; projecting onto it contracts
/// that party with <v|.
class LocalVector {
 public:
  LocalVector(int party, CVector coords, const Tolerances& tol = {})
      : party_(party), coords_(std::move(coords)) {
    if (party_ < 1) throw Error(ErrorKind::InvalidArgument, "party index is 1-based");
    if (coords_.size() == 0 || std::abs(coords_.norm() - 1.0) > tol.norm)
      throw Error(ErrorKind::NotNormalized, "local vector must have unit norm");
  }

  /// Normalizes `coords`; use for the unnormalized superposition <0|+<1|.
  static LocalVector normalized(int party, CVector coords, const Tolerances& tol = {}) {
    double n = coords.norm();
    if (n < tol.zero) throw Error(ErrorKind::ZeroVector, "cannot normalize a zero local vector");
    return LocalVector(party, coords / n, tol);
  }

  int party() const { return party_; }
  const CVector& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  int party_;
  CVector coords_;
};

namespace kets {
inline CVector zero() { return CVector::Unit(2, 0); }
inline CVector one() { return CVector::Unit(2, 1); }
inline CVector plus() { return CVector::Constant(2, Complex(M_SQRT1_2)); }
inline CVector minus() {
  CVector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return v;
}
/// cos(angle)|0> + sin(angle)|1>
inline CVector tilted(double angle) {
  CVector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}
/// Bloch-sphere point cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
inline CVector bloch(double theta, double phi) {
  CVector v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return v;
}
}  // namespace kets

inline CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h * M_SQRT1_2;
}

/// Tensor product of local factors, party 1 first.
inline PureState product_state(const std::vector<CVector>& factors, const Tolerances& tol = {}) {
  std::vector<int> dims;
  CVector amps = CVector::Ones(1);
  for (const auto& f : factors) {
    dims.push_back(static_cast<int>(f.size()));
    CVector next(amps.size() * f.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * f.size(), f.size()) = amps[i] * f;
    amps = std::move(next);
  }
  return PureState::normalized(std::move(dims), std::move(amps), tol);
}

/// Two disjoint, nonempty, sorted sets of parties covering 1..N.
class Bipartition {
 public:
  Bipartition(int num_parties, std::vector<int> side_a) : n_(num_parties), side_a_(std::move(side_a)) {
    std::sort(side_a_.begin(), side_a_.end());
    side_a_.erase(std::unique(side_a_.begin(), side_a_.end()), side_a_.end());
    for (int p : side_a_)
      if (p < 1 || p > n_) throw Error(ErrorKind::InvalidArgument, "cut party out of range");
    for (int p = 1; p <= n_; ++p)
      if (!std::binary_search(side_a_.begin(), side_a_.end(), p)) side_b_.push_back(p);
    if (side_a_.empty() || side_b_.empty())
      throw Error(ErrorKind::InvalidArgument, "both sides of a cut must be nonempty");
  }

  /// The cut {party} | rest.
  static Bipartition single(int num_parties, int party) { return Bipartition(num_parties, {party}); }

  int num_parties() const { return n_; }
  const std::vector<int>& side_a() const { return side_a_; }
  const std::vector<int>& side_b() const { return side_b_; }

  std::string to_string() const {
    auto join = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    return join(side_a_) + "|" + join(side_b_);
  }

  friend bool operator==(const Bipartition& a, const Bipartition& b) {
    return a.n_ == b.n_ && a.side_a_ == b.side_a_;
  }

 private:
  int n_;
  std::vector<int> side_a_;
  std::vector<int> side_b_;
};

struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;        // strictly positive, descending
  std::vector<CVector> left_vectors;   // on side_a, parties in ascending order
  std::vector<CVector> right_vectors;  // on side_b

  int rank() const { return static_cast<int>(coefficients.size()); }
};

namespace detail {

inline void check_party(const PureState& s, int party) {
  if (party < 1 || party > s.num_parties())
    throw Error(ErrorKind::InvalidArgument, "party " + std::to_string(party) + " out of range");
}

/// Applies a d_out x d_in matrix to one party; the result is not renormalized.
inline std::pair<std::vector<int>, CVector> apply_local_map(const PureState& s, int party,
                                                            const CMatrix& m) {
  check_party(s, party);
  const std::size_t k = static_cast<std::size_t>(party - 1);
  const auto d_in = static_cast<std::size_t>(s.dims()[k]);
  if (static_cast<std::size_t>(m.cols()) != d_in)
    throw Error(ErrorKind::DimensionMismatch, "local map does not match party dimension");
  const auto d_out = static_cast<std::size_t>(m.rows());
  std::size_t inner = 1;
  for (std::size_t j = k + 1; j < s.dims().size(); ++j) inner *= static_cast<std::size_t>(s.dims()[j]);
  const std::size_t outer = s.size() / (d_in * inner);

  std::vector<int> dims = s.dims();
  dims[k] = static_cast<int>(d_out);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(outer * d_out * inner));
  const CVector& a = s.amps();
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < d_out; ++r)
      for (std::size_t c = 0; c < d_in; ++c) {
        Complex w = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (w == Complex(0.0)) continue;
        for (std::size_t i = 0; i < inner; ++i)
          out[static_cast<Eigen::Index>((o * d_out + r) * inner + i)] +=
              w * a[static_cast<Eigen::Index>((o * d_in + c) * inner + i)];
      }
  return {std::move(dims), std::move(out)};
}

/// Amplitude matrix with rows indexed by side_a digits and columns by side_b.
inline CMatrix reshape_for_cut(const PureState& s, const Bipartition& cut) {
  if (cut.num_parties() != s.num_parties())
    throw Error(ErrorKind::DimensionMismatch, "cut and state have different party counts");
  const auto& dims = s.dims();
  auto sub_strides = [&](const std::vector<int>& side) {
    std::vector<std::size_t> st(dims.size(), 0);
    std::size_t acc = 1;
    for (auto it = side.rbegin(); it != side.rend(); ++it) {
      st[static_cast<std::size_t>(*it - 1)] = acc;
      acc *= static_cast<std::size_t>(dims[static_cast<std::size_t>(*it - 1)]);
    }
    return std::make_pair(st, acc);
  };
  auto [row_st, rows] = sub_strides(cut.side_a());
  auto [col_st, cols] = sub_strides(cut.side_b());

  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<int> digit(dims.size(), 0);
  std::size_t r = 0, c = 0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amps()[static_cast<Eigen::Index>(x)];
    for (std::size_t k = dims.size(); k-- > 0;) {
      ++digit[k];
      r += row_st[k];
      c += col_st[k];
      if (digit[k] < dims[k]) break;
      r -= row_st[k] * static_cast<std::size_t>(dims[k]);
      c -= col_st[k] * static_cast<std::size_t>(dims[k]);
      digit[k] = 0;
    }
  }
  return m;
}

/// Canonical orthonormal basis of span(columns of `block`): repeatedly pick the
/// computational basis vector with the largest remaining projection onto the
/// span (lowest index among ties) and orthonormalize it.
inline std::vector<CVector> canonical_span_basis(const CMatrix& block) {
  const Eigen::Index m = block.cols(), dim = block.rows();
  // Row k of `block`, conjugated, is the coordinate vector of P e_k in the block basis.
  CMatrix coords = block.adjoint();
  std::vector<CVector> chosen;
  for (Eigen::Index step = 0; step < m; ++step) {
    Eigen::VectorXd norms = coords.colwise().norm().transpose();
    double best = norms.maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index k = 0; k < dim; ++k)
      if (norms[k] >= best - 1e-9) {
        pick = k;
        break;
      }
    CVector z = coords.col(pick) / norms[pick];
    coords -= z * (z.adjoint() * coords);
    chosen.push_back(block * z);
  }
  return chosen;
}

}  // namespace detail

struct ProjectionResult {
  PureState residual;
  double weight;  // squared norm before renormalization
};

/// Contracts the assigned parties with <v| and renormalizes what is left.
/// Kept parties appear in the residual in ascending order.
inline ProjectionResult project(const PureState& state, std::span<const LocalVector> assignments,
                                const Tolerances& tol = {}) {
  const int n = state.num_parties();
  if (static_cast<int>(assignments.size()) >= n)
    throw Error(ErrorKind::InvalidArgument, "projection must leave at least one party");
  std::vector<const CVector*> vec(static_cast<std::size_t>(n), nullptr);
  for (const auto& a : assignments) {
    detail::check_party(state, a.party());
    auto k = static_cast<std::size_t>(a.party() - 1);
    if (vec[k]) throw Error(ErrorKind::InvalidArgument, "party assigned twice");
    if (a.dim() != state.dims()[k])
      throw Error(ErrorKind::DimensionMismatch, "local vector dimension differs from party dimension");
    vec[k] = &a.coords();
  }

  std::vector<int> kept_dims;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
    if (!vec[k]) kept_dims.push_back(state.dims()[k]);

  // Contract one party at a time, last to first, so cost stays linear in size.
  std::vector<int> dims = state.dims();
  CVector amps = state.amps();
  for (std::size_t k = static_cast<std::size_t>(n); k-- > 0;) {
    if (!vec[k]) continue;
    const auto d = static_cast<std::size_t>(dims[k]);
    std::size_t inner = 1;
    for (std::size_t j = k + 1; j < dims.size(); ++j) inner *= static_cast<std::size_t>(dims[j]);
    const std::size_t outer = static_cast<std::size_t>(amps.size()) / (d * inner);
    CVector next = CVector::Zero(static_cast<Eigen::Index>(outer * inner));
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t c = 0; c < d; ++c) {
        Complex w = std::conj((*vec[k])[static_cast<Eigen::Index>(c)]);
        for (std::size_t i = 0; i < inner; ++i)
          next[static_cast<Eigen::Index>(o * inner + i)] += w * amps[static_cast<Eigen::Index>((o * d + c) * inner + i)];
      }
    amps = std::move(next);
    dims[k] = 1;
  }
  double norm = amps.norm();
  if (norm < tol.zero) throw Error(ErrorKind::ZeroOutcome, "projection outcome has zero amplitude");
  return {PureState::normalized(std::move(kept_dims), std::move(amps), tol), norm * norm};
}

inline ProjectionResult project(const PureState& state, std::initializer_list<LocalVector> assignments,
                                const Tolerances& tol = {}) {
  return project(state, std::span<const LocalVector>(assignments.begin(), assignments.size()), tol);
}

inline bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return ((u.adjoint() * u) - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline PureState apply_local_unitary(const PureState& state, int party, const CMatrix& u,
                                     const Tolerances& tol = {}) {
  detail::check_party(state, party);
  if (u.rows() != state.dim(party) || u.cols() != state.dim(party))
    throw Error(ErrorKind::DimensionMismatch, "unitary size differs from party dimension");
  if (!is_unitary(u, tol.norm)) throw Error(ErrorKind::NotUnitary, "matrix is not unitary");
  auto [dims, amps] = detail::apply_local_map(state, party, u);
  return PureState(std::move(dims), std::move(amps), tol);
}

/// Schmidt form across `cut`. Coefficients at or below tol.rank are dropped.
/// Within a block of equal coefficients the left vectors are the canonical
/// basis of their span (see detail::canonical_span_basis), each phase-fixed,
/// so the decomposition is reproducible even for degenerate spectra.
inline SchmidtDecomposition schmidt(const PureState& state, const Bipartition& cut,
                                    const Tolerances& tol = {}) {
  CMatrix m = detail::reshape_for_cut(state, cut);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > tol.rank) ++rank;

  SchmidtDecomposition out;
  out.coefficients.resize(rank);
  constexpr double kDegenerate = 1e-9;
  for (Eigen::Index begin = 0; begin < rank;) {
    Eigen::Index end = begin + 1;
    while (end < rank && sv[end - 1] - sv[end] <= kDegenerate) ++end;
    std::vector<CVector> lefts;
    if (end - begin == 1) {
      lefts.push_back(svd.matrixU().col(begin));
    } else {
      lefts = detail::canonical_span_basis(svd.matrixU().middleCols(begin, end - begin));
    }
    for (Eigen::Index i = begin; i < end; ++i) {
      CVector l = lefts[static_cast<std::size_t>(i - begin)];
      fix_phase(l, tol.indep);
      // <l|_A psi = s |r>_B
      CVector r = m.transpose() * l.conjugate();
      double s = r.norm();
      out.coefficients[i] = s;
      out.left_vectors.push_back(std::move(l));
      out.right_vectors.push_back(r / s);
    }
    begin = end;
  }
  return out;
}

inline bool linearly_independent(const CVector& u, const CVector& v, const Tolerances& tol = {}) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "vectors differ in length");
  double nu = u.norm(), nv = v.norm();
  if (nu < tol.zero || nv < tol.zero) throw Error(ErrorKind::ZeroVector, "independence test on a zero vector");
  return std::abs(u.dot(v)) / (nu * nv) < 1.0 - tol.indep;
}

}  // namespace bellpair

#endif  // BELLPAIR_STATEVEC_HPP
