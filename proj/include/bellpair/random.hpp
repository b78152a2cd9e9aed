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

#ifndef BELLPAIR_RANDOM_HPP
#define BELLPAIR_RANDOM_HPP

#include <random>
#include <vector>

#include "bellpair/statevec.hpp"

namespace bellpair {

constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 20;

inline CVector random_gaussian_vector(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    double re = normal(rng);
    double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

/// Haar-random pure state: normalized i.i.d. standard complex Gaussians.
inline PureState haar_state(std::vector<int> dims, std::mt19937_64& rng) {
  const std::size_t size = total_dim(dims);
  if (size > kMaxAmplitudes) throw Error(ErrorKind::Oversize, "state exceeds 2^20 amplitudes");
  CVector v = random_gaussian_vector(static_cast<Eigen::Index>(size), rng);
  return PureState::normalized(std::move(dims), std::move(v));
}

/// Haar-random d x d unitary (QR of a Ginibre matrix with phase correction).
inline CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  CMatrix g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = random_gaussian_vector(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    Complex diag = r(k, k);
    q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace bellpair

#endif  // BELLPAIR_RANDOM_HPP
