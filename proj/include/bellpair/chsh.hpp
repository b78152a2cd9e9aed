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

#ifndef BELLPAIR_CHSH_HPP
#define BELLPAIR_CHSH_HPP

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>

#include "bellpair/entanglement.hpp"
#include "bellpair/statevec.hpp"

namespace bellpair {

/*
 * CHSH certification of a two-qubit pure state via the Horodecki criterion.
 * With T_ij = <sigma_i (x) sigma_j> and singular values t1 >= t2 >= t3 of T,
 *
 *   S_max = 2 sqrt(t1^2 + t2^2),
 *
 * attained by Alice measuring a = u1, a' = u2 and Bob measuring
 * b, b' = cos(w) v1 +- sin(w) v2 with tan(w) = t2 / t1, where (u_k, v_k) are
 * the singular vector pairs of T. For pure states t = (1, C, C), giving the
 * closed form 2 sqrt(1 + C^2).
 */

using Bloch = Eigen::Vector3d;

struct ChshSettings {
  Bloch a, a_prime, b, b_prime;
};

struct ChshCertificate {
  double s_max;
  ChshSettings settings;
  Eigen::Matrix3d correlation_matrix;
  double closed_form;  // 2 sqrt(1 + C^2), kept as an independent cross-check
};

inline std::array<CMatrix, 3> pauli_matrices() {
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

inline Eigen::Matrix3d correlation_matrix(const PureState& two_qubit) {
  if (two_qubit.dims() != std::vector<int>{2, 2})
    throw Error(ErrorKind::DimensionMismatch, "CHSH needs dims [2,2]");
  const auto sigma = pauli_matrices();
  // Reshape psi as a 2x2 matrix M (rows party 1); <s_i (x) s_j> = tr(M^dag s_i M s_j^T).
  CMatrix m(2, 2);
  m << two_qubit.amps()[0], two_qubit.amps()[1], two_qubit.amps()[2], two_qubit.amps()[3];
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (m.adjoint() * sigma[i] * m * sigma[j].transpose()).trace().real();
  return t;
}

inline double evaluate_chsh(const Eigen::Matrix3d& t, const ChshSettings& s) {
  return s.a.dot(t * (s.b + s.b_prime)) + s.a_prime.dot(t * (s.b - s.b_prime));
}

inline double evaluate_chsh(const PureState& two_qubit, const ChshSettings& s) {
  for (const Bloch* v : {&s.a, &s.a_prime, &s.b, &s.b_prime})
    if (std::abs(v->norm() - 1.0) > 1e-9) throw Error(ErrorKind::NotUnit, "CHSH setting is not a unit vector");
  return evaluate_chsh(correlation_matrix(two_qubit), s);
}

inline double gisin_value(double concurrence) { return 2.0 * std::sqrt(1.0 + concurrence * concurrence); }

namespace detail {

// Canonical axis order for gauge fixing: x, then z, then y.
inline const std::array<Bloch, 3>& gauge_axes() {
  static const std::array<Bloch, 3> axes{Bloch::UnitX(), Bloch::UnitZ(), Bloch::UnitY()};
  return axes;
}

/// Orthonormal basis of span(cols), built from the projections of the gauge
/// axes (largest first), so degenerate singular subspaces get a fixed basis.
inline std::vector<Bloch> canonical_basis(const Eigen::MatrixXd& cols) {
  std::vector<Bloch> out;
  Eigen::MatrixXd q = cols;
  for (Eigen::Index step = 0; step < cols.cols(); ++step) {
    Bloch best = Bloch::Zero();
    for (const Bloch& axis : gauge_axes()) {
      Bloch p = q * (q.transpose() * axis);
      if (p.norm() > best.norm() + 1e-9) best = p;
    }
    best.normalize();
    out.push_back(best);
    // Remove the chosen direction from the remaining span.
    Eigen::MatrixXd proj = q - best * (best.transpose() * q);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
    q = svd.matrixU().leftCols(cols.cols() - step - 1);
  }
  return out;
}

/// A unit vector orthogonal to every vector in `taken`, from the gauge axes.
inline Bloch canonical_complement(const std::vector<Bloch>& taken) {
  Bloch best = Bloch::Zero();
  for (const Bloch& axis : gauge_axes()) {
    Bloch p = axis;
    for (const Bloch& t : taken) p -= t * t.dot(p);
    if (p.norm() > best.norm() + 1e-9) best = p;
  }
  return best.normalized();
}

}  // namespace detail

inline ChshCertificate max_chsh(const PureState& two_qubit, const Tolerances& tol = {}) {
  const Eigen::Matrix3d t = correlation_matrix(two_qubit);

  // Right singular vectors from the eigen decomposition of T^T T.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(t.transpose() * t);
  Eigen::Vector3d tau = eig.eigenvalues().reverse().cwiseMax(0.0);
  Eigen::Matrix3d v = eig.eigenvectors().rowwise().reverse();

  // Canonicalize blocks of (numerically) equal singular values.
  std::vector<Bloch> right;
  Eigen::Vector3d sigma = tau.cwiseSqrt();
  for (int begin = 0; begin < 3;) {
    int end = begin + 1;
    while (end < 3 && sigma[end - 1] - sigma[end] <= 1e-9) ++end;
    for (const Bloch& b : detail::canonical_basis(v.middleCols(begin, end - begin))) right.push_back(b);
    begin = end;
  }

  std::vector<Bloch> left;
  for (int k = 0; k < 2; ++k) {
    if (sigma[k] > tol.rank) {
      left.push_back((t * right[static_cast<std::size_t>(k)]) / sigma[k]);
    } else {
      left.push_back(detail::canonical_complement(left));
    }
  }
  // Sign gauge: Alice's first setting has a positive leading component in
  // the order x, z, y. Flipping (u1, v1) together leaves T v1 = s1 u1 intact.
  for (const Bloch& axis : detail::gauge_axes()) {
    double c = left[0].dot(axis);
    if (std::abs(c) > 1e-9) {
      if (c < 0) {
        left[0] = -left[0];
        right[0] = -right[0];
      }
      break;
    }
  }

  const double norm = std::hypot(sigma[0], sigma[1]);
  const double cw = norm > 0 ? sigma[0] / norm : 1.0;
  const double sw = norm > 0 ? sigma[1] / norm : 0.0;
  ChshSettings s{left[0], left[1], (cw * right[0] + sw * right[1]).normalized(),
                 (cw * right[0] - sw * right[1]).normalized()};
  return {2.0 * std::sqrt(tau[0] + tau[1]), s, t, gisin_value(concurrence(two_qubit))};
}

}  // namespace bellpair

#endif  // BELLPAIR_CHSH_HPP
