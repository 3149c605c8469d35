/*
 * Copyright 2026 The entangle-kit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "entangle_kit/state.hpp"

namespace ekit {

using Rng = std::mt19937_64;

// Eigenvalues of a Hermitian matrix in ascending order.
RVec hermitian_eigenvalues(const CMat& m);

// -sum p log2 p, skipping entries below 1e-15.
double shannon_bits(const RVec& probs);
double binary_entropy(double x);
double von_neumann_bits(const CMat& rho);

CMat haar_unitary(int d, Rng& rng);
CVec random_gaussian_vector(Eigen::Index d, Rng& rng);

// Seed for the k-th independent stream derived from a base seed.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k);

// Parlett-Reid tridiagonalization with partial pivoting. Works on a copy.
template <class Matrix>
typename Matrix::Scalar pfaffian_parlett_reid(Matrix a) {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index n = a.rows();
  if (n == 0) return Scalar(1);
  if (n % 2 == 1) return Scalar(0);
  Scalar result(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      result = -result;
    }
    if (a(k + 1, k) == Scalar(0)) return Scalar(0);
    result *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index m = n - k - 2;
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tau = a.row(k).tail(m).transpose() / a(k, k + 1);
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col = a.col(k + 1).tail(m);
      a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

}  // namespace ekit
