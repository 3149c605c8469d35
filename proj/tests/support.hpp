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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "entangle_kit/linalg.hpp"
#include "entangle_kit/state.hpp"

namespace ekit::testing {

// Random full-rank density matrix G G^dagger / tr from a Ginibre matrix.
inline DensityMatrix random_density(int n_qubits, std::uint64_t seed, int rank = 0) {
  Rng rng(seed);
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  const Eigen::Index k = rank > 0 ? rank : d;
  CMat g(d, k);
  for (Eigen::Index c = 0; c < k; ++c) g.col(c) = random_gaussian_vector(d, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(n_qubits, rho);
}

inline CMat random_antisymmetric(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  CMat a = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = cplx(g(rng), g(rng));
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

// Pfaffian by expansion along the first row; exponential cost.
inline cplx pfaffian_by_expansion(const CMat& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  cplx sum = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> rest;
    for (Eigen::Index k = 1; k < n; ++k) {
      if (k != j) rest.push_back(k);
    }
    CMat minor(n - 2, n - 2);
    for (std::size_t r = 0; r < rest.size(); ++r) {
      for (std::size_t c = 0; c < rest.size(); ++c) minor(r, c) = a(rest[r], rest[c]);
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    sum += sign * a(0, j) * pfaffian_by_expansion(minor);
  }
  return sum;
}

// Wootters concurrence through the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
inline double wootters_sqrt_route(const CMat& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  const RVec root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMat s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  const CMat tilde = yy * rho.conjugate() * yy;
  CMat r = s * tilde * s;
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> er(r);
  std::vector<double> l;
  for (int k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, er.eigenvalues()[k])));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr) {
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (r2) *r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return sxy / sxx;
}

}  // namespace ekit::testing
