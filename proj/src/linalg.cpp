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

#include "entangle_kit/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace ekit {

RVec hermitian_eigenvalues(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double shannon_bits(const RVec& probs) {
  double s = 0.0;
  for (double p : probs) {
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

double binary_entropy(double x) {
  RVec p(2);
  p << x, 1.0 - x;
  return shannon_bits(p);
}

double von_neumann_bits(const CMat& rho) { return shannon_bits(hermitian_eigenvalues(rho)); }

CVec random_gaussian_vector(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVec v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

CMat haar_unitary(int d, Rng& rng) {
  CMat z(d, d);
  for (int j = 0; j < d; ++j) z.col(j) = random_gaussian_vector(d, rng);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0) q.col(j) *= rjj / a;
  }
  return q;
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t k) {
  // splitmix64 step on the combined key
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ekit
