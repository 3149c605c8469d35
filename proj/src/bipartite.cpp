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

#include "entangle_kit/bipartite.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"

namespace ekit {

namespace {

constexpr double kClamp = 1e-12;

CMat amplitude_matrix(const PureState& psi, const Subsystem& part) {
  const int n = psi.n_qubits();
  const Subsystem rest = complement(part, n);
  CMat m = CMat::Zero(Eigen::Index(1) << part.size(), Eigen::Index(1) << rest.size());
  for (Eigen::Index b = 0; b < psi.dim(); ++b) {
    Eigen::Index a = 0, r = 0;
    for (int q : part) a = (a << 1) | ((b >> (n - 1 - q)) & 1);
    for (int q : rest) r = (r << 1) | ((b >> (n - 1 - q)) & 1);
    m(a, r) = psi[b];
  }
  return m;
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  return yy;
}

}  // namespace

SchmidtData schmidt_decompose(const PureState& psi, const Subsystem& part) {
  check_subsystem(part, psi.n_qubits(), true);
  Eigen::JacobiSVD<CMat> svd(amplitude_matrix(psi, part), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

double entanglement_entropy(const PureState& psi, const Subsystem& part) {
  const SchmidtData s = schmidt_decompose(psi, part);
  return shannon_bits(s.coefficients.cwiseAbs2());
}

double one_tangle(const DensityMatrix& rho_a) {
  if (rho_a.dim() != 2) throw ArgumentError("one-tangle needs a single-qubit density matrix");
  const CMat& m = rho_a.matrix();
  return std::clamp(4.0 * std::real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)), 0.0, 1.0);
}

double concurrence_pure(const PureState& psi) {
  if (psi.n_qubits() != 2) throw ArgumentError("pure-state concurrence needs two qubits");
  return std::min(1.0, std::abs(antilinear_expectation(psi, {2, 2})));
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

ConcurrenceResult concurrence_mixed(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ArgumentError("mixed-state concurrence needs a two-qubit density matrix");
  const CMat& r = rho.matrix();
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("density matrix is not Hermitian");
  if (hermitian_eigenvalues(r).minCoeff() < -1e-10) throw ValidationError("density matrix is not positive");
  // The roots of the spectrum of rho rho~ are the singular values of X^T (Y x Y) X with rho = X X^dagger.
  // Working with X avoids square roots of eigenvalues that round to zero.
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  // Eigenvalues at rounding level would enter through their square roots.
  const double floor = 1e-14 * std::max(1.0, es.eigenvalues().maxCoeff());
  const RVec p = (es.eigenvalues().array() > floor).select(es.eigenvalues(), 0.0);
  const CMat x = es.eigenvectors() * p.cwiseSqrt().asDiagonal();
  const CMat tau = x.transpose() * spin_flip() * x;
  const RVec sv = Eigen::JacobiSVD<CMat>(tau).singularValues();
  std::vector<double> lam(sv.data(), sv.data() + sv.size());
  std::sort(lam.begin(), lam.end(), std::greater<>());
  ConcurrenceResult out;
  out.C = std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
  out.EoF = eof_from_concurrence(out.C);
  return out;
}

double pairwise_concurrence(const PureState& psi, int i, int j) {
  if (i == j) throw ArgumentError("pairwise concurrence needs two distinct qubits");
  Subsystem keep{std::min(i, j), std::max(i, j)};
  return concurrence_mixed(partial_trace(psi, keep)).C;
}

TwoSiteResult two_site_from_correlators(const CorrelatorSet& c) {
  // Populations within rounding of zero are snapped so sqrt(a b) does not amplify the noise.
  auto snap = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
  const double a = snap(0.25 + c.gzz + c.mz);
  const double b = snap(0.25 + c.gzz - c.mz);
  const double x = 0.25 - c.gzz;
  const double z = c.gxx + c.gyy;  // |01> <-> |10> coherence
  const double cc = c.gxx - c.gyy; // |00> <-> |11> coherence
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = a;
  m(3, 3) = b;
  m(1, 1) = m(2, 2) = x;
  m(1, 2) = m(2, 1) = z;
  m(0, 3) = m(3, 0) = cc;
  if (hermitian_eigenvalues(m).minCoeff() < -1e-10) {
    throw ValidationError("inconsistent correlators: assembled two-site state is not positive");
  }
  TwoSiteResult out{DensityMatrix::trusted(2, m), 0.0, 0.0, 0.0};
  out.CI = std::abs(z) - std::sqrt(std::max(0.0, a * b));
  out.CII = std::abs(cc) - x;
  out.C = 2.0 * std::max({0.0, out.CI, out.CII});
  return out;
}

CMat partial_transpose(const CMat& rho, int n, const Subsystem& part) {
  Eigen::Index mask = 0;
  for (int q : part) mask |= Eigen::Index(1) << (n - 1 - q);
  CMat out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      // swap the part's bits between row and column labels
      const Eigen::Index d = (i ^ j) & mask;
      out(i ^ d, j ^ d) = rho(i, j);
    }
  }
  return out;
}

NegativityResult negativity_suite(const DensityMatrix& rho, const Subsystem& part) {
  check_subsystem(part, rho.n_qubits(), true);
  const RVec ev = hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.n_qubits(), part));
  NegativityResult out;
  for (double e : ev) {
    if (e < 0) out.N -= e;
  }
  if (out.N < kClamp) out.N = 0.0;
  out.EN = std::log2(2.0 * out.N + 1.0);
  out.ppt = ev.minCoeff() >= -1e-10;
  return out;
}

WitnessResult witness_eval(const DensityMatrix& rho, const CMat& w) {
  if (w.rows() != rho.dim() || w.cols() != rho.dim()) throw ArgumentError("witness dimension mismatch");
  if ((w - w.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw ArgumentError("witness must be Hermitian");
  WitnessResult out;
  out.value = std::real((rho.matrix() * w).trace());
  out.flagged = out.value > 0.0;
  return out;
}

}  // namespace ekit
