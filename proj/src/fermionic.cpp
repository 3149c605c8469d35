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

#include "entangle_kit/fermionic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"

namespace ekit {

namespace {

constexpr double kZeroTol = 1e-10;

void check_antisymmetric(const CMat& m) {
  if (m.rows() != m.cols()) throw ArgumentError("matrix must be square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw ArgumentError("matrix is not antisymmetric");
}

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

cplx pfaffian(const CMat& omega) {
  check_antisymmetric(omega);
  if (omega.rows() % 2 != 0) throw ArgumentError("Pfaffian needs an even dimension");
  return pfaffian_parlett_reid(omega);
}

void check_two_fermion_amplitude(const CMat& omega) {
  check_antisymmetric(omega);
  const double nrm = (omega.adjoint() * omega).trace().real();
  if (std::abs(nrm - 0.5) > 1e-10) throw ArgumentError("two-fermion amplitude must satisfy tr(omega^+ omega) = 1/2");
}

double fermionic_concurrence(const CMat& omega) {
  if (omega.rows() != 4) throw ArgumentError("fermionic concurrence needs a 4x4 amplitude");
  check_two_fermion_amplitude(omega);
  return std::min(1.0, 8.0 * std::abs(pfaffian(omega)));
}

double fermionic_concurrence_dual(const CMat& omega) {
  if (omega.rows() != 4) throw ArgumentError("fermionic concurrence needs a 4x4 amplitude");
  check_two_fermion_amplitude(omega);
  CMat dual = CMat::Zero(4, 4);
  int p[4] = {0, 1, 2, 3};
  // Levi-Civita by enumerating permutations with their parity.
  do {
    int inv = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) inv += p[a] > p[b];
    }
    const double eps = inv % 2 ? -1.0 : 1.0;
    dual(p[0], p[1]) += 0.5 * eps * std::conj(omega(p[2], p[3]));
  } while (std::next_permutation(p, p + 4));
  // Fock inner product <a|b> = 2 tr(a^+ b)
  const cplx overlap = 2.0 * (dual.adjoint() * omega).trace();
  return std::min(1.0, std::abs(overlap));
}

Eigen::Matrix<double, 6, 6> fermion_conjugation_matrix() {
  Eigen::Matrix<double, 6, 6> d = Eigen::Matrix<double, 6, 6>::Zero();
  const double anti[6] = {1, -1, 1, 1, -1, 1};
  for (int k = 0; k < 6; ++k) d(k, 5 - k) = anti[k];
  return d;
}

CVec two_fermion_vector(const CMat& omega) {
  if (omega.rows() != 4 || omega.cols() != 4) throw ArgumentError("expected a 4x4 amplitude");
  CVec v(6);
  for (int k = 0; k < 6; ++k) v[k] = 2.0 * omega(kPairs[k][0], kPairs[k][1]);
  return v;
}

CMat two_fermion_matrix(const CVec& v) {
  if (v.size() != 6) throw ArgumentError("expected a 6-component vector");
  CMat omega = CMat::Zero(4, 4);
  for (int k = 0; k < 6; ++k) {
    omega(kPairs[k][0], kPairs[k][1]) = 0.5 * v[k];
    omega(kPairs[k][1], kPairs[k][0]) = -0.5 * v[k];
  }
  return omega;
}

double fermionic_concurrence_mixed(const CMat& rho) {
  if (rho.rows() != 6 || rho.cols() != 6) throw ArgumentError("fermionic mixed concurrence needs a 6x6 matrix");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("matrix is not Hermitian");
  if (hermitian_eigenvalues(rho).minCoeff() < -1e-10) throw ValidationError("matrix is not positive");
  const CMat d = fermion_conjugation_matrix().cast<cplx>();
  Eigen::ComplexEigenSolver<CMat> es(rho * d * rho.conjugate() * d, false);
  std::vector<double> lam;
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double ev = es.eigenvalues()[i].real();
    lam.push_back(ev > 1e-12 ? std::sqrt(ev) : 0.0);
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  double c = lam[0];
  for (int i = 1; i < 6; ++i) c -= lam[i];
  return std::clamp(c, 0.0, 1.0);
}

SlaterNormalForm slater_normal_form(const CMat& omega) {
  check_antisymmetric(omega);
  const Eigen::Index n = omega.rows();
  SlaterNormalForm out;
  out.U = CMat::Zero(n, n);
  // Rows of `basis` span the part of the single-particle space not yet split off.
  CMat basis = CMat::Identity(n, n);
  Eigen::Index row = 0;
  while (basis.rows() >= 2) {
    const CMat a = basis * omega * basis.transpose();
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()[0];
    if (s < 1e-14) break;
    const CVec u = svd.matrixU().col(0);
    const CVec v = svd.matrixV().col(0);
    // r1 a r2^T = u^+ a v = s; both rows decouple from their orthogonal complement.
    const CVec r1 = u.conjugate();
    const CVec r2 = v;
    out.U.row(row) = r1.transpose() * basis;
    out.U.row(row + 1) = r2.transpose() * basis;
    out.z.emplace_back(s, 0.0);
    row += 2;
    CMat span(a.rows(), 2);
    span.col(0) = r1.conjugate();
    span.col(1) = r2.conjugate();
    Eigen::HouseholderQR<CMat> qr(span);
    const CMat q = qr.householderQ();
    const CMat rest = q.rightCols(a.rows() - 2).adjoint();
    basis = rest * basis;
  }
  for (Eigen::Index k = 0; k < basis.rows(); ++k) out.U.row(row + k) = basis.row(k);
  for (const auto& zj : out.z) {
    if (std::abs(zj) > kZeroTol) ++out.rank;
  }
  return out;
}

FermionTensor FermionTensor::slater(int modes, const std::vector<int>& occupied) {
  const int m = static_cast<int>(occupied.size());
  if (m < 1 || modes < m) throw ArgumentError("invalid Slater determinant spec");
  FermionTensor t;
  t.modes = modes;
  t.particles = m;
  t.data.assign(static_cast<std::size_t>(std::pow(modes, m)), 0.0);
  std::vector<int> perm(m);
  for (int k = 0; k < m; ++k) perm[k] = k;
  double norm = 1.0;
  for (int k = 2; k <= m; ++k) norm *= k;
  norm = 1.0 / std::sqrt(norm);
  do {
    int inv = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) inv += perm[a] > perm[b];
    }
    std::vector<int> idx(m);
    for (int k = 0; k < m; ++k) idx[k] = occupied[perm[k]];
    t.at(idx) = (inv % 2 ? -norm : norm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return t;
}

cplx& FermionTensor::at(const std::vector<int>& idx) {
  std::size_t off = 0;
  for (int i : idx) off = off * modes + static_cast<std::size_t>(i);
  return data[off];
}

cplx FermionTensor::at(const std::vector<int>& idx) const {
  std::size_t off = 0;
  for (int i : idx) off = off * modes + static_cast<std::size_t>(i);
  return data[off];
}

FermionTensor operator+(const FermionTensor& a, const FermionTensor& b) {
  if (a.modes != b.modes || a.particles != b.particles) throw ArgumentError("tensor shapes differ");
  FermionTensor out = a;
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += b.data[k];
  return out;
}

FermionTensor operator*(cplx s, const FermionTensor& a) {
  FermionTensor out = a;
  for (auto& x : out.data) x *= s;
  return out;
}

bool slater_rank_one_test(const FermionTensor& psi, int trials, std::uint64_t seed) {
  const int d = psi.modes;
  const int m = psi.particles;
  if (m < 2) throw ArgumentError("rank-one test needs at least two fermions");
  if (trials < 1) throw ArgumentError("rank-one test needs at least one trial");
  if (psi.data.size() != static_cast<std::size_t>(std::pow(d, m))) throw ArgumentError("tensor size mismatch");
  double scale = 0.0;
  for (const auto& x : psi.data) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) throw ArgumentError("zero tensor");
  // Antisymmetry under every adjacent transposition.
  for (std::size_t off = 0; off < psi.data.size(); ++off) {
    std::vector<int> idx(m);
    std::size_t rem = off;
    for (int k = m - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (int k = 0; k + 1 < m; ++k) {
      std::vector<int> sw = idx;
      std::swap(sw[k], sw[k + 1]);
      if (std::abs(psi.at(idx) + psi.at(sw)) > 1e-10 * scale) throw ArgumentError("tensor is not antisymmetric");
    }
  }
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> cur = psi.data;
    int order = m;
    while (order > 2) {
      const CVec v = random_gaussian_vector(d, rng);
      const std::size_t inner = cur.size() / d;
      std::vector<cplx> next(inner, 0.0);
      for (int i = 0; i < d; ++i) {
        for (std::size_t r = 0; r < inner; ++r) next[r] += v[i] * cur[i * inner + r];
      }
      cur.swap(next);
      --order;
    }
    CMat w(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) w(i, j) = cur[i * d + j];
    }
    const double nrm = w.norm();
    if (nrm < 1e-14) continue;
    w /= nrm;
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        for (int c = b + 1; c < d; ++c) {
          for (int e = c + 1; e < d; ++e) {
            const cplx pf = w(a, b) * w(c, e) - w(a, c) * w(b, e) + w(a, e) * w(b, c);
            if (std::abs(pf) > kZeroTol) return false;
          }
        }
      }
    }
  }
  return true;
}

BosonSchmidt boson_schmidt(const CMat& omega) {
  if (omega.rows() != omega.cols()) throw ArgumentError("matrix must be square");
  if (omega.size() == 0) throw ArgumentError("empty boson amplitude");
  const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw ArgumentError("matrix is not symmetric");
  const double nrm = 2.0 * (omega.adjoint() * omega).trace().real();
  if (std::abs(nrm - 1.0) > 1e-10) throw ArgumentError("boson amplitude must satisfy 2 tr(omega^+ omega) = 1");
  // Takagi values of a complex symmetric matrix are its singular values.
  const RVec sv = Eigen::JacobiSVD<CMat>(omega).singularValues();
  BosonSchmidt out;
  for (double s : sv) {
    if (s > kZeroTol) out.coefficients.push_back(s);
  }
  for (std::size_t k = 0; k < out.coefficients.size();) {
    std::size_t e = k + 1;
    while (e < out.coefficients.size() && std::abs(out.coefficients[e] - out.coefficients[k]) < 1e-8) ++e;
    out.multiplicities.push_back(static_cast<int>(e - k));
    k = e;
  }
  for (int g : out.multiplicities) out.reduced_rank += g / 2 + g % 2;
  out.entangled = out.reduced_rank > 1;
  return out;
}

int FockState::particle_number() const {
  if (amplitudes.size() != (Eigen::Index(1) << modes)) throw ArgumentError("Fock amplitude count must be 2^modes");
  int n = -1;
  for (Eigen::Index b = 0; b < amplitudes.size(); ++b) {
    if (std::abs(amplitudes[b]) < 1e-14) continue;
    const int c = std::popcount(static_cast<std::uint64_t>(b));
    if (n >= 0 && c != n) throw ArgumentError("Fock state has no fixed particle number");
    n = c;
  }
  if (n < 0) throw ArgumentError("zero Fock state");
  return n;
}

double entropy_measure(const CMat& amplitudes) {
  const RVec s = Eigen::JacobiSVD<CMat>(amplitudes).singularValues();
  return shannon_bits(s.cwiseAbs2());
}

double entanglement_of_particles(const FockState& psi, const Subsystem& modes_a, const BipartiteMeasure& measure) {
  const int m = psi.modes;
  if (m < 2 || m > 20) throw ArgumentError("mode count must be in 2..20");
  check_subsystem(modes_a, m, true);
  psi.particle_number();
  const double total = psi.amplitudes.squaredNorm();
  if (total < 1e-28) throw ArgumentError("zero-norm Fock state");
  const Subsystem modes_b = complement(modes_a, m);
  const Eigen::Index da = Eigen::Index(1) << modes_a.size();
  const Eigen::Index db = Eigen::Index(1) << modes_b.size();
  std::map<int, CMat> sectors;
  for (Eigen::Index b = 0; b < psi.amplitudes.size(); ++b) {
    const cplx amp = psi.amplitudes[b];
    if (amp == 0.0) continue;
    auto occ = [&](int mode) { return (b >> (m - 1 - mode)) & 1; };
    // Sign of reordering the creation string so that all A modes come first.
    int swaps = 0;
    for (int qa : modes_a) {
      if (!occ(qa)) continue;
      for (int qb : modes_b) {
        if (qb < qa && occ(qb)) ++swaps;
      }
    }
    Eigen::Index ia = 0, ib = 0;
    int na = 0;
    for (int q : modes_a) {
      ia = (ia << 1) | occ(q);
      na += static_cast<int>(occ(q));
    }
    for (int q : modes_b) ib = (ib << 1) | occ(q);
    auto it = sectors.find(na);
    if (it == sectors.end()) it = sectors.emplace(na, CMat::Zero(da, db)).first;
    it->second(ia, ib) = (swaps % 2 ? -amp : amp);
  }
  double ep = 0.0;
  for (auto& [na, mat] : sectors) {
    const double p = mat.squaredNorm() / total;
    if (p < 1e-14) continue;
    ep += p * measure(mat / mat.norm());
  }
  return ep;
}

}  // namespace ekit
