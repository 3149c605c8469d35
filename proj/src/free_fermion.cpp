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

#include "entangle_kit/free_fermion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"

namespace ekit {

namespace {

constexpr double kZeroMode = 1e-12;

RMat submatrix(const RMat& g, const std::vector<int>& idx) {
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  RMat out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) out(a, b) = g(idx[a], idx[b]);
  }
  return out;
}

struct SectorSolution {
  RMat gamma;
  double energy = 0.0;
  int parity = 1;
};

SectorSolution solve_sector(const RMat& a, int want_parity, bool constrain) {
  const Eigen::Index n = a.rows();
  Eigen::SelfAdjointEigenSolver<RMat> es(a.transpose() * a);
  const RMat& v = es.eigenvectors();
  RVec eps = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  RMat gamma = RMat::Zero(n, n);
  // Non-zero modes: Gamma = A |A|^{-1}.
  Eigen::Index zero_modes = 0;
  while (zero_modes < n && eps[zero_modes] < kZeroMode) ++zero_modes;
  if (zero_modes < n) {
    const RMat vn = v.rightCols(n - zero_modes);
    const RVec inv = eps.tail(n - zero_modes).cwiseInverse();
    gamma = a * vn * inv.asDiagonal() * vn.transpose();
  }
  // Zero modes: pair them up into an arbitrary pure configuration.
  for (Eigen::Index k = 0; k + 1 < zero_modes; k += 2) {
    gamma += v.col(k) * v.col(k + 1).transpose() - v.col(k + 1) * v.col(k).transpose();
  }
  SectorSolution s;
  s.gamma = gamma;
  s.parity = pfaffian_real(gamma) >= 0.0 ? 1 : -1;
  if (constrain && s.parity != want_parity) {
    // Flip the occupation of the softest mode inside an A-invariant plane.
    const RVec v1 = v.col(0);
    RVec v2;
    if (eps[0] < kZeroMode) {
      v2 = v.col(1);
    } else {
      v2 = a * v1 / eps[0];
    }
    RMat p(n, 2);
    p.col(0) = v1;
    p.col(1) = v2.normalized();
    s.gamma -= 2.0 * p * (p.transpose() * s.gamma * p) * p.transpose();
    s.parity = want_parity;
  }
  s.energy = 0.25 * (a * s.gamma).trace();
  return s;
}

// Periodic chain with even N: A is block circulant up to the boundary twist, so Gamma is assembled from
// 2x2 polar factors of the Bloch blocks a(k) = B0 + B1 e^{ik} - B1^T e^{-ik}.
SectorSolution solve_sector_bloch(const ModelParams& p, int sector) {
  const int n = p.N;
  Eigen::Matrix2d b0, b1;
  b0 << 0.0, p.h, -p.h, 0.0;
  b1 << 0.0, p.J * (1.0 - p.gamma) / 4.0, -p.J * (1.0 + p.gamma) / 4.0, 0.0;
  const Eigen::Matrix2cd j2 = (Eigen::Matrix2cd() << 0.0, 1.0, -1.0, 0.0).finished();
  const double shift = sector == 1 ? 0.5 : 0.0;
  std::vector<double> ks(n);
  std::vector<Eigen::Matrix2cd> ak(n), gk(n);
  int k0 = -1, kpi = -1;
  for (int m = 0; m < n; ++m) {
    ks[m] = 2.0 * M_PI * (m + shift) / n;
    const cplx e = std::exp(cplx(0.0, ks[m]));
    ak[m] = b0.cast<cplx>() + b1.cast<cplx>() * e - b1.transpose().cast<cplx>() * std::conj(e);
    if (sector == -1 && m == 0) k0 = m;
    if (sector == -1 && 2 * m == n) kpi = m;
  }
  for (int m = 0; m < n; ++m) {
    if (m == k0 || m == kpi) {
      gk[m] = (ak[m](0, 1).real() >= 0.0 ? 1.0 : -1.0) * j2;
      continue;
    }
    if (2.0 * (m + shift) > n) continue;  // filled from the partner -k below
    // i a(k) is Hermitian; Gamma(k) = -i sign(i a(k)), with sign(0) taken as +1.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(cplx(0.0, 1.0) * ak[m]);
    Eigen::Matrix2cd sgn = Eigen::Matrix2cd::Zero();
    for (int c = 0; c < 2; ++c) {
      const double sg = es.eigenvalues()[c] >= 0.0 ? 1.0 : -1.0;
      sgn += sg * es.eigenvectors().col(c) * es.eigenvectors().col(c).adjoint();
    }
    gk[m] = cplx(0.0, -1.0) * sgn;
    const int partner = ((n - m - (sector == 1 ? 1 : 0)) % n + n) % n;
    gk[partner] = gk[m].conjugate();
  }
  int parity = 1;
  if (sector == -1) {
    const double s0 = gk[k0](0, 1).real(), spi = gk[kpi](0, 1).real();
    parity = (s0 > 0) == (spi > 0) ? 1 : -1;
    if (parity != sector) {
      // Flip the softer unpaired mode.
      const int flip = std::abs(ak[k0](0, 1)) <= std::abs(ak[kpi](0, 1)) ? k0 : kpi;
      gk[flip] = -gk[flip];
      parity = sector;
    }
  }
  SectorSolution s;
  s.parity = parity;
  double e = 0.0;
  for (int m = 0; m < n; ++m) e += (ak[m] * gk[m]).trace().real();
  s.energy = 0.25 * e;
  // G(d) = (1/N) sum_k e^{-ikd} Gamma(k), d = j - i in (-N, N).
  std::vector<Eigen::Matrix2d> g(2 * n - 1);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (int m = 0; m < n; ++m) acc += std::exp(cplx(0.0, -ks[m] * d)) * gk[m];
    g[d + n - 1] = acc.real() / double(n);
  }
  s.gamma.resize(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.gamma.block<2, 2>(2 * i, 2 * j) = g[j - i + n - 1];
  }
  s.gamma = 0.5 * (s.gamma - s.gamma.transpose()).eval();
  return s;
}

}  // namespace

double pfaffian_real(const RMat& a) { return pfaffian_parlett_reid(a); }

RMat majorana_form(const ModelParams& p, int sector) {
  const int n = p.N;
  RMat a = RMat::Zero(2 * n, 2 * n);
  auto put = [&](int r, int c, double v) {
    a(r, c) += v;
    a(c, r) -= v;
  };
  for (int i = 0; i < n; ++i) put(2 * i, 2 * i + 1, p.h);
  const int bonds = p.boundary == Boundary::Periodic && n > 2 ? n : n - 1;
  for (int i = 0; i < bonds; ++i) {
    int j = i + 1;
    double s = 1.0;
    if (j == n) {
      // Jordan-Wigner string across the boundary: the bond picks up -parity.
      j = 0;
      s = -static_cast<double>(sector);
    }
    put(2 * i + 1, 2 * j, -s * p.J * (1.0 + p.gamma) / 4.0);
    put(2 * i, 2 * j + 1, s * p.J * (1.0 - p.gamma) / 4.0);
  }
  return a;
}

FreeFermionChain::FreeFermionChain(const ModelParams& p, bool dense) : p_(p) {
  p.validate();
  if (p.delta != 0.0) throw UnsupportedModelError("free-fermion engine requires Delta = 0");
  if (p.N > 4000) throw CapacityError("free-fermion engine is limited to 4000 sites");
  if (p.boundary == Boundary::Open) {
    const SectorSolution s = solve_sector(majorana_form(p, 1), 1, false);
    gamma_ = s.gamma;
    energy_ = s.energy;
    parity_ = s.parity;
    return;
  }
  const bool bloch = !dense && p.N >= 4 && p.N % 2 == 0;
  const SectorSolution even = bloch ? solve_sector_bloch(p, 1) : solve_sector(majorana_form(p, 1), 1, true);
  const SectorSolution odd = bloch ? solve_sector_bloch(p, -1) : solve_sector(majorana_form(p, -1), -1, true);
  const SectorSolution& best = odd.energy < even.energy - 1e-12 ? odd : even;
  gamma_ = best.gamma;
  energy_ = best.energy;
  parity_ = best.parity;
}

double FreeFermionChain::sxsx(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return 0.25;
  std::vector<int> idx;
  for (int k = 2 * i + 1; k <= 2 * j; ++k) idx.push_back(k);
  return 0.25 * pfaffian_real(submatrix(gamma_, idx));
}

double FreeFermionChain::sysy(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return 0.25;
  std::vector<int> idx{2 * i};
  for (int k = 2 * i + 2; k <= 2 * j - 1; ++k) idx.push_back(k);
  idx.push_back(2 * j + 1);
  return -0.25 * pfaffian_real(submatrix(gamma_, idx));
}

double FreeFermionChain::szsz(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return 0.25;
  return 0.25 * pfaffian_real(submatrix(gamma_, {2 * i, 2 * i + 1, 2 * j, 2 * j + 1}));
}

double FreeFermionChain::sz(int i) const { return 0.5 * gamma_(2 * i, 2 * i + 1); }

CorrelatorSet FreeFermionChain::correlators(int i, int j) const {
  if (i < 0 || j < 0 || i >= p_.N || j >= p_.N || i == j) throw ArgumentError("invalid site pair");
  CorrelatorSet c;
  c.gxx = sxsx(i, j);
  c.gyy = sysy(i, j);
  c.gzz = szsz(i, j);
  c.mz = 0.5 * (sz(i) + sz(j));
  return c;
}

CorrelatorTable free_fermion_correlators(const ModelParams& p, int r_max) {
  const FreeFermionChain chain(p);
  const int rm = r_max > 0 ? std::min(r_max, p.N - 1) : p.N / 2;
  CorrelatorTable t;
  t.gxx.assign(rm + 1, 0.25);
  t.gyy.assign(rm + 1, 0.25);
  t.gzz.assign(rm + 1, 0.25);
  for (int r = 1; r <= rm; ++r) {
    t.gxx[r] = chain.sxsx(0, r);
    t.gyy[r] = chain.sysy(0, r);
    t.gzz[r] = chain.szsz(0, r);
  }
  t.mz = chain.sz(0);
  t.energy = chain.energy();
  t.parity = chain.parity();
  return t;
}

CorrelatorTable free_fermion_correlators(double gamma, double lambda, int N, double J, Boundary boundary, int r_max) {
  return free_fermion_correlators(ModelParams::from_lambda(gamma, lambda, N, J, 0.0, boundary), r_max);
}

}  // namespace ekit
