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

#include "entangle_kit/itinerant.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/fock.hpp"
#include "entangle_kit/free_fermion.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/optimize.hpp"
#include "entangle_kit/parallel.hpp"

namespace ekit {

double fermi_gas_f(double x, int d) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (x < 0) throw ArgumentError("distance must be non-negative");
  if (x < 1e-6) return 1.0 - x * x / (d == 2 ? 8.0 : 10.0);
  if (d == 2) return 2.0 * std::cyl_bessel_j(1.0, x) / x;
  return 3.0 * std::sph_bessel(1, x) / x;
}

FermiGasRdm fermi_gas_two_spin_rdm(double r, double kf, int d) {
  if (d != 2 && d != 3) throw ArgumentError("dimension must be 2 or 3");
  if (r < 0) throw ArgumentError("distance must be non-negative");
  if (!(kf > 0)) throw ArgumentError("Fermi momentum must be positive");
  const double f = fermi_gas_f(kf * r, d);
  const double f2 = f * f;
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0 - f2;
  m(1, 1) = m(2, 2) = 1.0;
  m(1, 2) = m(2, 1) = -f2;
  m /= (4.0 - 2.0 * f2);
  FermiGasRdm out{DensityMatrix(2, m), f, f2 >= 0.5, true};
  out.ppt = negativity_suite(out.rho12, {0}).ppt;
  return out;
}

double fermi_gas_entanglement_range(int d) {
  const double x0 = bisect_root([d](double x) { return fermi_gas_f(x, d) * fermi_gas_f(x, d) - 0.5; }, 1e-6,
                                2.0 * M_PI, 1e-12);
  return x0 / M_PI;
}

EtaPairing eta_pairing(int L, int N) {
  if (L < 2) throw ArgumentError("eta pairing needs at least two sites");
  if (N < 1 || N > L - 1) throw ArgumentError("pair number must be in 1..L-1");
  EtaPairing out;
  const double l = L, n = N;
  out.O_eta = n * (l - n) / (l * (l - 1.0));
  out.C_rescaled = 2.0 * out.O_eta * (1.0 - std::sqrt((n - 1.0) * (l - n - 1.0) / (n * (l - n))));
  return out;
}

CVec eta_pairing_fock_state(int L, int N) {
  if (L < 2 || L > 8) throw ArgumentError("explicit eta-pairing state supports 2..8 sites");
  if (N < 0 || N > L) throw ArgumentError("pair number out of range");
  const int modes = 2 * L;
  CVec v = CVec::Zero(Eigen::Index(1) << modes);
  v[0] = 1.0;
  for (int k = 0; k < N; ++k) {
    CVec next = CVec::Zero(v.size());
    for (int j = 0; j < L; ++j) next += apply_creation(apply_creation(v, modes, 2 * j + 1), modes, 2 * j);
    v = next;
  }
  const double nrm = v.norm();
  if (nrm == 0.0) throw NumericalError("eta-pairing state vanished");
  return v / nrm;
}

PureState eta_pairing_pseudospin_state(int L, int N) {
  const CVec f = eta_pairing_fock_state(L, N);
  const int modes = 2 * L;
  CVec q = CVec::Zero(Eigen::Index(1) << L);
  for (Eigen::Index b = 0; b < f.size(); ++b) {
    if (std::abs(f[b]) < 1e-15) continue;
    Eigen::Index label = 0;
    for (int j = 0; j < L; ++j) {
      const bool up = occupied(static_cast<std::uint64_t>(b), modes, 2 * j);
      const bool dn = occupied(static_cast<std::uint64_t>(b), modes, 2 * j + 1);
      if (up != dn) throw NumericalError("eta-pairing state has singly occupied sites");
      label = (label << 1) | (up ? 1 : 0);
    }
    q[label] = f[b];
  }
  return PureState(L, q, true);
}

double eta_correlator_explicit(int L, int N, int j, int k) {
  if (j < 0 || k < 0 || j >= L || k >= L) throw ArgumentError("site index out of range");
  const CVec psi = eta_pairing_fock_state(L, N);
  const int modes = 2 * L;
  CVec v = apply_annihilation(apply_annihilation(psi, modes, 2 * k), modes, 2 * k + 1);
  v = apply_creation(apply_creation(v, modes, 2 * j + 1), modes, 2 * j);
  return psi.dot(v).real();
}

double hubbard_local_entropy(double z, double u_plus, double u_minus, double w) {
  for (double p : {z, u_plus, u_minus, w}) {
    if (p < -1e-12 || !std::isfinite(p)) throw ArgumentError("local weights must be non-negative");
  }
  if (std::abs(z + u_plus + u_minus + w - 1.0) > 1e-10) throw ArgumentError("local weights must sum to 1");
  RVec p(4);
  p << z, u_plus, u_minus, w;
  return shannon_bits(p.cwiseMax(0.0));
}

double hubbard_local_entropy(const LocalWeights& lw) {
  return hubbard_local_entropy(lw.z, lw.u_plus, lw.u_minus, lw.w);
}

HubbardPoint extended_hubbard_point(double U, double V, int L, double t) {
  if (L != 2 && L != 4 && L != 6) throw ArgumentError("extended Hubbard scan supports L in {2, 4, 6}");
  const int modes = 2 * L;
  const int half = L / 2;
  std::vector<std::uint64_t> basis;
  std::vector<int> index(std::size_t(1) << modes, -1);
  for (std::uint64_t b = 0; b < (std::uint64_t(1) << modes); ++b) {
    int nu = 0, nd = 0;
    for (int j = 0; j < L; ++j) {
      nu += occupied(b, modes, 2 * j);
      nd += occupied(b, modes, 2 * j + 1);
    }
    if (nu == half && nd == half) {
      index[b] = static_cast<int>(basis.size());
      basis.push_back(b);
    }
  }
  const int dim = static_cast<int>(basis.size());
  const int bonds = L == 2 ? 1 : L;
  RMat h = RMat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const std::uint64_t b = basis[k];
    double diag = 0.0;
    for (int j = 0; j < L; ++j) {
      const int nj = occupied(b, modes, 2 * j) + occupied(b, modes, 2 * j + 1);
      if (occupied(b, modes, 2 * j) && occupied(b, modes, 2 * j + 1)) diag += U;
      if (j < bonds) {
        const int jn = (j + 1) % L;
        diag += V * nj * (occupied(b, modes, 2 * jn) + occupied(b, modes, 2 * jn + 1));
      }
    }
    h(k, k) = diag;
    for (int j = 0; j < bonds; ++j) {
      const int jn = (j + 1) % L;
      for (int s = 0; s < 2; ++s) {
        for (auto [from, to] : {std::pair{2 * j + s, 2 * jn + s}, std::pair{2 * jn + s, 2 * j + s}}) {
          if (!occupied(b, modes, from) || occupied(b, modes, to)) continue;
          const std::uint64_t mid = b ^ (std::uint64_t(1) << (modes - 1 - from));
          const int sign = jordan_wigner_sign(b, modes, from) * jordan_wigner_sign(mid, modes, to);
          const std::uint64_t nb = mid | (std::uint64_t(1) << (modes - 1 - to));
          h(index[nb], k) += -t * sign;
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  const double e0 = es.eigenvalues()[0];
  int deg = 1;
  while (deg < dim && es.eigenvalues()[deg] - e0 < 1e-9) ++deg;
  HubbardPoint out;
  out.U = U;
  out.V = V;
  out.energy = e0;
  out.degeneracy = deg;
  // Site-averaged local weights in the equal mixture over the ground manifold.
  for (int g = 0; g < deg; ++g) {
    const RVec v = es.eigenvectors().col(g);
    for (int k = 0; k < dim; ++k) {
      const double p = v[k] * v[k] / (deg * L);
      for (int j = 0; j < L; ++j) {
        const bool up = occupied(basis[k], modes, 2 * j);
        const bool dn = occupied(basis[k], modes, 2 * j + 1);
        if (up && dn) {
          out.weights.w += p;
        } else if (up) {
          out.weights.u_plus += p;
        } else if (dn) {
          out.weights.u_minus += p;
        } else {
          out.weights.z += p;
        }
      }
    }
  }
  out.S = hubbard_local_entropy(out.weights);
  return out;
}

std::vector<HubbardPoint> extended_hubbard_scan(const std::vector<double>& U_grid, const std::vector<double>& V_grid,
                                                int L, double t, int threads) {
  const std::size_t nv = V_grid.size();
  return parallel_map<HubbardPoint>(
      U_grid.size() * nv, [&](std::size_t k) { return extended_hubbard_point(U_grid[k / nv], V_grid[k % nv], L, t); },
      threads);
}

namespace {

// Sum of the M lowest tight-binding levels (J/2) cos k with periodic (odd M) or antiperiodic (even M) momenta.
double band_energy(int N, int M, double J) {
  if (M <= 0) return 0.0;
  std::vector<double> levels(N);
  const double shift = (M % 2 == 0) ? 0.5 : 0.0;
  for (int m = 0; m < N; ++m) levels[m] = 0.5 * J * std::cos(2.0 * M_PI * (m + shift) / N);
  std::sort(levels.begin(), levels.end());
  double e = 0.0;
  for (int m = 0; m < M; ++m) e += levels[m];
  return e;
}

}  // namespace

std::vector<FillingRow> tight_binding_halffilling_check(int N, const std::vector<double>& filling_grid, double J) {
  if (N < 4) throw ArgumentError("chain needs at least four sites");
  std::vector<FillingRow> rows;
  for (double n : filling_grid) {
    if (n < 0.0 || n > 1.0) throw ArgumentError("filling must lie in [0, 1]");
    FillingRow row;
    row.particles = static_cast<int>(std::lround(n * N));
    row.n = double(row.particles) / N;
    if (row.particles == 0 || row.particles == N) {
      row.C1 = 0.0;
      row.h = (row.particles == 0 ? 1.0 : -1.0) * J;
      rows.push_back(row);
      continue;
    }
    // Field in the middle of the window where M flipped spins minimize the energy.
    const int M = row.particles;
    row.h = (band_energy(N, M - 1, J) - band_energy(N, M + 1, J)) / 2.0;
    ModelParams p;
    p.gamma = 0.0;
    p.J = J;
    p.h = row.h;
    p.N = N;
    const FreeFermionChain chain(p);
    row.C1 = two_site_from_correlators(chain.correlators(0, 1)).C;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ekit
