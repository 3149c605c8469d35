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

#include "entangle_kit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/parallel.hpp"

namespace ekit {

namespace {

int ring_offset(int d, int N) {
  d %= N;
  if (d < 0) d += N;
  if (d > N / 2) d -= N;
  return d;
}

double bessel_int(int n, double x) {
  const int a = std::abs(n);
  const double v = std::cyl_bessel_j(static_cast<double>(a), std::abs(x));
  double s = (n < 0 && (a % 2)) ? -v : v;
  if (x < 0 && (a % 2)) s = -s;
  return s;
}

cplx ipow_minus_i(int m) {
  static const cplx tab[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
  return tab[((m % 4) + 4) % 4];
}

void check_sites(int N, int i, int j) {
  if (N < 2) throw ArgumentError("ring needs at least two sites");
  if (i < 0 || j < 0 || i >= N || j >= N) throw ArgumentError("site index out of range");
  if (i == j) throw ArgumentError("source sites must differ");
}

}  // namespace

bool bessel_window_ok(int N, int i, int j, double t, double J) {
  return 4.0 * std::abs(J * t) < 0.5 * N - std::abs(ring_offset(j - i, N));
}

bool bessel_site_ok(int N, int i, int j, int l, double t, double J) {
  const int d = std::max(std::abs(ring_offset(l - i, N)), std::abs(ring_offset(l - j, N)));
  return 4.0 * std::abs(J * t) < 0.5 * N - d;
}

MagnonAmplitudes magnon_amplitudes(int N, int i, int j, int sign, double t, MagnonMode mode, double J) {
  check_sites(N, i, j);
  if (sign != 1 && sign != -1) throw ArgumentError("sign must be +1 or -1");
  MagnonAmplitudes out;
  out.sign = sign;
  out.i = i;
  out.j = j;
  out.t = t;
  out.mode = mode;
  out.w.assign(N, 0.0);
  const double s2 = 1.0 / std::sqrt(2.0);
  if (mode == MagnonMode::Bessel && !bessel_window_ok(N, i, j, t, J)) {
    out.fell_back = true;
    out.warning = "Bessel form outside its validity window; using the finite-ring sum";
    mode = MagnonMode::Finite;
  }
  if (mode == MagnonMode::Bessel) {
    const double x = 4.0 * J * t;
    // Infinite-chain propagator G(d) = (-i)^|d| J_|d|(4 J t).
    auto g = [&](int d) {
      const int a = std::abs(ring_offset(d, N));
      return ipow_minus_i(a) * bessel_int(a, x);
    };
    for (int l = 0; l < N; ++l) out.w[l] = s2 * (g(l - i) + double(sign) * g(l - j));
    return out;
  }
  // G(d) = (1/N) sum_k exp(i k d) exp(-i 4 J t cos k)
  std::vector<cplx> g(N, 0.0);
  for (int d = 0; d < N; ++d) {
    cplx acc = 0.0;
    for (int m = 0; m < N; ++m) {
      const double k = 2.0 * M_PI * m / N;
      acc += std::exp(cplx(0.0, k * d - 4.0 * J * t * std::cos(k)));
    }
    g[d] = acc / double(N);
  }
  for (int l = 0; l < N; ++l) {
    out.w[l] = s2 * (g[((l - i) % N + N) % N] + double(sign) * g[((l - j) % N + N) % N]);
  }
  return out;
}

PairDynamics pair_dynamics(const MagnonAmplitudes& amps, int n, int m) {
  const int N = static_cast<int>(amps.w.size());
  if (n < 0 || m < 0 || n >= N || m >= N) throw ArgumentError("site index out of range");
  if (n == m) throw ArgumentError("pair sites must differ");
  PairDynamics out;
  out.C = std::min(1.0, 2.0 * std::abs(amps.w[n] * std::conj(amps.w[m])));
  const double p = std::norm(amps.w[n]) + std::norm(amps.w[m]);
  out.S2 = binary_entropy(std::clamp(p, 0.0, 1.0));
  return out;
}

PureState vacuum_state(int N) { return PureState::basis(N, 0); }

PureState magnon_pair_state(int N, int i, int j, int sign) {
  check_sites(N, i, j);
  if (N > kMaxQubits) throw CapacityError("state too large");
  CVec v = CVec::Zero(Eigen::Index(1) << N);
  v[Eigen::Index(1) << (N - 1 - i)] = 1.0 / std::sqrt(2.0);
  v[Eigen::Index(1) << (N - 1 - j)] = double(sign) / std::sqrt(2.0);
  return PureState(N, std::move(v), true);
}

namespace {

EvolutionFrame measure_frame(double t, const CVec& psi, int N) {
  EvolutionFrame f;
  f.t = t;
  f.norm_drift = std::abs(psi.norm() - 1.0);
  f.state = PureState(N, psi / psi.norm(), true);
  f.concurrence = RMat::Zero(N, N);
  f.tau1.resize(N);
  f.residual.resize(N);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) f.concurrence(i, j) = f.concurrence(j, i) = pairwise_concurrence(f.state, i, j);
  }
  double mag = 0.0;
  for (int i = 0; i < N; ++i) {
    f.tau1[i] = one_tangle(partial_trace(f.state, {i}));
    f.residual[i] = f.tau1[i] - f.concurrence.row(i).squaredNorm();
    PauliWord z(N, 0);
    z[i] = 3;
    mag += 0.5 * pauli_expectation(f.state, z).real();
  }
  f.magnetization = mag;
  return f;
}

// One Krylov step psi -> exp(-i H dt) psi, halving dt until the error estimate is tiny.
CVec krylov_step(const SparseH& h, const CVec& psi, double dt) {
  const int m_max = 40;
  const double nrm = psi.norm();
  CMat v(psi.size(), m_max + 1);
  std::vector<double> alpha, beta;
  v.col(0) = psi / nrm;
  int m = 0;
  for (; m < m_max; ++m) {
    CVec w = h * v.col(m);
    alpha.push_back(v.col(m).dot(w).real());
    for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(m + 1) * (v.leftCols(m + 1).adjoint() * w);
    const double b = w.norm();
    beta.push_back(b);
    if (b < 1e-14) {
      ++m;
      break;
    }
    v.col(m + 1) = w / b;
  }
  const int dim = m;
  RMat t = RMat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    t(k, k) = alpha[k];
    if (k + 1 < dim) t(k, k + 1) = t(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(t);
  auto propagate = [&](double tau) {
    CVec c = CVec::Zero(dim);
    for (int k = 0; k < dim; ++k) {
      c += std::exp(cplx(0.0, -es.eigenvalues()[k] * tau)) * es.eigenvectors()(0, k) * es.eigenvectors().col(k).cast<cplx>();
    }
    return c;
  };
  const CVec c = propagate(dt);
  const double err = dim < m_max ? 0.0 : std::abs(beta[dim - 1] * c[dim - 1]);
  if (err > 1e-13) {
    const CVec half = krylov_step(h, psi, 0.5 * dt);
    return krylov_step(h, half, 0.5 * dt);
  }
  return nrm * (v.leftCols(dim) * c);
}

}  // namespace

std::vector<EvolutionFrame> ed_evolution(const PureState& state0, const ModelParams& p, const std::vector<double>& t_grid,
                                         int threads) {
  p.validate();
  if (state0.n_qubits() != p.N) throw ArgumentError("state size does not match the chain");
  if (p.N > 14) throw CapacityError("time evolution by exact diagonalization is limited to 14 sites");
  const SparseH h = build_hamiltonian(p);
  const int N = p.N;
  std::vector<CVec> states(t_grid.size());
  if (h.rows() <= 4096) {
    Eigen::SelfAdjointEigenSolver<RMat> es{RMat(h)};
    const RMat& v = es.eigenvectors();
    const CVec c0 = v.transpose().cast<cplx>() * state0.amplitudes();
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      CVec ck(c0.size());
      for (Eigen::Index a = 0; a < c0.size(); ++a) ck[a] = std::exp(cplx(0.0, -es.eigenvalues()[a] * t_grid[k])) * c0[a];
      states[k] = v.cast<cplx>() * ck;
    }
  } else {
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw ArgumentError("time grid must be sorted");
    CVec psi = state0.amplitudes();
    double now = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      double remaining = t_grid[k] - now;
      while (std::abs(remaining) > 1e-15) {
        const double dt = std::copysign(std::min(std::abs(remaining), 0.5), remaining);
        psi = krylov_step(h, psi, dt);
        remaining -= dt;
      }
      now = t_grid[k];
      states[k] = psi;
    }
  }
  auto frames = parallel_map<EvolutionFrame>(
      t_grid.size(), [&](std::size_t k) { return measure_frame(t_grid[k], states[k], N); }, threads);
  for (const auto& f : frames) {
    if (f.norm_drift > 1e-10) throw NumericalError("time evolution lost unitarity");
  }
  return frames;
}

}  // namespace ekit
