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

#include "entangle_kit/spin_models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/free_fermion.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/optimize.hpp"
#include "entangle_kit/parallel.hpp"

namespace ekit {

namespace {

constexpr int kDenseLimit = 10;

using Triplet = Eigen::Triplet<double>;

// Hamiltonian restricted to basis states with the given popcount parity (0 even, 1 odd, -1 all).
SparseH build_block(const ModelParams& p, const std::vector<std::uint32_t>& states) {
  const int n = p.N;
  std::vector<std::int64_t> pos(std::size_t(1) << n, -1);
  for (std::size_t k = 0; k < states.size(); ++k) pos[states[k]] = static_cast<std::int64_t>(k);
  std::vector<Triplet> trip;
  const int bonds = p.boundary == Boundary::Periodic ? (n == 2 ? 1 : n) : n - 1;
  const double flip_anti = p.J / 4.0;           // |01> <-> |10>
  const double flip_para = p.J * p.gamma / 4.0; // |00> <-> |11>
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::uint32_t b = states[k];
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const int si = ((b >> (n - 1 - i)) & 1) ? -1 : 1;
      diag -= 0.5 * p.h * si;
    }
    for (int i = 0; i < bonds; ++i) {
      const int j = (i + 1) % n;
      const std::uint32_t mi = 1u << (n - 1 - i);
      const std::uint32_t mj = 1u << (n - 1 - j);
      const bool bi = b & mi, bj = b & mj;
      diag += p.J * p.delta * 0.25 * (bi == bj ? 1.0 : -1.0);
      const double amp = bi == bj ? flip_para : flip_anti;
      if (amp != 0.0) trip.emplace_back(static_cast<int>(pos[b ^ mi ^ mj]), static_cast<int>(k), amp);
    }
    trip.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
  }
  SparseH h(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(states.size()));
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

std::vector<std::uint32_t> sector_states(int n, int parity_bit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    if (parity_bit < 0 || (std::popcount(b) & 1) == parity_bit) out.push_back(b);
  }
  return out;
}

std::pair<double, RVec> sector_ground_state(const ModelParams& p, int parity_bit, std::uint64_t seed) {
  const auto states = sector_states(p.N, parity_bit);
  const SparseH h = build_block(p, states);
  std::pair<double, RVec> res;
  if (p.N <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<RMat> es{RMat(h)};
    res = {es.eigenvalues()[0], es.eigenvectors().col(0)};
  } else {
    res = lowest_eigenpair(h, seed);
  }
  RVec full = RVec::Zero(Eigen::Index(1) << p.N);
  for (std::size_t k = 0; k < states.size(); ++k) full[states[k]] = res.second[static_cast<Eigen::Index>(k)];
  // Deterministic global sign: largest component positive.
  Eigen::Index arg = 0;
  full.cwiseAbs().maxCoeff(&arg);
  if (full[arg] < 0) full = -full;
  return {res.first, full};
}

}  // namespace

ModelParams ModelParams::from_lambda(double gamma, double lambda, int N, double J, double delta, Boundary boundary) {
  if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
  ModelParams p;
  p.gamma = gamma;
  p.delta = delta;
  p.J = J;
  p.h = std::isinf(lambda) ? 0.0 : J / (2.0 * lambda);
  p.N = N;
  p.boundary = boundary;
  return p;
}

ModelParams ModelParams::named(const std::string& model, int N) {
  ModelParams p;
  p.N = N;
  if (model == "ising") {
    p.gamma = 1.0;
  } else if (model == "xx" || model == "xxz") {
    p.gamma = 0.0;
  } else if (model == "xxx") {
    p.gamma = 0.0;
    p.delta = 1.0;
  } else if (model == "xy") {
    p.gamma = 0.5;
  } else {
    throw ArgumentError("unknown model '" + model + "'");
  }
  return p;
}

void ModelParams::validate() const {
  if (N < 2) throw ArgumentError("chain needs at least two sites");
  if (!std::isfinite(gamma) || !std::isfinite(delta) || !std::isfinite(J) || !std::isfinite(h)) {
    throw ArgumentError("model parameters must be finite");
  }
}

SparseH build_hamiltonian(const ModelParams& p) {
  p.validate();
  if (p.N > kMaxQubits) throw CapacityError("exact diagonalization is limited to 16 sites");
  return build_block(p, sector_states(p.N, -1));
}

RVec parity_diagonal(int n) {
  RVec d(Eigen::Index(1) << n);
  for (Eigen::Index b = 0; b < d.size(); ++b) d[b] = (std::popcount(static_cast<std::uint64_t>(b)) & 1) ? -1.0 : 1.0;
  return d;
}

std::pair<double, RVec> lowest_eigenpair(const SparseH& h, std::uint64_t seed, double tol) {
  const Eigen::Index n = h.rows();
  if (n <= 256) {
    Eigen::SelfAdjointEigenSolver<RMat> es{RMat(h)};
    return {es.eigenvalues()[0], es.eigenvectors().col(0)};
  }
  Rng rng(seed);
  std::normal_distribution<double> nd;
  RVec start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = nd(rng);
  start.normalize();
  const Eigen::Index m_max = std::min<Eigen::Index>(n, 160);
  for (int restart = 0; restart < 40; ++restart) {
    RMat v(n, m_max);
    std::vector<double> alpha, beta;
    v.col(0) = start;
    Eigen::Index m = 0;
    for (; m < m_max; ++m) {
      RVec w = h * v.col(m);
      alpha.push_back(v.col(m).dot(w));
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(m + 1) * (v.leftCols(m + 1).transpose() * w);
      const double b = w.norm();
      if (m + 1 == m_max || b < 1e-13) {
        beta.push_back(b);
        ++m;
        break;
      }
      beta.push_back(b);
      v.col(m + 1) = w / b;
    }
    RMat t = RMat::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      t(k, k) = alpha[k];
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(t);
    const RVec s = es.eigenvectors().col(0);
    const double theta = es.eigenvalues()[0];
    RVec x = v.leftCols(m) * s;
    x.normalize();
    const double resid = (h * x - theta * x).norm();
    if (resid < tol * std::max(1.0, std::abs(theta))) return {theta, x};
    start = x;
  }
  throw NumericalError("Lanczos did not converge");
}

PureState GroundStateBundle::plus() const {
  return PureState(even.n_qubits(), (even.amplitudes() + odd.amplitudes()) / std::sqrt(2.0), true);
}

PureState GroundStateBundle::minus() const {
  return PureState(even.n_qubits(), (even.amplitudes() - odd.amplitudes()) / std::sqrt(2.0), true);
}

DensityMatrix GroundStateBundle::rho0() const {
  if (even.n_qubits() > 12) throw CapacityError("dense rho0 is limited to 12 sites");
  const CMat m = 0.5 * (even.amplitudes() * even.amplitudes().adjoint() + odd.amplitudes() * odd.amplitudes().adjoint());
  return DensityMatrix::trusted(even.n_qubits(), m);
}

DensityMatrix GroundStateBundle::rho0_reduced(const Subsystem& keep) const {
  const CMat m = 0.5 * (partial_trace(even, keep).matrix() + partial_trace(odd, keep).matrix());
  return DensityMatrix::trusted(static_cast<int>(keep.size()), m);
}

PureState GroundStateBundle::least_entangled() const {
  auto mix = [this](double a) {
    return PureState(even.n_qubits(), std::cos(a) * even.amplitudes() + std::sin(a) * odd.amplitudes(), true);
  };
  auto f = [&](double a) { return max_pairwise_concurrence(mix(a)); };
  // Coarse scan over [0, pi) then Brent around the best node.
  const int grid = 24;
  int best = 0;
  double fb = f(0.0);
  for (int k = 1; k < grid; ++k) {
    const double v = f(M_PI * k / grid);
    if (v < fb) {
      fb = v;
      best = k;
    }
  }
  const double step = M_PI / grid;
  const double mid = step * best;
  const double fl = f(mid - step), fr = f(mid + step);
  if (fb <= fl && fb <= fr && (fb < fl || fb < fr)) {
    const double a = brent_minimize(f, mid - step, mid, mid + step, 1e-12).x[0];
    if (f(a) < fb) return mix(a);
  }
  return mix(mid);
}

GroundStateBundle ground_state(const ModelParams& p) {
  p.validate();
  if (p.N > 14) throw CapacityError("ground-state search by exact diagonalization is limited to 14 sites");
  auto [ee, ve] = sector_ground_state(p, 0, 11);
  auto [eo, vo] = sector_ground_state(p, 1, 13);
  // Relative sign: <even| sigma_x^0 |odd> >= 0.
  const CVec cvo = vo.cast<cplx>();
  PauliWord x0(p.N, 0);
  x0[0] = 1;
  const double ov = ve.cast<cplx>().dot(apply_pauli_word(cvo, p.N, x0)).real();
  if (ov < 0) vo = -vo;
  return GroundStateBundle{PureState(p.N, ve.cast<cplx>(), true), PureState(p.N, vo.cast<cplx>(), true), ee, eo};
}

double factorizing_field(double gamma, double delta, double J, double z) {
  const double rad = (1.0 + delta) * (1.0 + delta) - 0.25 * gamma * gamma;
  if (rad < 0.0) throw DomainError("factorizing field: negative radicand");
  return 0.5 * z * J * std::sqrt(rad);
}

double factorizing_field_exact(double gamma, double delta, double J, double z) {
  const double rad = (0.5 + delta) * (0.5 + delta) - 0.25 * gamma * gamma;
  if (rad < 0.0) throw DomainError("factorizing field: negative radicand");
  return 0.5 * z * J * std::sqrt(rad);
}

CorrelatorSet ed_correlators(const PureState& psi, int i, int j) {
  const int n = psi.n_qubits();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ArgumentError("invalid site pair");
  auto two = [&](int a) {
    PauliWord w(n, 0);
    w[i] = w[j] = a;
    return pauli_expectation(psi, w).real() / 4.0;
  };
  auto one = [&](int site) {
    PauliWord w(n, 0);
    w[site] = 3;
    return pauli_expectation(psi, w).real() / 2.0;
  };
  return {two(1), two(2), two(3), 0.5 * (one(i) + one(j))};
}

double max_pairwise_concurrence(const PureState& psi) {
  double best = 0.0;
  for (int i = 0; i < psi.n_qubits(); ++i) {
    for (int j = i + 1; j < psi.n_qubits(); ++j) best = std::max(best, pairwise_concurrence(psi, i, j));
  }
  return best;
}

double max_pairwise_concurrence(const DensityMatrix& rho) {
  double best = 0.0;
  for (int i = 0; i < rho.n_qubits(); ++i) {
    for (int j = i + 1; j < rho.n_qubits(); ++j) {
      best = std::max(best, concurrence_mixed(partial_trace(rho, {i, j})).C);
    }
  }
  return best;
}

FactorizationScan find_factorizing_field(const ModelParams& base, double h_lo, double h_hi, double tol) {
  if (!(h_hi > h_lo)) throw ArgumentError("empty field interval");
  auto cmax = [&](double h) {
    ModelParams p = base;
    p.h = h;
    return max_pairwise_concurrence(ground_state(p).least_entangled());
  };
  const int grid = 41;
  double best_h = h_lo, best_c = cmax(h_lo);
  int best_k = 0;
  for (int k = 1; k < grid; ++k) {
    const double h = h_lo + (h_hi - h_lo) * k / (grid - 1);
    const double c = cmax(h);
    if (c < best_c) {
      best_c = c;
      best_h = h;
      best_k = k;
    }
  }
  // Golden-section refinement around the best grid point.
  const double dx = (h_hi - h_lo) / (grid - 1);
  double a = h_lo + dx * std::max(0, best_k - 1);
  double b = h_lo + dx * std::min(grid - 1, best_k + 1);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
  double f1 = cmax(c1), f2 = cmax(c2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - phi * (b - a);
      f1 = cmax(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (b - a);
      f2 = cmax(c2);
    }
  }
  const double hm = 0.5 * (a + b);
  const double fm = cmax(hm);
  if (fm < best_c) {
    best_c = fm;
    best_h = hm;
  }
  FactorizationScan out;
  out.h_star = best_h;
  out.c_max_at_h_star = best_c;
  {
    ModelParams p = base;
    p.h = best_h;
    out.c_plus_at_h_star = max_pairwise_concurrence(ground_state(p).plus());
  }
  out.h_formula = factorizing_field(base.gamma, base.delta, base.J, 2.0);
  out.h_exact = factorizing_field_exact(base.gamma, base.delta, base.J, 2.0);
  return out;
}

namespace {

struct PointData {
  std::vector<double> conc;  // C(r), r = 0 .. r_max (entry 0 unused)
  double mz = 0.0;
};

PointData point_data(double gamma, double lambda, int N, Engine engine, const ProfileOptions& opt, int r_max) {
  PointData d;
  d.conc.assign(r_max + 1, 0.0);
  const ModelParams p = ModelParams::from_lambda(gamma, lambda, N, opt.J, 0.0, opt.boundary);
  if (engine == Engine::FreeFermion) {
    const FreeFermionChain chain(p);
    for (int r = 1; r <= r_max; ++r) d.conc[r] = two_site_from_correlators(chain.correlators(0, r)).C;
    d.mz = chain.sz(0);
  } else {
    const GroundStateBundle gs = ground_state(p);
    const PureState& psi = gs.lowest();
    for (int r = 1; r <= r_max; ++r) d.conc[r] = two_site_from_correlators(ed_correlators(psi, 0, r)).C;
    d.mz = ed_correlators(psi, 0, 1).mz;
  }
  return d;
}

double c1_at(double gamma, double lambda, int N, Engine engine, const ProfileOptions& opt) {
  return point_data(gamma, lambda, N, engine, opt, 1).conc[1];
}

double derivative(double gamma, double lambda, int N, Engine engine, const ProfileOptions& opt) {
  auto central = [&](double s) {
    return (c1_at(gamma, lambda + s, N, engine, opt) - c1_at(gamma, lambda - s, N, engine, opt)) / (2.0 * s);
  };
  // Keep both stencil points on the positive axis.
  const double step = std::min(opt.step, 0.5 * lambda);
  const double d1 = central(step);
  if (!opt.richardson) return d1;
  return (4.0 * central(0.5 * step) - d1) / 3.0;
}

}  // namespace

double concurrence_at(double gamma, double lambda, int N, int r, Engine engine, const ProfileOptions& opt) {
  if (r < 1 || r >= N) throw ArgumentError("distance out of range");
  return point_data(gamma, lambda, N, engine, opt, r).conc[r];
}

std::vector<ProfileRow> concurrence_profile(double gamma, const std::vector<double>& lambda_grid, int N, Engine engine,
                                            const ProfileOptions& opt) {
  if (!std::is_sorted(lambda_grid.begin(), lambda_grid.end())) throw ArgumentError("lambda grid must be sorted");
  if (engine == Engine::ED && N > 14) throw ArgumentError("exact diagonalization engine is limited to 14 sites");
  const int r_max = opt.r_max > 0 ? std::min(opt.r_max, N / 2) : N / 2;
  return parallel_map<ProfileRow>(
      lambda_grid.size(),
      [&](std::size_t k) {
        const double lam = lambda_grid[k];
        const PointData d = point_data(gamma, lam, N, engine, opt, r_max);
        ProfileRow row;
        row.lambda = lam;
        row.C1 = r_max >= 1 ? d.conc[1] : 0.0;
        row.C2 = r_max >= 2 ? d.conc[2] : 0.0;
        row.dC1 = derivative(gamma, lam, N, engine, opt);
        for (int r = 1; r <= r_max; ++r) {
          if (d.conc[r] > 1e-8) row.R = r;
        }
        row.Mz = d.mz;
        return row;
      },
      opt.threads);
}

ScalingPoint locate_derivative_minimum(double gamma, int N, double lo, double hi, int grid) {
  if (grid < 3 || !(hi > lo)) throw ArgumentError("invalid search grid");
  ProfileOptions opt;
  auto f = [&](double lam) { return derivative(gamma, lam, N, Engine::FreeFermion, opt); };
  std::vector<double> xs(grid), ys(grid);
  for (int k = 0; k < grid; ++k) {
    xs[k] = lo + (hi - lo) * k / (grid - 1);
    ys[k] = f(xs[k]);
  }
  const int k = static_cast<int>(std::min_element(ys.begin(), ys.end()) - ys.begin());
  if (k == 0 || k == grid - 1) throw NumericalError("derivative minimum lies on the search boundary");
  const auto res = brent_minimize(f, xs[k - 1], xs[k], xs[k + 1], 1e-9);
  return {N, res.x[0], res.value};
}

ScalingFit scaling_fit(const std::vector<ScalingPoint>& data, double lambda_c) {
  if (data.size() < 5) throw NumericalError("scaling fit needs at least five system sizes");
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  RMat design(n, 2);
  RVec drift(n), depth(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double shift = std::abs(lambda_c - data[k].lambda_m);
    if (!(shift > 0.0)) throw NumericalError("minimum coincides with the critical point");
    design(k, 0) = 1.0;
    design(k, 1) = std::log(double(data[k].N));
    drift[k] = std::log(shift);
    depth[k] = data[k].depth;
  }
  if ((design.col(1).array() - design(0, 1)).abs().maxCoeff() == 0.0) {
    throw NumericalError("scaling fit needs distinct system sizes");
  }
  const auto qr = design.colPivHouseholderQr();
  const RVec a = qr.solve(drift);
  const RVec b = qr.solve(depth);
  ScalingFit out;
  out.theta = -a[1];
  out.drift_amplitude = std::exp(a[0]);
  out.prefactor = b[1];
  out.depth_intercept = b[0];
  out.nu = std::abs(kLogDivergencePrefactor / b[1]);
  const RVec r1 = drift - design * a;
  const RVec r2 = depth - design * b;
  out.drift_residuals.assign(r1.data(), r1.data() + n);
  out.depth_residuals.assign(r2.data(), r2.data() + n);
  return out;
}

}  // namespace ekit
