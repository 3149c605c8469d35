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

#include "entangle_kit/multipartite.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/optimize.hpp"

namespace ekit {

namespace {

constexpr int kY = 2;

PauliWord word_from_index(int idx, int n) {
  PauliWord w(n);
  for (int q = n - 1; q >= 0; --q) {
    w[q] = idx & 3;
    idx >>= 2;
  }
  return w;
}

// T(word) for every word, indexed by the base-4 label (qubit 0 most significant).
std::vector<cplx> antilinear_tensor(const PureState& psi) {
  const int n = psi.n_qubits();
  std::vector<cplx> t(std::size_t(1) << (2 * n));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = antilinear_expectation(psi, word_from_index(int(k), n));
  return t;
}

inline int idx4(int a, int b, int c, int d) { return ((a * 4 + b) * 4 + c) * 4 + d; }

void require_qubits(const PureState& psi, int n, const char* what) {
  if (psi.n_qubits() != n) throw ArgumentError(std::string(what) + " needs " + std::to_string(n) + " qubits");
}

}  // namespace

double three_tangle(const PureState& psi) {
  require_qubits(psi, 3, "three-tangle");
  const auto t = antilinear_tensor(psi);
  cplx acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const double g = kMetric[a] * kMetric[b] * kMetric[c];
        if (g == 0.0) continue;
        const cplx v = t[(a * 4 + b) * 4 + c];
        acc += g * v * v;
      }
    }
  }
  return std::min(1.0, std::abs(acc) / 3.0);
}

double n_tangle(const PureState& psi) {
  if (psi.n_qubits() % 2 != 0) throw ArgumentError("n-tangle vanishes identically for odd qubit counts");
  const cplx v = antilinear_expectation(psi, PauliWord(psi.n_qubits(), kY));
  return std::min(1.0, std::norm(v));
}

double residual_tangle(const PureState& psi, int i) {
  const int n = psi.n_qubits();
  if (i < 0 || i >= n) throw ArgumentError("qubit index out of range");
  double r = one_tangle(partial_trace(psi, {i}));
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const double c = pairwise_concurrence(psi, i, j);
    r -= c * c;
  }
  return r;
}

FilterResult filters_F4(const PureState& psi) {
  require_qubits(psi, 4, "four-qubit filters");
  const auto t = antilinear_tensor(psi);
  const auto& g = kMetric;
  FilterResult out;

  cplx f1 = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      for (int l = 0; l < 4; ++l) {
        const double w = g[m] * g[n] * g[l];
        if (w == 0.0) continue;
        f1 += w * t[idx4(m, n, kY, kY)] * t[idx4(m, kY, l, kY)] * t[idx4(kY, n, l, kY)];
      }
    }
  }
  out.F1 = f1;

  // F2: arithmetic mean over qubit relabelings of the degree-8 contraction.
  std::array<int, 4> perm{0, 1, 2, 3};
  cplx f2 = 0.0;
  int count = 0;
  do {
    auto tp = [&](int a, int b, int c, int d) {
      int slot[4];
      const int in[4] = {a, b, c, d};
      for (int k = 0; k < 4; ++k) slot[perm[k]] = in[k];
      return t[idx4(slot[0], slot[1], slot[2], slot[3])];
    };
    cplx acc = 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        for (int l = 0; l < 4; ++l) {
          for (int tau = 0; tau < 4; ++tau) {
            const double w = g[m] * g[n] * g[l] * g[tau];
            if (w == 0.0) continue;
            acc += w * tp(m, n, kY, kY) * tp(m, kY, l, kY) * tp(kY, n, kY, tau) * tp(kY, kY, l, tau);
          }
        }
      }
    }
    f2 += acc;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.F2 = f2 / double(count);

  cplx a = 0.0, b = 0.0, c = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      const double w = g[m] * g[n];
      if (w == 0.0) continue;
      a += w * t[idx4(m, n, kY, kY)] * t[idx4(m, n, kY, kY)];
      b += w * t[idx4(m, kY, n, kY)] * t[idx4(m, kY, n, kY)];
      c += w * t[idx4(kY, m, n, kY)] * t[idx4(kY, m, n, kY)];
    }
  }
  out.F3 = 0.5 * a * b * c;
  return out;
}

double geometric_measure(const PureState& psi, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw ArgumentError("geometric measure needs at least one restart");
  const int n = psi.n_qubits();
  const CVec& amp = psi.amplitudes();
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(stream_seed(seed, r));
    std::vector<Eigen::Vector2cd> phi(n);
    for (auto& v : phi) {
      v = random_gaussian_vector(2, rng);
      v.normalize();
    }
    double overlap = 0.0;
    for (int sweep = 0; sweep < 500; ++sweep) {
      const double before = overlap;
      for (int k = 0; k < n; ++k) {
        // v_k = <prod_{q != k} phi_q | psi>
        Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
        for (Eigen::Index b = 0; b < amp.size(); ++b) {
          cplx w = amp[b];
          for (int q = 0; q < n && w != 0.0; ++q) {
            if (q == k) continue;
            w *= std::conj(phi[q][(b >> (n - 1 - q)) & 1]);
          }
          v[(b >> (n - 1 - k)) & 1] += w;
        }
        overlap = v.norm();
        if (overlap > 0) phi[k] = v / overlap;
      }
      if (std::abs(overlap - before) < 1e-14) break;
    }
    best = std::max(best, overlap);
  }
  best = std::min(best, 1.0);
  return -std::log2(best * best);
}

PurityDistribution purity_distribution(const PureState& psi) {
  const int n = psi.n_qubits();
  if (n > 14) throw CapacityError("purity distribution is limited to 14 qubits");
  PurityDistribution out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (2 * size > n) continue;
    if (2 * size == n && !(mask & (1u << (n - 1)))) continue;  // keep cuts containing qubit 0
    Subsystem part;
    for (int q = 0; q < n; ++q) {
      if (mask & (1u << (n - 1 - q))) part.push_back(q);
    }
    const CMat rho = partial_trace(psi, part).matrix();
    out.values.push_back({part, std::real((rho * rho).trace())});
  }
  if (n == 1) {
    out.values.push_back({{0}, 1.0});
  }
  double s = 0.0, s2 = 0.0;
  for (const auto& e : out.values) {
    s += e.purity;
    s2 += e.purity * e.purity;
  }
  const double m = double(out.values.size());
  out.mean = s / m;
  out.variance = std::max(0.0, s2 / m - out.mean * out.mean);
  double q = 0.0;
  for (int k = 0; k < n; ++k) q += one_tangle(partial_trace(psi, {k}));
  out.q_measure = q / n;
  return out;
}

LocalizableResult localizable_entanglement(const PureState& psi, int i, int j, int restarts, std::uint64_t seed) {
  const int n = psi.n_qubits();
  if (n > 8) throw CapacityError("localizable entanglement is limited to 8 qubits");
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ArgumentError("invalid qubit pair");
  if (restarts < 1) throw ArgumentError("localizable entanglement needs at least one restart");
  if (i > j) std::swap(i, j);
  LocalizableResult out;

  // Correlation bound: largest singular value of Q in Pauli units.
  Eigen::Matrix3d q;
  for (int a = 1; a <= 3; ++a) {
    PauliWord wa(n, 0);
    wa[i] = a;
    const double ea = pauli_expectation(psi, wa).real();
    for (int b = 1; b <= 3; ++b) {
      PauliWord wb(n, 0);
      wb[j] = b;
      PauliWord wab = wa;
      wab[j] = b;
      q(a - 1, b - 1) = pauli_expectation(psi, wab).real() - ea * pauli_expectation(psi, wb).real();
    }
  }
  out.lower_bound = Eigen::JacobiSVD<Eigen::Matrix3d>(q).singularValues()[0];

  std::vector<int> others;
  for (int k = 0; k < n; ++k) {
    if (k != i && k != j) others.push_back(k);
  }
  if (others.empty()) {
    out.E_loc = concurrence_pure(psi);
    return out;
  }
  const int m = static_cast<int>(others.size());
  // Average concurrence after projective measurements with bases rotated by angles x.
  auto average = [&](const RVec& x) {
    CVec a = psi.amplitudes();
    for (int k = 0; k < m; ++k) {
      const double th = x[2 * k], ph = x[2 * k + 1];
      const cplx c = std::cos(0.5 * th);
      const cplx s = std::exp(cplx(0, ph)) * std::sin(0.5 * th);
      Eigen::Matrix2cd w;  // rows: <n|, <n_perp|
      w << std::conj(c), std::conj(s), -s, c;
      a = apply_single_qubit(a, n, others[k], w);
    }
    const Eigen::Index si = Eigen::Index(1) << (n - 1 - i);
    const Eigen::Index sj = Eigen::Index(1) << (n - 1 - j);
    double total = 0.0;
    for (Eigen::Index b = 0; b < a.size(); ++b) {
      if (b & (si | sj)) continue;
      total += 2.0 * std::abs(a[b] * a[b | si | sj] - a[b | si] * a[b | sj]);
    }
    return total;
  };
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(stream_seed(seed, r));
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    RVec x0(2 * m);
    for (Eigen::Index k = 0; k < x0.size(); ++k) x0[k] = r == 0 ? (k % 2 == 0 ? 0.5 * M_PI : 0.0) : u(rng);
    const auto res = nelder_mead([&](const RVec& x) { return -average(x); }, x0, 0.5, 2000, 1e-10);
    best = std::max(best, -res.value);
  }
  out.E_loc = std::min(best, 1.0);
  return out;
}

Eigen::Matrix4d minkowski_metric() { return Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal(); }

namespace {

// Per-qubit coefficients of |psi^T O psi|^2 = tr(O rho O^* rho^T) expanded in Pauli products.
std::vector<LinearTerm> single_qubit_sigma_y_terms() {
  // Per qubit the expansion is (1/2) M; the overall sign (-1)^n cancels for even n and
  // both sides vanish identically for odd n.
  std::vector<LinearTerm> out;
  const Eigen::Matrix4d m = minkowski_metric();
  for (int mu = 0; mu < 4; ++mu) out.push_back({{mu, mu, 0, 0}, 0.5 * m(mu, mu)});
  return out;
}

std::vector<LinearTerm> single_qubit_metric_terms() {
  Eigen::Matrix4cd o = Eigen::Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu) o += kMetric[mu] * Eigen::Matrix4cd(Eigen::kroneckerProduct(pauli(mu), pauli(mu)));
  std::vector<LinearTerm> out;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const Eigen::Matrix4cd left = Eigen::kroneckerProduct(pauli(k), pauli(l));
      for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
          const Eigen::Matrix4cd right = Eigen::kroneckerProduct(pauli(mu).transpose(), pauli(nu).transpose());
          const cplx c = (o * left * o.conjugate() * right).trace() / 16.0;
          if (std::abs(c) > 1e-14) out.push_back({{k, l, mu, nu}, c.real()});
        }
      }
    }
  }
  return out;
}

}  // namespace

LinearizedOperator antilinear_to_linear(const std::vector<Comb>& spec) {
  if (spec.empty()) throw ArgumentError("empty comb spec");
  for (Comb c : spec) {
    if (c != spec.front()) throw ArgumentError("mixed comb types are not supported");
  }
  LinearizedOperator op;
  op.n_qubits = static_cast<int>(spec.size());
  op.copies = spec.front() == Comb::SigmaY ? 2 : 4;
  const auto terms = spec.front() == Comb::SigmaY ? single_qubit_sigma_y_terms() : single_qubit_metric_terms();
  op.per_qubit.assign(spec.size(), terms);
  return op;
}

cplx comb_expectation(const std::vector<Comb>& spec, const PureState& psi) {
  if (static_cast<int>(spec.size()) != psi.n_qubits()) throw ArgumentError("comb spec length mismatch");
  for (Comb c : spec) {
    if (c != spec.front()) throw ArgumentError("mixed comb types are not supported");
  }
  const int n = psi.n_qubits();
  if (spec.front() == Comb::SigmaY) return antilinear_expectation(psi, PauliWord(n, kY));
  cplx acc = 0.0;
  const int total = 1 << (2 * n);
  for (int k = 0; k < total; ++k) {
    const PauliWord w = word_from_index(k, n);
    double g = 1.0;
    for (int mu : w) g *= kMetric[mu];
    if (g == 0.0) continue;
    const cplx t = antilinear_expectation(psi, w);
    acc += g * t * t;
  }
  return acc;
}

double linear_expectation(const LinearizedOperator& op, const PureState& psi) {
  const int n = psi.n_qubits();
  if (n != op.n_qubits) throw ArgumentError("linearized operator size mismatch");
  std::vector<double> e(std::size_t(1) << (2 * n));
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = pauli_expectation(psi, word_from_index(int(k), n)).real();
  double total = 0.0;
  std::array<int, 4> word{};
  std::function<void(int, double)> rec = [&](int q, double coeff) {
    if (q == n) {
      double v = coeff;
      for (int c = 0; c < op.copies; ++c) v *= e[word[c]];
      total += v;
      return;
    }
    const std::array<int, 4> saved = word;
    for (const auto& t : op.per_qubit[q]) {
      for (int c = 0; c < op.copies; ++c) word[c] = saved[c] * 4 + t.indices[c];
      rec(q + 1, coeff * t.coeff);
    }
    word = saved;
  };
  rec(0, 1.0);
  return total;
}

}  // namespace ekit
