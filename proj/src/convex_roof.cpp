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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/multipartite.hpp"
#include "entangle_kit/optimize.hpp"
#include "entangle_kit/parallel.hpp"

namespace ekit {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kWeightTol = 1e-14;

// Decomposition psi~_k = sum_j U_kj sqrt(lambda_j) e_j, stored as rows of a K x dim matrix.
struct RoofState {
  CMat vecs;                // K x dim, unnormalized members
  std::vector<double> val;  // p_k * E(psi_k)
};

class RoofObjective {
 public:
  RoofObjective(int n, const PureMeasure& measure, double sign, int power = 1)
      : n_(n), measure_(measure), sign_(sign), power_(power) {}

  double term(const CVec& v) const {
    const double p = v.squaredNorm();
    if (p < kWeightTol) return 0.0;
    const double m = measure_(PureState(n_, v, true));
    return sign_ * p * (power_ == 2 ? m * m : m);
  }

 private:
  int n_;
  const PureMeasure& measure_;
  double sign_;
  int power_;
};

struct RunResult {
  double value = std::numeric_limits<double>::infinity();
  CMat vecs;
  int iterations = 0;
};

// Givens sweeps over all member pairs until a sweep gains less than 1e-11. Returns the sweep count.
int sweep(CMat& vecs, const RoofObjective& obj, int max_iter, Rng& rng) {
  const auto K = static_cast<int>(vecs.rows());
  std::vector<double> val(K);
  for (int k = 0; k < K; ++k) val[k] = obj.term(vecs.row(k).transpose());
  double total = std::accumulate(val.begin(), val.end(), 0.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
  int sweeps = 0;
  for (; sweeps < max_iter; ++sweeps) {
    const double before = total;
    for (int k = 0; k < K; ++k) {
      for (int l = k + 1; l < K; ++l) {
        const CVec a = vecs.row(k).transpose();
        const CVec b = vecs.row(l).transpose();
        const double current = val[k] + val[l];
        auto rotated = [&](const RVec& x, CVec& ra, CVec& rb) {
          const double c = std::cos(x[0]), s = std::sin(x[0]);
          const cplx e = std::exp(cplx(0, x[1]));
          ra = c * a - e * s * b;
          rb = std::conj(e) * s * a + c * b;
        };
        auto f = [&](const RVec& x) {
          CVec ra, rb;
          rotated(x, ra, rb);
          return obj.term(ra) + obj.term(rb);
        };
        RVec x0(2);
        x0 << 0.0, ph(rng);
        const auto res = nelder_mead(f, x0, 0.3, 120, 1e-8);
        if (res.value < current - 1e-15) {
          CVec ra, rb;
          rotated(res.x, ra, rb);
          vecs.row(k) = ra.transpose();
          vecs.row(l) = rb.transpose();
          val[k] = obj.term(ra);
          val[l] = obj.term(rb);
        }
      }
    }
    total = std::accumulate(val.begin(), val.end(), 0.0);
    if (before - total < 1e-11) return sweeps + 1;
  }
  return sweeps;
}

double total_value(const CMat& vecs, const RoofObjective& obj) {
  double t = 0.0;
  for (Eigen::Index k = 0; k < vecs.rows(); ++k) t += obj.term(vecs.row(k).transpose());
  return t;
}

// One restart: a Haar-random isometry applied to the eigen-decomposition, warmed up on the squared
// measure (smooth where the measure has a modulus kink) and then refined on the measure itself.
RunResult run_once(const CMat& base, int K, const RoofObjective& obj, const RoofObjective& warm, int max_iter,
                   std::uint64_t seed) {
  const Eigen::Index r = base.rows();
  Rng rng(seed);
  RunResult out;
  out.vecs = haar_unitary(K, rng).leftCols(r) * base;
  out.iterations = sweep(out.vecs, warm, max_iter, rng);
  out.iterations += sweep(out.vecs, obj, max_iter, rng);
  out.value = total_value(out.vecs, obj);
  return out;
}

}  // namespace

RoofEstimate convex_roof_estimate(const DensityMatrix& rho, const PureMeasure& measure, const RoofOptions& opt) {
  if (opt.restarts < 1) throw ArgumentError("convex roof needs at least one restart");
  if (opt.max_iter < 1) throw ArgumentError("convex roof needs a positive iteration cap");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = es.eigenvalues().size() - 1; j >= 0; --j) {
    if (es.eigenvalues()[j] > kRankTol) support.push_back(j);
  }
  const int rank = static_cast<int>(support.size());
  const int K = opt.K == 0 ? std::max(1, 2 * rank) : opt.K;
  if (K < rank) throw ArgumentError("decomposition size K is below the rank of rho");

  // Rows: sqrt(lambda_j) e_j^T
  CMat base(rank, rho.dim());
  for (int j = 0; j < rank; ++j) {
    base.row(j) = std::sqrt(es.eigenvalues()[support[j]]) * es.eigenvectors().col(support[j]).transpose();
  }
  const double sign = opt.mode == RoofMode::Minimize ? 1.0 : -1.0;
  const RoofObjective obj(rho.n_qubits(), measure, sign);
  const RoofObjective warm(rho.n_qubits(), measure, sign, 2);

  RoofEstimate out;
  out.mode = opt.mode;
  out.restarts = opt.restarts;
  std::vector<RunResult> runs;
  if (rank == 1) {
    runs.push_back({obj.term(base.row(0).transpose()), base, 0});
  } else {
    runs = parallel_map<RunResult>(
        static_cast<std::size_t>(opt.restarts),
        [&](std::size_t r) { return run_once(base, K, obj, warm, opt.max_iter, stream_seed(opt.seed, r)); }, opt.threads);
  }
  const auto best = std::min_element(runs.begin(), runs.end(),
                                     [](const RunResult& a, const RunResult& b) { return a.value < b.value; });
  for (const auto& run : runs) out.iterations += run.iterations;
  out.value = sign * best->value;
  for (Eigen::Index k = 0; k < best->vecs.rows(); ++k) {
    const CVec v = best->vecs.row(k).transpose();
    const double p = v.squaredNorm();
    if (p < kWeightTol) continue;
    out.decomposition.push_back({p, PureState(rho.n_qubits(), v, true)});
  }
  return out;
}

std::vector<GhzWRow> ghz_w_scan(const std::vector<double>& p_grid, int K, int restarts, std::uint64_t seed,
                                int threads) {
  const PureState ghz = ghz_state(3);
  const PureState w = w_state(3);
  const PureMeasure pair_c = [](const PureState& psi) { return pairwise_concurrence(psi, 0, 1); };
  const PureMeasure tau3 = [](const PureState& psi) { return three_tangle(psi); };
  return parallel_map<GhzWRow>(
      p_grid.size(),
      [&](std::size_t idx) {
        const double p = p_grid[idx];
        if (p < 0.0 || p > 1.0) throw ArgumentError("mixing weight must lie in [0, 1]");
        const CMat m = p * ghz.amplitudes() * ghz.amplitudes().adjoint() +
                       (1.0 - p) * w.amplitudes() * w.amplitudes().adjoint();
        const DensityMatrix rho = DensityMatrix::trusted(3, m);
        GhzWRow row;
        row.p = p;
        row.tau1 = one_tangle(partial_trace(rho, {0}));
        row.c_reduced = concurrence_mixed(partial_trace(rho, {0, 1})).C;
        RoofOptions opt;
        opt.K = K;
        opt.restarts = restarts;
        opt.seed = stream_seed(seed, idx);
        row.c_roof = convex_roof_estimate(rho, pair_c, opt).value;
        opt.seed = stream_seed(seed + 1, idx);
        row.tau3_roof = convex_roof_estimate(rho, tau3, opt).value;
        return row;
      },
      threads);
}

}  // namespace ekit
