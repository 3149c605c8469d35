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

#include <doctest.h>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/multipartite.hpp"
#include "support.hpp"

using namespace ekit;

namespace {

PureState from_labels(int n, const std::vector<std::pair<std::string, cplx>>& terms) {
  CVec v = CVec::Zero(Eigen::Index(1) << n);
  for (const auto& [label, a] : terms) v[std::stoll(label, nullptr, 2)] += a;
  return PureState(n, v, true);
}

// Applies one 2x2 matrix per qubit without renormalizing.
CVec apply_local(const CVec& amps, int n, const std::vector<Eigen::Matrix2cd>& ops) {
  CVec a = amps;
  for (int q = 0; q < n; ++q) a = apply_single_qubit(a, n, q, ops[q]);
  return a;
}

Eigen::Matrix2cd random_sl2(Rng& rng) {
  Eigen::Matrix2cd m = random_gaussian_vector(4, rng).reshaped(2, 2);
  return m / std::sqrt(m.determinant());
}

PureState product_state(int n, std::uint64_t seed) {
  PureState out = random_state(1, seed);
  for (int q = 1; q < n; ++q) out = tensor_product(out, random_state(1, seed * 31 + q));
  return out;
}

// Largest overlap with a symmetric product state phi^{x n}, scanned on a Bloch-sphere grid.
double symmetric_grid_overlap(const PureState& psi, int steps) {
  const int n = psi.n_qubits();
  double best = 0.0;
  for (int a = 0; a <= steps; ++a) {
    const double th = M_PI * a / steps;
    for (int b = 0; b < 2 * steps; ++b) {
      const double ph = M_PI * b / steps;
      const cplx c0 = std::cos(th / 2), c1 = std::exp(cplx(0, ph)) * std::sin(th / 2);
      cplx ov = 0.0;
      for (Eigen::Index k = 0; k < psi.dim(); ++k) {
        cplx w = psi[k];
        for (int q = 0; q < n; ++q) w *= std::conj(((k >> (n - 1 - q)) & 1) ? c1 : c0);
        ov += w;
      }
      best = std::max(best, std::abs(ov));
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("multipartite") {
  TEST_CASE("three-tangle reference values") {
    CHECK(three_tangle(ghz_state(3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(three_tangle(w_state(3))) < 1e-12);
    CHECK(std::abs(three_tangle(product_state(3, 4))) < 1e-12);
    CHECK(std::abs(three_tangle(tensor_product(bell_phi_plus(), random_state(1, 3)))) < 1e-12);
    CHECK_THROWS_AS(three_tangle(random_state(4, 1)), ArgumentError);
  }

  TEST_CASE("three-tangle equals the residual tangle") {
    for (std::uint64_t s = 1; s <= 30; ++s) {
      const PureState psi = random_state(3, s);
      const double t3 = three_tangle(psi);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(t3 - residual_tangle(psi, i)) < 1e-10);
    }
  }

  TEST_CASE("tangles under local unitaries and SL(2) maps") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      const PureState psi = random_state(3, 50 + trial);
      std::vector<Eigen::Matrix2cd> u(3), sl(3);
      for (int q = 0; q < 3; ++q) {
        u[q] = haar_unitary(2, rng);
        sl[q] = random_sl2(rng);
      }
      const PureState rot(3, apply_local(psi.amplitudes(), 3, u), true);
      CHECK(std::abs(three_tangle(rot) - three_tangle(psi)) < 1e-10);
      // tau3 has degree four in the amplitudes.
      const CVec m = apply_local(psi.amplitudes(), 3, sl);
      const double scale = std::pow(m.squaredNorm(), 2);
      CHECK(std::abs(three_tangle(PureState(3, m, true)) * scale - three_tangle(psi)) < 1e-8 * std::max(1.0, scale));
    }
  }

  TEST_CASE("n-tangle") {
    for (int n : {2, 4, 6}) CHECK(n_tangle(ghz_state(n)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(n_tangle(w_state(4))) < 1e-12);
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const PureState psi = random_state(2, s);
      CHECK(std::abs(n_tangle(psi) - std::pow(concurrence_pure(psi), 2)) < 1e-12);
    }
  }

  TEST_CASE("four-qubit filters") {
    const PureState ghz = ghz_state(4);
    const auto g = filters_F4(ghz).moduli();
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g[2] == doctest::Approx(0.5).epsilon(1e-10));
    const auto p4 = filters_F4(from_labels(4, {{"1111", 1}, {"1100", 1}, {"0010", 1}, {"0001", 1}})).moduli();
    CHECK(std::abs(p4[0]) < 1e-12);
    CHECK(p4[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(p4[2] == doctest::Approx(1.0).epsilon(1e-10));
    const auto p5 = filters_F4(
                        from_labels(4, {{"1111", std::sqrt(2.0)}, {"1000", 1}, {"0100", 1}, {"0010", 1}, {"0001", 1}}))
                        .moduli();
    CHECK(p5[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
    CHECK(std::abs(p5[1]) < 1e-12);
    CHECK(std::abs(p5[2]) < 1e-12);
    for (double f : filters_F4(w_state(4)).moduli()) CHECK(std::abs(f) < 1e-12);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      for (double f : filters_F4(product_state(4, s)).moduli()) CHECK(std::abs(f) < 1e-12);
      for (double f : filters_F4(tensor_product(bell_phi_plus(), product_state(2, s))).moduli()) CHECK(std::abs(f) < 1e-12);
    }
  }

  TEST_CASE("filters are invariant under local unitaries and covariant under SL(2)") {
    Rng rng(5);
    const int degree[3] = {6, 8, 12};
    for (int trial = 0; trial < 5; ++trial) {
      const PureState psi = random_state(4, 70 + trial);
      const auto base = filters_F4(psi).moduli();
      std::vector<Eigen::Matrix2cd> u(4), sl(4);
      for (int q = 0; q < 4; ++q) {
        u[q] = haar_unitary(2, rng);
        sl[q] = random_sl2(rng);
      }
      const auto rot = filters_F4(PureState(4, apply_local(psi.amplitudes(), 4, u), true)).moduli();
      const CVec m = apply_local(psi.amplitudes(), 4, sl);
      const auto slv = filters_F4(PureState(4, m, true)).moduli();
      for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(rot[k] - base[k]) < 1e-10);
        const double scale = std::pow(m.norm(), degree[k]);
        CHECK(std::abs(slv[k] * scale - base[k]) < 1e-7 * std::max(1.0, base[k]));
      }
    }
  }

  TEST_CASE("geometric measure") {
    CHECK(geometric_measure(product_state(3, 2), 4) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(geometric_measure(bell_phi_plus(), 4) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(geometric_measure(ghz_state(3), 8) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(geometric_measure(w_state(3), 8) == doctest::Approx(std::log2(9.0 / 4.0)).epsilon(1e-8));
    // Symmetric states: compare with a grid over symmetric products.
    for (const PureState& psi : {ghz_state(3), w_state(3), w_state(4)}) {
      const double grid = symmetric_grid_overlap(psi, 120);
      const double g = geometric_measure(psi, 8);
      CHECK(g <= -std::log2(grid * grid) + 1e-10);
      CHECK(g >= -std::log2(grid * grid) - 1e-3);
    }
    // Two qubits: the best overlap is the largest Schmidt coefficient.
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const PureState psi = random_state(2, s);
      const double s0 = schmidt_decompose(psi, {0}).coefficients[0];
      CHECK(geometric_measure(psi, 4, s) == doctest::Approx(-std::log2(s0 * s0)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(geometric_measure(ghz_state(3), 0), ArgumentError);
  }

  TEST_CASE("purity distribution") {
    const auto prod = purity_distribution(product_state(4, 9));
    CHECK(prod.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prod.variance < 1e-12);
    CHECK(prod.q_measure < 1e-12);
    const auto ghz = purity_distribution(ghz_state(4));
    // Four single-qubit cuts and three balanced cuts.
    CHECK(ghz.values.size() == 7);
    for (const auto& e : ghz.values) CHECK(e.purity == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ghz.q_measure == doctest::Approx(1.0).epsilon(1e-12));
    const auto rnd = purity_distribution(random_state(6, 4));
    for (const auto& e : rnd.values) {
      CHECK(e.purity <= 1.0 + 1e-12);
      CHECK(e.purity >= std::pow(2.0, -double(e.part.size())) - 1e-12);
    }
  }

  TEST_CASE("localizable entanglement") {
    const auto g = localizable_entanglement(ghz_state(3), 0, 2, 4);
    CHECK(g.E_loc == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(g.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
    const auto w = localizable_entanglement(w_state(3), 0, 1, 4);
    CHECK(w.E_loc >= pairwise_concurrence(w_state(3), 0, 1) - 1e-9);
    CHECK(w.E_loc <= 1.0);
    const auto p = localizable_entanglement(product_state(4, 3), 1, 3, 3);
    CHECK(p.E_loc < 1e-8);
    CHECK(p.lower_bound < 1e-10);
    // Random states: the optimum is bounded below by the correlation bound.
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto r = localizable_entanglement(random_state(4, s), 0, 3, 6, s);
      CHECK(r.E_loc >= r.lower_bound - 1e-6);
    }
    CHECK_THROWS_AS(localizable_entanglement(ghz_state(3), 1, 1, 2), ArgumentError);
  }

  TEST_CASE("antilinear combs and their linear form") {
    CHECK(std::abs(comb_expectation({Comb::SigmaY, Comb::SigmaY}, bell_phi_plus())) == doctest::Approx(1.0));
    CHECK(std::abs(comb_expectation({Comb::SigmaY, Comb::SigmaY}, product_state(2, 2))) < 1e-12);
    // Three times the three-tangle.
  CHECK(std::abs(comb_expectation({Comb::Metric, Comb::Metric, Comb::Metric}, ghz_state(3))) ==
        doctest::Approx(3.0).epsilon(1e-10));
    const auto lin_y = antilinear_to_linear({Comb::SigmaY, Comb::SigmaY});
    const auto lin_m = antilinear_to_linear({Comb::Metric, Comb::Metric});
    CHECK(linear_expectation(lin_y, bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const PureState psi = random_state(2, s);
      CHECK(std::abs(linear_expectation(lin_y, psi) - std::norm(comb_expectation({Comb::SigmaY, Comb::SigmaY}, psi))) <
            1e-10);
      CHECK(std::abs(linear_expectation(lin_m, psi) - std::norm(comb_expectation({Comb::Metric, Comb::Metric}, psi))) <
            1e-10);
    }
    const auto lin3 = antilinear_to_linear({Comb::Metric, Comb::Metric, Comb::Metric});
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const PureState psi = random_state(3, s);
      CHECK(std::abs(linear_expectation(lin3, psi) -
                     std::norm(comb_expectation({Comb::Metric, Comb::Metric, Comb::Metric}, psi))) < 1e-10);
    }
    CHECK_THROWS_AS(antilinear_to_linear({Comb::SigmaY, Comb::Metric}), ArgumentError);
    CHECK(minkowski_metric()(0, 0) == 1.0);
  }
}
