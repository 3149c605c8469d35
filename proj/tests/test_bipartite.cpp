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
#include "entangle_kit/spin_models.hpp"
#include "support.hpp"

using namespace ekit;

namespace {

CMat singlet_projector() {
  CVec s = CVec::Zero(4);
  s[1] = 1.0 / std::sqrt(2.0);
  s[2] = -1.0 / std::sqrt(2.0);
  return s * s.adjoint();
}

DensityMatrix werner(double p) {
  return DensityMatrix(2, p * singlet_projector() + (1.0 - p) * CMat::Identity(4, 4) / 4.0);
}

DensityMatrix rotate_locally(const DensityMatrix& rho, std::uint64_t seed) {
  Rng rng(seed);
  CMat u = CMat::Identity(1, 1);
  for (int q = 0; q < rho.n_qubits(); ++q) {
    const CMat h = haar_unitary(2, rng);
    CMat next(u.rows() * 2, u.cols() * 2);
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = u(r, c) * h;
    u = next;
  }
  CMat m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(rho.n_qubits(), m);
}

}  // namespace

TEST_SUITE("bipartite") {
  TEST_CASE("Schmidt decomposition") {
    const PureState prod = tensor_product(random_state(1, 1), random_state(1, 2));
    const auto sp = schmidt_decompose(prod, {0});
    CHECK(sp.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sp.coefficients[1]) < 1e-7);
    const auto sb = schmidt_decompose(bell_phi_plus(), {0});
    CHECK(sb.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sb.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const PureState psi = random_state(4, 7);
    const auto sd = schmidt_decompose(psi, {0, 1});
    RVec ev = hermitian_eigenvalues(partial_trace(psi, {0, 1}).matrix());
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(sd.coefficients[k] * sd.coefficients[k] - ev[k]) < 1e-12);
    // Reconstruction: psi = sum_k s_k |a_k> |b_k>
    CVec rebuilt = CVec::Zero(16);
    for (int k = 0; k < 4; ++k) {
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rebuilt[4 * a + b] += sd.coefficients[k] * sd.left(a, k) * sd.right(b, k);
    }
    CHECK((rebuilt - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("entropy and one-tangle") {
    CHECK(entanglement_entropy(PureState::basis(3, 5), {0}) == doctest::Approx(0.0));
    CHECK(entanglement_entropy(bell_phi_plus(), {0}) == doctest::Approx(1.0).epsilon(1e-13));
    for (int n = 2; n <= 6; ++n) {
      CHECK(entanglement_entropy(ghz_state(n), {0}) == doctest::Approx(1.0).epsilon(1e-12));
      if (n > 3) CHECK(entanglement_entropy(ghz_state(n), {1, 3}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CMat pure0 = CMat::Zero(2, 2);
    pure0(0, 0) = 1.0;
    CHECK(one_tangle(DensityMatrix(1, pure0)) == doctest::Approx(0.0));
    CHECK(one_tangle(DensityMatrix(1, 0.5 * CMat::Identity(2, 2))) == doctest::Approx(1.0));
    const DensityMatrix half = partial_trace(bell_phi_plus(), {0});
    CHECK(one_tangle(half) == doctest::Approx(1.0));
    // S = h((1 + sqrt(1 - tau1)) / 2) for pure two-qubit states.
    for (std::uint64_t s = 1; s <= 30; ++s) {
      const PureState psi = random_state(2, s);
      const double t1 = one_tangle(partial_trace(psi, {0}));
      CHECK(std::abs(entanglement_entropy(psi, {0}) - binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - t1)))) < 1e-10);
    }
  }

  TEST_CASE("pure-state concurrence") {
    CHECK(concurrence_pure(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(concurrence_pure(PureState::basis(2, 1)) == doctest::Approx(0.0));
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      CVec v = CVec::Zero(4);
      v[0] = std::sqrt(p);
      v[3] = std::sqrt(1 - p);
      CHECK(concurrence_pure(PureState(2, v)) == doctest::Approx(2.0 * std::sqrt(p * (1 - p))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(concurrence_pure(random_state(3, 1)), ArgumentError);
  }

  TEST_CASE("mixed-state concurrence against the square-root route") {
    CMat sep = CMat::Zero(4, 4);
    sep(0, 0) = sep(3, 3) = 0.5;
    CHECK(concurrence_mixed(DensityMatrix(2, sep)).C == doctest::Approx(0.0));
    const auto bell = concurrence_mixed(DensityMatrix::from_pure(bell_phi_plus()));
    CHECK(bell.C == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.EoF == doctest::Approx(1.0).epsilon(1e-12));
    for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.05) {
      CHECK(std::abs(concurrence_mixed(werner(p)).C - std::max(0.0, (3 * p - 1) / 2)) < 1e-10);
    }
    for (std::uint64_t s = 1; s <= 60; ++s) {
      const DensityMatrix rho = testing::random_density(2, s, 1 + int(s % 4));
      // The square-root route loses half the digits on rank-deficient input.
      const double tol = (s % 4 == 3) ? 1e-9 : 1e-7;
      CHECK(std::abs(concurrence_mixed(rho).C - testing::wootters_sqrt_route(rho.matrix())) < tol);
    }
    CHECK_THROWS_AS(concurrence_mixed(DensityMatrix(3, CMat::Identity(8, 8) / 8.0)), ArgumentError);
  }

  TEST_CASE("entanglement of formation") {
    CHECK(eof_from_concurrence(0.0) == doctest::Approx(0.0));
    CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0));
    // Pure states: EoF equals the entanglement entropy.
    for (std::uint64_t s = 1; s <= 20; ++s) {
      const PureState psi = random_state(2, s);
      CHECK(std::abs(eof_from_concurrence(concurrence_pure(psi)) - entanglement_entropy(psi, {0})) < 1e-10);
    }
  }

  TEST_CASE("local unitary invariance") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const DensityMatrix rho = testing::random_density(2, 40 + s, 2);
      const DensityMatrix rot = rotate_locally(rho, 90 + s);
      CHECK(std::abs(concurrence_mixed(rho).C - concurrence_mixed(rot).C) < 1e-10);
      CHECK(std::abs(negativity_suite(rho, {0}).N - negativity_suite(rot, {0}).N) < 1e-10);
      const PureState psi = random_state(3, s);
      const DensityMatrix prot = rotate_locally(DensityMatrix::from_pure(psi), 7 * s);
      Eigen::SelfAdjointEigenSolver<CMat> es(prot.matrix());
      const PureState back(3, es.eigenvectors().col(7), true);
      CHECK(std::abs(entanglement_entropy(psi, {0}) - entanglement_entropy(back, {0})) < 1e-10);
    }
  }

  TEST_CASE("pairwise concurrence and monogamy") {
    const PureState w = w_state(3);
    CHECK(pairwise_concurrence(w, 0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(pairwise_concurrence(ghz_state(3), 0, 1) == doctest::Approx(0.0));
    for (std::uint64_t s = 1; s <= 200; ++s) {
      const int n = 2 + int(s % 5);
      const PureState psi = random_state(n, 300 + s);
      for (int i = 0; i < n; ++i) {
        double sum = 0;
        for (int j = 0; j < n; ++j)
          if (j != i) sum += std::pow(pairwise_concurrence(psi, i, j), 2);
        CHECK(sum <= one_tangle(partial_trace(psi, {i})) + 1e-9);
      }
    }
  }

  TEST_CASE("two-site state from correlators") {
    const auto singlet = two_site_from_correlators({-0.25, -0.25, -0.25, 0.0});
    CHECK(singlet.C == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(singlet.CI > singlet.CII);
    CHECK(std::abs(testing::wootters_sqrt_route(singlet.rho.matrix()) - 1.0) < 1e-9);
    const auto up = two_site_from_correlators({0.0, 0.0, 0.25, 0.5});
    CHECK(up.C == doctest::Approx(0.0));
    CHECK_THROWS_AS(two_site_from_correlators({0.5, 0.5, 0.25, 0.0}), ValidationError);

    // XX ground state: correlator route equals the partial-trace route.
    for (double h : {0.1, 0.3}) {
      ModelParams p;
      p.gamma = 0.0;
      p.h = h;
      p.N = 8;
      const PureState gs = ground_state(p).lowest();
      for (int r = 1; r <= 4; ++r) {
        const auto t = two_site_from_correlators(ed_correlators(gs, 0, r));
        CHECK(std::abs(t.C - concurrence_mixed(partial_trace(gs, {0, r})).C) < 1e-10);
        CHECK((t.rho.matrix() - partial_trace(gs, {0, r}).matrix()).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }

  TEST_CASE("negativity and PPT") {
    const auto b = negativity_suite(DensityMatrix::from_pure(bell_phi_plus()), {0});
    CHECK_FALSE(b.ppt);
    CHECK(b.N == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.EN == doctest::Approx(1.0).epsilon(1e-12));
    CMat sep = CMat::Zero(4, 4);
    sep(0, 0) = sep(3, 3) = 0.5;
    const auto s = negativity_suite(DensityMatrix(2, sep), {0});
    CHECK(s.ppt);
    CHECK(s.N == doctest::Approx(0.0));
    CHECK(negativity_suite(werner(1.0 / 3.0), {0}).N < 1e-12);
    CHECK(negativity_suite(werner(0.34), {0}).N > 0.0);
    // Eigenvalue oracle: the negativity is minus the smallest partial-transpose eigenvalue for two qubits.
    for (double p : {0.5, 0.8}) {
      const CMat pt = partial_transpose(werner(p).matrix(), 2, {0});
      const double lmin = hermitian_eigenvalues(pt).minCoeff();
      CHECK(negativity_suite(werner(p), {0}).N == doctest::Approx(-lmin).epsilon(1e-12));
    }
  }

  TEST_CASE("witness evaluation") {
    const CVec phi = bell_phi_plus().amplitudes();
    const CMat w = phi * phi.adjoint() - 0.5 * CMat::Identity(4, 4);
    const auto a = witness_eval(DensityMatrix::from_pure(bell_phi_plus()), w);
    CHECK(a.value == doctest::Approx(0.5));
    CHECK(a.flagged);
    const auto m = witness_eval(DensityMatrix(2, CMat::Identity(4, 4) / 4.0), w);
    CHECK(m.value == doctest::Approx(-0.25));
    CHECK_FALSE(m.flagged);
    const auto z = witness_eval(DensityMatrix::from_pure(PureState::basis(2, 0)), w);
    CHECK(z.value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_FALSE(z.flagged);
    CMat nh = w;
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(witness_eval(DensityMatrix::from_pure(bell_phi_plus()), nh), ArgumentError);
  }
}
