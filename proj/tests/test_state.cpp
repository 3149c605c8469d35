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

#include <unsupported/Eigen/KroneckerProduct>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"
#include "entangle_kit/state.hpp"
#include "support.hpp"

using namespace ekit;

namespace {

// Dense Pauli string by Kronecker products, qubit 0 leftmost.
CMat pauli_string(const PauliWord& w) {
  CMat m = CMat::Identity(1, 1);
  for (int k : w) m = Eigen::kroneckerProduct(m, CMat(pauli(k))).eval();
  return m;
}

// Reduced state by summing over explicit basis labels.
CMat brute_partial_trace(const CMat& rho, int n, const Subsystem& keep) {
  const int nk = static_cast<int>(keep.size());
  CMat out = CMat::Zero(Eigen::Index(1) << nk, Eigen::Index(1) << nk);
  auto bit = [n](Eigen::Index b, int q) { return (b >> (n - 1 - q)) & 1; };
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      bool same = true;
      for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(r, q) != bit(c, q)) same = false;
      }
      if (!same) continue;
      Eigen::Index rr = 0, cc = 0;
      for (int q : keep) {
        rr = (rr << 1) | bit(r, q);
        cc = (cc << 1) | bit(c, q);
      }
      out(rr, cc) += rho(r, c);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("state") {
  TEST_CASE("construction validates normalization and size") {
    CVec v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(PureState(1, v), ValidationError);
    CHECK(PureState(1, v, true).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(PureState(2, v, true), ArgumentError);
    CHECK_THROWS_AS(PureState::basis(17, 0), CapacityError);
    CHECK_THROWS_AS(PureState::basis(0, 0), ArgumentError);
  }

  TEST_CASE("density matrix validation") {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    CHECK_NOTHROW(DensityMatrix(1, m));
    CMat bad = m;
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix(1, bad), ValidationError);  // not Hermitian
    CMat neg = m;
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityMatrix(1, neg), ValidationError);
    CHECK_THROWS_AS(DensityMatrix(1, 2.0 * m), ValidationError);
  }

  TEST_CASE("tensor products") {
    const PureState z = PureState::basis(1, 0);
    const PureState zz = tensor_product(z, z);
    CHECK(std::abs(zz[0] - 1.0) < 1e-15);
    CVec plus(2);
    plus << 1.0, 1.0;
    const PureState pp = tensor_product(PureState(1, plus, true), PureState(1, plus, true));
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::abs(pp[k] - 0.5) < 1e-15);
    const PureState r = tensor_product(random_state(2, 3), random_state(3, 4));
    CHECK(r.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.n_qubits() == 5);
  }

  TEST_CASE("partial trace against explicit index sums") {
    const PureState psi = random_state(4, 11);
    const CMat rho = psi.amplitudes() * psi.amplitudes().adjoint();
    for (const Subsystem& keep : {Subsystem{0}, Subsystem{2}, Subsystem{1, 3}, Subsystem{0, 2, 3}}) {
      const CMat oracle = brute_partial_trace(rho, 4, keep);
      CHECK((partial_trace(psi, keep).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((partial_trace(DensityMatrix::from_pure(psi), keep).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-13);
    }
    const PureState prod = tensor_product(PureState::basis(1, 0), PureState::basis(1, 1));
    CHECK(std::abs(partial_trace(prod, {0}).matrix()(0, 0) - 1.0) < 1e-15);
    const CMat half = partial_trace(bell_phi_plus(), {0}).matrix();
    CHECK((half - 0.5 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("complementary reductions of a pure state share their spectrum") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const PureState psi = random_state(5, seed);
      RVec a = hermitian_eigenvalues(partial_trace(psi, {0, 3}).matrix());
      RVec b = hermitian_eigenvalues(partial_trace(psi, {1, 2, 4}).matrix());
      std::vector<double> sa(a.data(), a.data() + a.size()), sb(b.data(), b.data() + b.size());
      std::sort(sa.rbegin(), sa.rend());
      std::sort(sb.rbegin(), sb.rend());
      for (std::size_t k = 0; k < sa.size(); ++k) CHECK(std::abs(sa[k] - sb[k]) < 1e-10);
      for (std::size_t k = sa.size(); k < sb.size(); ++k) CHECK(std::abs(sb[k]) < 1e-10);
    }
  }

  TEST_CASE("Pauli expectations") {
    CHECK(std::abs(pauli_expectation(PureState::basis(1, 0), {3}) - 1.0) < 1e-15);
    CHECK(std::abs(pauli_expectation(bell_phi_plus(), {1, 1}) - 1.0) < 1e-15);
    const PureState psi = random_state(3, 5);
    CHECK(std::abs(pauli_expectation(psi, {0, 0, 0}) - 1.0) < 1e-12);
    for (const PauliWord& w : {PauliWord{1, 2, 3}, PauliWord{2, 0, 2}, PauliWord{3, 3, 1}}) {
      const cplx direct = psi.amplitudes().dot(pauli_string(w) * psi.amplitudes());
      const cplx v = pauli_expectation(psi, w);
      CHECK(std::abs(v - direct) < 1e-12);
      CHECK(std::abs(v.imag()) < 1e-12);
      CHECK(std::abs(pauli_expectation(DensityMatrix::from_pure(psi), w) - direct) < 1e-12);
    }
  }

  TEST_CASE("apply_pauli_word matches Kronecker products") {
    const PureState psi = random_state(3, 8);
    const PauliWord w{2, 1, 3};
    const CVec oracle = pauli_string(w) * psi.amplitudes();
    CHECK((apply_pauli_word(psi.amplitudes(), 3, w) - oracle).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("antilinear expectations") {
    for (std::uint64_t s = 1; s <= 50; ++s) {
      const PureState one = random_state(1, s);
      CHECK(std::abs(antilinear_expectation(one, {2})) < 1e-14);
      cplx comb = 0.0;
      const double g[4] = {-1, 1, 0, 1};
      for (int mu = 0; mu < 4; ++mu) comb += g[mu] * std::pow(antilinear_expectation(one, {mu}), 2);
      CHECK(std::abs(comb) < 1e-13);
    }
    CHECK(std::abs(antilinear_expectation(bell_phi_plus(), {2, 2})) == doctest::Approx(1.0).epsilon(1e-14));
    // Product states factorize.
    const PureState a = random_state(2, 21), b = random_state(1, 22);
    const PureState ab = tensor_product(a, b);
    for (const PauliWord& w : {PauliWord{2, 2, 1}, PauliWord{1, 3, 0}, PauliWord{0, 2, 3}}) {
      const cplx lhs = antilinear_expectation(ab, w);
      const cplx rhs = antilinear_expectation(a, {w[0], w[1]}) * antilinear_expectation(b, {w[2]});
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("random states are deterministic and typical") {
    const PureState a = random_state(1, 9), b = random_state(1, 9);
    CHECK(a.amplitudes() == b.amplitudes());
    CHECK(a.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 400; ++s) {
      const CMat r = partial_trace(random_state(3, 100 + s), {0}).matrix();
      mean += 4.0 * (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real() / 400.0;
    }
    CHECK(mean > 0.0);
    CHECK(mean < 1.0);
  }

  TEST_CASE("subsystem validation") {
    CHECK_THROWS_AS(check_subsystem({0, 0}, 3, false), ArgumentError);
    CHECK_THROWS_AS(check_subsystem({3}, 3, false), ArgumentError);
    CHECK_THROWS_AS(check_subsystem({0, 1, 2}, 3, true), ArgumentError);
    CHECK(complement({1}, 3) == Subsystem{0, 2});
  }
}
