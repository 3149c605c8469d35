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
#include "entangle_kit/multipartite.hpp"
#include "support.hpp"

using namespace ekit;

namespace {

const PureMeasure kPairC = [](const PureState& psi) { return concurrence_pure(psi); };

}  // namespace

TEST_SUITE("roof") {
  TEST_CASE("pure input returns the pure measure") {
    const PureState psi = random_state(2, 12);
    RoofOptions opt;
    opt.restarts = 2;
    const auto r = convex_roof_estimate(DensityMatrix::from_pure(psi), kPairC, opt);
    CHECK(r.value == doctest::Approx(concurrence_pure(psi)).epsilon(1e-10));
    CHECK(r.decomposition.size() == 1);
  }

  TEST_CASE("separable mixtures have zero roof") {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    RoofOptions opt;
    opt.K = 4;
    opt.restarts = 4;
    CHECK(convex_roof_estimate(DensityMatrix(2, m), kPairC, opt).value < 1e-6);
    // Identity: optimal decomposition into product states exists.
    CHECK(convex_roof_estimate(DensityMatrix(2, CMat::Identity(4, 4) / 4.0), kPairC, opt).value < 1e-6);
  }

  TEST_CASE("two-qubit roof of concurrence matches the closed form") {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const DensityMatrix rho = testing::random_density(2, 500 + s, 2);
      RoofOptions opt;
      opt.K = 4;
      opt.restarts = 4;
      opt.seed = s;
      const auto r = convex_roof_estimate(rho, kPairC, opt);
      CHECK(r.value == doctest::Approx(concurrence_mixed(rho).C).epsilon(1e-5));
      // The decomposition reproduces rho.
      CMat back = CMat::Zero(4, 4);
      double avg = 0.0;
      for (const auto& t : r.decomposition) {
        back += t.p * t.psi.amplitudes() * t.psi.amplitudes().adjoint();
        avg += t.p * concurrence_pure(t.psi);
      }
      CHECK((back - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(avg == doctest::Approx(r.value).epsilon(1e-10));
    }
  }

  TEST_CASE("maximization bounds the minimization") {
    const DensityMatrix rho = testing::random_density(2, 77, 2);
    RoofOptions opt;
    opt.K = 4;
    opt.restarts = 3;
    const double lo = convex_roof_estimate(rho, kPairC, opt).value;
    opt.mode = RoofMode::Maximize;
    const double hi = convex_roof_estimate(rho, kPairC, opt).value;
    CHECK(hi >= lo);
    CHECK(hi <= 1.0 + 1e-12);
  }

  TEST_CASE("argument checks") {
    const DensityMatrix rho = testing::random_density(2, 3, 3);
    RoofOptions opt;
    opt.K = 2;
    CHECK_THROWS_AS(convex_roof_estimate(rho, kPairC, opt), ArgumentError);
    opt.K = 4;
    opt.restarts = 0;
    CHECK_THROWS_AS(convex_roof_estimate(rho, kPairC, opt), ArgumentError);
  }

  TEST_CASE("GHZ and W mixtures at the endpoints") {
    const auto rows = ghz_w_scan({0.0, 1.0}, 4, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].c_roof == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(std::abs(rows[0].tau3_roof) < 1e-10);
    CHECK(rows[0].tau1 == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(std::abs(rows[1].c_roof) < 1e-10);
    CHECK(rows[1].tau3_roof == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rows[1].tau1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[0].c_reduced == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(ghz_w_scan({1.5}, 4, 1), ArgumentError);
  }
}
