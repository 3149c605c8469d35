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

#pragma once

#include <vector>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/spin_models.hpp"

namespace ekit {

// Ground state of the XY chain (Delta = 0) as a Gaussian state of 2N Majorana modes
// a_2i = P_i sigma_x^i, a_2i+1 = P_i sigma_y^i with P_i = prod_{j<i} sigma_z^j.
// Gamma is the real antisymmetric correlation matrix, <a_k a_l> = delta_kl + i Gamma_kl.
class FreeFermionChain {
 public:
  // Periodic chains with even N >= 4 use Bloch blocks unless dense is set.
  explicit FreeFermionChain(const ModelParams& p, bool dense = false);

  double energy() const { return energy_; }
  int parity() const { return parity_; }
  const RMat& gamma_matrix() const { return gamma_; }

  // Spin (S = sigma/2) correlators; i < j.
  double sxsx(int i, int j) const;
  double sysy(int i, int j) const;
  double szsz(int i, int j) const;
  double sz(int i) const;
  CorrelatorSet correlators(int i, int j) const;

 private:
  ModelParams p_;
  RMat gamma_;
  double energy_ = 0.0;
  int parity_ = 1;
};

// Quadratic form A with H = (i/4) a^T A a; `sector` selects the boundary twist on a periodic chain.
RMat majorana_form(const ModelParams& p, int sector);

// Real Pfaffian.
double pfaffian_real(const RMat& a);

struct CorrelatorTable {
  std::vector<double> gxx;  // index r = 0 .. N/2, correlators between sites 0 and r
  std::vector<double> gyy;
  std::vector<double> gzz;
  double mz = 0.0;
  double energy = 0.0;
  int parity = 1;
};

CorrelatorTable free_fermion_correlators(double gamma, double lambda, int N, double J = 1.0,
                                         Boundary boundary = Boundary::Periodic, int r_max = 0);
CorrelatorTable free_fermion_correlators(const ModelParams& p, int r_max = 0);

}  // namespace ekit
