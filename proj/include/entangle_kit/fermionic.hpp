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

#include <cstdint>
#include <functional>
#include <vector>

#include "entangle_kit/state.hpp"

namespace ekit {

// Pfaffian of an even-dimensional antisymmetric matrix (Parlett-Reid elimination).
cplx pfaffian(const CMat& omega);

// Two-fermion amplitude |omega> = sum_{i,j} omega_ij f_i^+ f_j^+ |0>, tr(omega^+ omega) = 1/2.
void check_two_fermion_amplitude(const CMat& omega);

// 8 |pf(omega)| for a 4x4 amplitude.
double fermionic_concurrence(const CMat& omega);
// |<omega~|omega>| with the dual omega~_ij = (1/2) sum eps^{ijkl} omega*_kl.
double fermionic_concurrence_dual(const CMat& omega);

// Basis order {12, 13, 14, 23, 24, 34}.
Eigen::Matrix<double, 6, 6> fermion_conjugation_matrix();
// Coefficient vector of omega in the 6-dimensional basis.
CVec two_fermion_vector(const CMat& omega);
CMat two_fermion_matrix(const CVec& v);

double fermionic_concurrence_mixed(const CMat& rho);

struct SlaterNormalForm {
  std::vector<cplx> z;  // pair amplitudes, |z| non-increasing
  int rank = 0;
  CMat U;               // U omega U^T is block diagonal
};

SlaterNormalForm slater_normal_form(const CMat& omega);

// Dense antisymmetric M-index tensor over D modes, row-major with index i_1 most significant.
struct FermionTensor {
  int modes = 0;
  int particles = 0;
  std::vector<cplx> data;

  static FermionTensor slater(int modes, const std::vector<int>& occupied);
  cplx& at(const std::vector<int>& idx);
  cplx at(const std::vector<int>& idx) const;
};

FermionTensor operator+(const FermionTensor& a, const FermionTensor& b);
FermionTensor operator*(cplx s, const FermionTensor& a);

bool slater_rank_one_test(const FermionTensor& psi, int trials, std::uint64_t seed = 1);

struct BosonSchmidt {
  std::vector<double> coefficients;  // non-increasing
  std::vector<int> multiplicities;   // per distinct coefficient value
  int reduced_rank = 0;
  bool entangled = false;
};

// Symmetric two-boson amplitude, normalized as 2 tr(omega^+ omega) = 1.
BosonSchmidt boson_schmidt(const CMat& omega);

// Fock state over `modes` fermionic modes; occupation of mode k is bit (modes - 1 - k).
struct FockState {
  int modes = 0;
  CVec amplitudes;

  int particle_number() const;  // throws ArgumentError when not fixed
};

// Measure on a bipartite amplitude matrix (rows: side A, columns: side B), normalized.
using BipartiteMeasure = std::function<double(const CMat&)>;
double entropy_measure(const CMat& amplitudes);

double entanglement_of_particles(const FockState& psi, const Subsystem& modes_a,
                                 const BipartiteMeasure& measure = entropy_measure);

}  // namespace ekit
