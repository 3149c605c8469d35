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

#include "entangle_kit/state.hpp"

namespace ekit {

struct SchmidtData {
  RVec coefficients;  // non-increasing, non-negative
  CMat left;          // columns: orthonormal states on the part
  CMat right;         // columns: orthonormal states on the complement
};

SchmidtData schmidt_decompose(const PureState& psi, const Subsystem& part);

// Von Neumann entropy of the reduced state on `part`, in bits.
double entanglement_entropy(const PureState& psi, const Subsystem& part);

// tau_1 = 4 det(rho_A) for a single-qubit density matrix.
double one_tangle(const DensityMatrix& rho_a);

double concurrence_pure(const PureState& psi);

struct ConcurrenceResult {
  double C = 0.0;
  double EoF = 0.0;  // bits
};

ConcurrenceResult concurrence_mixed(const DensityMatrix& rho);

// Entanglement of formation (bits) of a two-qubit state with concurrence c.
double eof_from_concurrence(double c);

// Concurrence of the reduction of psi to qubits (i, j).
double pairwise_concurrence(const PureState& psi, int i, int j);

// Spin-operator correlators, S = sigma / 2.
struct CorrelatorSet {
  double gxx = 0.0;
  double gyy = 0.0;
  double gzz = 0.0;
  double mz = 0.0;
};

struct TwoSiteResult {
  DensityMatrix rho;
  double C = 0.0;
  double CI = 0.0;
  double CII = 0.0;
};

// Parity-symmetric two-site state assembled from correlators.
// Throws ValidationError when the assembled matrix is not positive.
TwoSiteResult two_site_from_correlators(const CorrelatorSet& c);

struct NegativityResult {
  bool ppt = true;
  double N = 0.0;
  double EN = 0.0;
};

CMat partial_transpose(const CMat& rho, int n_qubits, const Subsystem& part);
NegativityResult negativity_suite(const DensityMatrix& rho, const Subsystem& part);

struct WitnessResult {
  double value = 0.0;
  bool flagged = false;
};

WitnessResult witness_eval(const DensityMatrix& rho, const CMat& w);

}  // namespace ekit
