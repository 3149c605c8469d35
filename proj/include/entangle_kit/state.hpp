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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ekit {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Pauli indices: 0 = identity, 1 = x, 2 = y, 3 = z. One entry per qubit.
using PauliWord = std::vector<int>;
// Strictly increasing qubit indices.
using Subsystem = std::vector<int>;

inline constexpr int kMaxQubits = 16;
inline constexpr double kNormTol = 1e-12;

// Qubit k of basis label b is bit (n - 1 - k): qubit 0 is the most significant bit.
class PureState {
 public:
  PureState() = default;
  // Throws ValidationError if the vector is not normalized within 1e-12,
  // unless normalize is set, in which case the vector is rescaled.
  PureState(int n_qubits, CVec amplitudes, bool normalize = false);

  static PureState basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return amp_.size(); }
  const CVec& amplitudes() const { return amp_; }
  cplx operator[](Eigen::Index i) const { return amp_[i]; }

 private:
  int n_ = 0;
  CVec amp_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates Hermiticity (1e-12), trace (1e-12) and eigenvalues >= -1e-10.
  DensityMatrix(int n_qubits, CMat entries);

  static DensityMatrix from_pure(const PureState& psi);
  // Skips the eigenvalue check; used for results of trusted operations.
  static DensityMatrix trusted(int n_qubits, CMat entries);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return m_.rows(); }
  const CMat& matrix() const { return m_; }

 private:
  int n_ = 0;
  CMat m_;
};

PureState tensor_product(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const Subsystem& keep);
DensityMatrix partial_trace(const PureState& psi, const Subsystem& keep);

cplx pauli_expectation(const PureState& psi, const PauliWord& word);
cplx pauli_expectation(const DensityMatrix& rho, const PauliWord& word);

// T(word) = psi^T sigma_word psi, conjugation taken in the sigma_z basis.
cplx antilinear_expectation(const PureState& psi, const PauliWord& word);

// Haar-random state from complex Gaussian amplitudes.
PureState random_state(int n_qubits, std::uint64_t seed);

// sigma_word |psi>, without normalization checks on the result.
CVec apply_pauli_word(const CVec& amps, int n_qubits, const PauliWord& word);

// Applies a 2x2 matrix to one qubit.
CVec apply_single_qubit(const CVec& amps, int n_qubits, int qubit, const Eigen::Matrix2cd& u);

PureState ghz_state(int n_qubits);
PureState w_state(int n_qubits);
PureState bell_phi_plus();

const Eigen::Matrix2cd& pauli(int index);

// Validates a subsystem spec against n qubits. Throws ArgumentError.
void check_subsystem(const Subsystem& part, int n_qubits, bool proper);
Subsystem complement(const Subsystem& part, int n_qubits);

}  // namespace ekit
