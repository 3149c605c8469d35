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

#include "entangle_kit/state.hpp"

#include <cmath>
#include <string>

#include "entangle_kit/errors.hpp"
#include "entangle_kit/linalg.hpp"

namespace ekit {

namespace {

void check_qubit_count(int n) {
  if (n <= 0) throw ArgumentError("qubit count must be positive");
  if (n > kMaxQubits) throw CapacityError("at most 16 qubits are supported, got " + std::to_string(n));
}

void check_word(const PauliWord& word, int n) {
  if (static_cast<int>(word.size()) != n) {
    throw ArgumentError("Pauli word length " + std::to_string(word.size()) + " does not match " +
                        std::to_string(n) + " qubits");
  }
  for (int w : word) {
    if (w < 0 || w > 3) throw ArgumentError("Pauli index must be in 0..3");
  }
}

// Splits each basis label into (kept index, traced index).
struct IndexSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> rest;
  Eigen::Index dk = 1;
  Eigen::Index dr = 1;
};

IndexSplit split_indices(int n, const Subsystem& keep) {
  const Subsystem rest = complement(keep, n);
  IndexSplit s;
  s.dk = Eigen::Index(1) << keep.size();
  s.dr = Eigen::Index(1) << rest.size();
  const Eigen::Index dim = Eigen::Index(1) << n;
  s.kept.resize(dim);
  s.rest.resize(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index a = 0;
    for (int q : keep) a = (a << 1) | ((b >> (n - 1 - q)) & 1);
    Eigen::Index r = 0;
    for (int q : rest) r = (r << 1) | ((b >> (n - 1 - q)) & 1);
    s.kept[b] = a;
    s.rest[b] = r;
  }
  return s;
}

}  // namespace

const Eigen::Matrix2cd& pauli(int index) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  if (index < 0 || index > 3) throw ArgumentError("Pauli index must be in 0..3");
  return mats[index];
}

void check_subsystem(const Subsystem& part, int n, bool proper) {
  if (part.empty()) throw ArgumentError("subsystem must be non-empty");
  for (std::size_t k = 0; k < part.size(); ++k) {
    if (part[k] < 0 || part[k] >= n) throw ArgumentError("subsystem index out of range");
    if (k > 0 && part[k] <= part[k - 1]) throw ArgumentError("subsystem indices must be strictly increasing");
  }
  if (proper && static_cast<int>(part.size()) == n) throw ArgumentError("bipartition requires a proper subset");
}

Subsystem complement(const Subsystem& part, int n) {
  Subsystem out;
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) {
    if (k < part.size() && part[k] == q) {
      ++k;
    } else {
      out.push_back(q);
    }
  }
  return out;
}

PureState::PureState(int n_qubits, CVec amplitudes, bool normalize) : n_(n_qubits), amp_(std::move(amplitudes)) {
  check_qubit_count(n_);
  if (amp_.size() != (Eigen::Index(1) << n_)) throw ArgumentError("amplitude count must be 2^n");
  const double nrm = amp_.norm();
  if (normalize) {
    if (nrm == 0.0) throw ArgumentError("cannot normalize the zero vector");
    amp_ /= nrm;
  } else if (std::abs(nrm * nrm - 1.0) > kNormTol) {
    throw ValidationError("state is not normalized");
  }
}

PureState PureState::basis(int n_qubits, std::uint64_t index) {
  check_qubit_count(n_qubits);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  if (static_cast<Eigen::Index>(index) >= dim) throw ArgumentError("basis index out of range");
  CVec v = CVec::Zero(dim);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(n_qubits, std::move(v));
}

DensityMatrix::DensityMatrix(int n_qubits, CMat entries) : n_(n_qubits), m_(std::move(entries)) {
  check_qubit_count(n_);
  const Eigen::Index dim = Eigen::Index(1) << n_;
  if (m_.rows() != dim || m_.cols() != dim) throw ArgumentError("density matrix must be 2^n x 2^n");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx(1.0)) > 1e-12) throw ValidationError("density matrix trace differs from 1");
  if (hermitian_eigenvalues(m_).minCoeff() < -1e-10) throw ValidationError("density matrix is not positive");
}

DensityMatrix DensityMatrix::trusted(int n_qubits, CMat entries) {
  DensityMatrix d;
  d.n_ = n_qubits;
  d.m_ = std::move(entries);
  return d;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return trusted(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubit_count(n);
  CVec out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return PureState(n, std::move(out), true);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Subsystem& keep) {
  const int n = rho.n_qubits();
  check_subsystem(keep, n, false);
  const IndexSplit s = split_indices(n, keep);
  // Regroup rho into blocks indexed by the traced label.
  std::vector<std::vector<Eigen::Index>> by_rest(s.dr);
  for (Eigen::Index b = 0; b < rho.dim(); ++b) by_rest[s.rest[b]].push_back(b);
  CMat out = CMat::Zero(s.dk, s.dk);
  for (const auto& group : by_rest) {
    for (Eigen::Index x : group) {
      for (Eigen::Index y : group) out(s.kept[x], s.kept[y]) += rho.matrix()(x, y);
    }
  }
  return DensityMatrix::trusted(static_cast<int>(keep.size()), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, const Subsystem& keep) {
  const int n = psi.n_qubits();
  check_subsystem(keep, n, false);
  const IndexSplit s = split_indices(n, keep);
  CMat m = CMat::Zero(s.dk, s.dr);
  for (Eigen::Index b = 0; b < psi.dim(); ++b) m(s.kept[b], s.rest[b]) = psi[b];
  CMat out = m * m.adjoint();
  return DensityMatrix::trusted(static_cast<int>(keep.size()), std::move(out));
}

CVec apply_single_qubit(const CVec& amps, int n, int qubit, const Eigen::Matrix2cd& u) {
  if (qubit < 0 || qubit >= n) throw ArgumentError("qubit index out of range");
  const Eigen::Index stride = Eigen::Index(1) << (n - 1 - qubit);
  CVec out(amps.size());
  for (Eigen::Index b = 0; b < amps.size(); ++b) {
    if (b & stride) continue;
    const cplx a0 = amps[b];
    const cplx a1 = amps[b | stride];
    out[b] = u(0, 0) * a0 + u(0, 1) * a1;
    out[b | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return out;
}

CVec apply_pauli_word(const CVec& amps, int n, const PauliWord& word) {
  check_word(word, n);
  // A Pauli word is a signed permutation: flip x/y bits, phase from y/z.
  Eigen::Index flip = 0;
  for (int q = 0; q < n; ++q) {
    if (word[q] == 1 || word[q] == 2) flip |= Eigen::Index(1) << (n - 1 - q);
  }
  CVec out(amps.size());
  static const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  for (Eigen::Index b = 0; b < amps.size(); ++b) {
    int phase = 0;  // power of i
    for (int q = 0; q < n; ++q) {
      const int bit = static_cast<int>((b >> (n - 1 - q)) & 1);
      if (word[q] == 2) phase += bit ? 3 : 1;  // sigma_y|0> = i|1>, sigma_y|1> = -i|0>
      if (word[q] == 3 && bit) phase += 2;
    }
    out[b ^ flip] = ipow[phase % 4] * amps[b];
  }
  return out;
}

cplx pauli_expectation(const PureState& psi, const PauliWord& word) {
  check_word(word, psi.n_qubits());
  return psi.amplitudes().dot(apply_pauli_word(psi.amplitudes(), psi.n_qubits(), word));
}

cplx pauli_expectation(const DensityMatrix& rho, const PauliWord& word) {
  const int n = rho.n_qubits();
  check_word(word, n);
  cplx acc = 0.0;
  // tr(rho P) = sum_b (P rho)_{bb}; P maps column vectors via apply_pauli_word.
  for (Eigen::Index c = 0; c < rho.dim(); ++c) {
    const CVec col = apply_pauli_word(rho.matrix().col(c), n, word);
    acc += col[c];
  }
  return acc;
}

cplx antilinear_expectation(const PureState& psi, const PauliWord& word) {
  check_word(word, psi.n_qubits());
  const CVec s = apply_pauli_word(psi.amplitudes(), psi.n_qubits(), word);
  return (psi.amplitudes().transpose() * s)(0, 0);
}

PureState random_state(int n, std::uint64_t seed) {
  if (n <= 0) throw ArgumentError("qubit count must be positive");
  check_qubit_count(n);
  Rng rng(seed);
  return PureState(n, random_gaussian_vector(Eigen::Index(1) << n, rng), true);
}

PureState ghz_state(int n) {
  check_qubit_count(n);
  CVec v = CVec::Zero(Eigen::Index(1) << n);
  v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
  return PureState(n, std::move(v), true);
}

PureState w_state(int n) {
  check_qubit_count(n);
  CVec v = CVec::Zero(Eigen::Index(1) << n);
  for (int q = 0; q < n; ++q) v[Eigen::Index(1) << q] = 1.0;
  return PureState(n, std::move(v), true);
}

PureState bell_phi_plus() { return ghz_state(2); }

}  // namespace ekit
