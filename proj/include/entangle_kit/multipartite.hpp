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

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "entangle_kit/state.hpp"

namespace ekit {

// Contraction metric of the second comb; the sigma_y slot is absent.
inline constexpr std::array<double, 4> kMetric{-1.0, 1.0, 0.0, 1.0};

double three_tangle(const PureState& psi);
double n_tangle(const PureState& psi);
double residual_tangle(const PureState& psi, int i);

struct FilterResult {
  cplx F1;
  cplx F2;
  cplx F3;
  std::array<double, 3> moduli() const { return {std::abs(F1), std::abs(F2), std::abs(F3)}; }
};

FilterResult filters_F4(const PureState& psi);

// -log2 of the best product-state overlap found; restarts >= 1.
double geometric_measure(const PureState& psi, int restarts, std::uint64_t seed = 1);

struct PurityEntry {
  Subsystem part;
  double purity = 0.0;
};

struct PurityDistribution {
  std::vector<PurityEntry> values;
  double mean = 0.0;
  double variance = 0.0;
  double q_measure = 0.0;  // site-averaged one-tangle
};

PurityDistribution purity_distribution(const PureState& psi);

enum class RoofMode { Minimize, Maximize };

using PureMeasure = std::function<double(const PureState&)>;

struct RoofOptions {
  int K = 0;  // decomposition size; 0 selects 2 * rank
  RoofMode mode = RoofMode::Minimize;
  int restarts = 32;
  int max_iter = 1000;  // sweeps per restart
  std::uint64_t seed = 1;
  int threads = 1;
};

struct RoofTerm {
  double p = 0.0;
  PureState psi;
};

struct RoofEstimate {
  double value = 0.0;
  std::vector<RoofTerm> decomposition;
  RoofMode mode = RoofMode::Minimize;
  int restarts = 0;
  int iterations = 0;
};

RoofEstimate convex_roof_estimate(const DensityMatrix& rho, const PureMeasure& measure, const RoofOptions& opt);

struct GhzWRow {
  double p = 0.0;
  double tau1 = 0.0;
  double c_roof = 0.0;
  double tau3_roof = 0.0;
  double c_reduced = 0.0;  // closed-form concurrence of the two-site reduction
};

std::vector<GhzWRow> ghz_w_scan(const std::vector<double>& p_grid, int K, int restarts, std::uint64_t seed = 1,
                                int threads = 1);

struct LocalizableResult {
  double E_loc = 0.0;
  double lower_bound = 0.0;
};

LocalizableResult localizable_entanglement(const PureState& psi, int i, int j, int restarts, std::uint64_t seed = 1);

// Antilinear combs and their linear form on copies of the state.
enum class Comb {
  SigmaY,  // <psi*| sigma_y |psi>, one copy pair
  Metric,  // sum_mu g_mu <psi*|sigma_mu|psi>^2, two copy pairs
};

struct LinearTerm {
  std::array<int, 4> indices{};  // Pauli index on each copy (unused copies ignored)
  double coeff = 0.0;
};

// Linear operator sum_terms c * sigma_{w_1} x ... x sigma_{w_copies}, built
// qubit by qubit as a tensor product of single-qubit coefficient tables.
struct LinearizedOperator {
  int n_qubits = 0;
  int copies = 0;
  std::vector<std::vector<LinearTerm>> per_qubit;
};

LinearizedOperator antilinear_to_linear(const std::vector<Comb>& spec);

// Antilinear comb value for the tensor-product spec.
cplx comb_expectation(const std::vector<Comb>& spec, const PureState& psi);

// <psi|^{x copies} L |psi>^{x copies}; equals |comb_expectation|^2.
double linear_expectation(const LinearizedOperator& op, const PureState& psi);

// diag(1, -1, -1, -1)
Eigen::Matrix4d minkowski_metric();

}  // namespace ekit
