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
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/state.hpp"

namespace ekit {

enum class Boundary { Periodic, Open };

// H = J sum_<ij> [(1+g)/2 Sx Sx + (1-g)/2 Sy Sy + Delta Sz Sz] - h sum_i Sz_i, with S = sigma / 2.
struct ModelParams {
  double gamma = 1.0;
  double delta = 0.0;
  double J = 1.0;
  double h = 0.5;
  int N = 2;
  Boundary boundary = Boundary::Periodic;

  // lambda = J / (2h); infinite at zero field.
  double lambda() const { return h == 0.0 ? std::numeric_limits<double>::infinity() : J / (2.0 * h); }
  static ModelParams from_lambda(double gamma, double lambda, int N, double J = 1.0, double delta = 0.0,
                                 Boundary boundary = Boundary::Periodic);
  // Named models: xx (g=0, D=0), xy, ising (g=1), xxz (g=0), xxx (g=0, D=1).
  static ModelParams named(const std::string& model, int N);
  void validate() const;
};

using SparseH = Eigen::SparseMatrix<double>;

SparseH build_hamiltonian(const ModelParams& p);

// Parity operator prod_i sigma_z as a diagonal of +-1.
RVec parity_diagonal(int n);

struct GroundStateBundle {
  PureState even;  // parity +1
  PureState odd;   // parity -1
  double energy_even = 0.0;
  double energy_odd = 0.0;

  const PureState& lowest() const { return energy_even <= energy_odd ? even : odd; }
  // (even +- odd) / sqrt 2, with the relative sign fixed so <even|sigma_x^0|odd> >= 0.
  PureState plus() const;
  PureState minus() const;
  // (|even><even| + |odd><odd|) / 2
  DensityMatrix rho0() const;  // dense; N <= 12
  // Reduced state of rho0 on the kept sites, without forming rho0.
  DensityMatrix rho0_reduced(const Subsystem& keep) const;
  // cos(a) even + sin(a) odd with the mixing angle a that minimizes the largest pairwise concurrence.
  PureState least_entangled() const;
};

GroundStateBundle ground_state(const ModelParams& p);

// Lowest eigenpair of a real symmetric sparse matrix (Lanczos with full reorthogonalization).
std::pair<double, RVec> lowest_eigenpair(const SparseH& h, std::uint64_t seed = 7, double tol = 1e-11);

// Factorizing field exactly as printed: (z/2) J sqrt((1+Delta)^2 - (gamma/2)^2).
double factorizing_field(double gamma, double delta, double J, double z);
// Field at which the ground state of the Hamiltonian above is an exact product state
// (J > 0, bipartite lattice): (z/2) J sqrt((1/2 + Delta)^2 - (gamma/2)^2).
double factorizing_field_exact(double gamma, double delta, double J, double z);

// Spin correlators <S_i^a S_j^a>, and Sz averaged over sites i and j.
CorrelatorSet ed_correlators(const PureState& psi, int i, int j);

// Largest pairwise concurrence over all pairs.
double max_pairwise_concurrence(const PureState& psi);
double max_pairwise_concurrence(const DensityMatrix& rho);

struct FactorizationScan {
  double h_star = 0.0;         // field minimizing the largest pairwise concurrence
  double c_max_at_h_star = 0;  // least entangled state of the ground doublet
  double c_plus_at_h_star = 0; // gs+
  double h_formula = 0.0;      // printed formula
  double h_exact = 0.0;        // product-state field for this Hamiltonian
};

// Golden-section search of the field in [h_lo, h_hi] at fixed gamma, Delta, J, N.
FactorizationScan find_factorizing_field(const ModelParams& base, double h_lo, double h_hi, double tol = 1e-9);

enum class Engine { ED, FreeFermion };

struct ProfileOptions {
  double J = 1.0;
  Boundary boundary = Boundary::Periodic;
  int r_max = 0;           // 0 selects N / 2
  double step = 1e-3;      // central-difference step in lambda
  bool richardson = true;  // (4 D(step/2) - D(step)) / 3
  int threads = 1;
};

struct ProfileRow {
  double lambda = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double dC1 = 0.0;
  int R = 0;  // largest r with C(r) > 1e-8
  double Mz = 0.0;
};

std::vector<ProfileRow> concurrence_profile(double gamma, const std::vector<double>& lambda_grid, int N, Engine engine,
                                            const ProfileOptions& opt = {});

// Nearest-neighbour concurrence C(r) between sites 0 and r.
double concurrence_at(double gamma, double lambda, int N, int r, Engine engine, const ProfileOptions& opt = {});

struct ScalingPoint {
  int N = 0;
  double lambda_m = 0.0;  // position of the minimum of dC(1)/dlambda
  double depth = 0.0;     // value of dC(1)/dlambda at the minimum
};

// Locates the minimum of dC(1)/dlambda for the free-fermion chain on [lo, hi].
ScalingPoint locate_derivative_minimum(double gamma, int N, double lo = 0.9, double hi = 1.1, int grid = 21);

struct ScalingFit {
  double nu = 0.0;         // from the log-divergence prefactor over the depth slope
  double theta = 0.0;      // lambda_c - lambda_m ~ N^-theta
  double prefactor = 0.0;  // depth slope against ln N
  double drift_amplitude = 0.0;
  double depth_intercept = 0.0;
  std::vector<double> drift_residuals;  // in ln |lambda_m - 1|
  std::vector<double> depth_residuals;
};

inline constexpr double kLogDivergencePrefactor = 8.0 / (3.0 * 3.14159265358979323846 * 3.14159265358979323846);

ScalingFit scaling_fit(const std::vector<ScalingPoint>& data, double lambda_c = 1.0);

}  // namespace ekit
