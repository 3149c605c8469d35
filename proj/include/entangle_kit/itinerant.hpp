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

#include "entangle_kit/state.hpp"

namespace ekit {

struct FermiGasRdm {
  DensityMatrix rho12;
  double f = 0.0;
  bool entangled = false;
  bool ppt = true;  // partial-transpose verdict on rho12
};

// f(x) = 2 J1(x)/x (d = 2) or 3 j1(x)/x (d = 3), x = kf r; f(0) = 1.
double fermi_gas_f(double x, int d);
FermiGasRdm fermi_gas_two_spin_rdm(double r, double kf, int d);
// Distance d0 below which the two spins are entangled, in units of pi/kf.
double fermi_gas_entanglement_range(int d);

struct EtaPairing {
  double O_eta = 0.0;
  double C_rescaled = 0.0;
};

EtaPairing eta_pairing(int L, int N);

// Explicit eta-pairing state (eta^+)^N |0> on L sites, 2L fermionic modes (mode 2j + s, s = 0 up, 1 down).
CVec eta_pairing_fock_state(int L, int N);
// Pseudospin image on L qubits: empty site -> |0>, doubly occupied -> |1>.
PureState eta_pairing_pseudospin_state(int L, int N);
// <eta_j^+ eta_k> evaluated with fermionic operators on the explicit state.
double eta_correlator_explicit(int L, int N, int j, int k);

struct LocalWeights {
  double z = 0.0;        // empty
  double u_plus = 0.0;   // single up
  double u_minus = 0.0;  // single down
  double w = 0.0;        // doubly occupied
};

double hubbard_local_entropy(double z, double u_plus, double u_minus, double w);
double hubbard_local_entropy(const LocalWeights& lw);

struct HubbardPoint {
  double U = 0.0;
  double V = 0.0;
  double S = 0.0;
  LocalWeights weights;
  double energy = 0.0;
  int degeneracy = 1;
};

// Extended Hubbard chain H = -t sum (c^+ c + h.c.) + U sum n_up n_dn + V sum n_i n_{i+1},
// periodic, half filling with S^z = 0, L in {2, 4, 6}.
HubbardPoint extended_hubbard_point(double U, double V, int L, double t = 1.0);
std::vector<HubbardPoint> extended_hubbard_scan(const std::vector<double>& U_grid, const std::vector<double>& V_grid,
                                                int L, double t = 1.0, int threads = 1);

struct FillingRow {
  double n = 0.0;
  int particles = 0;
  double h = 0.0;
  double C1 = 0.0;
};

// Nearest-neighbour concurrence of the XX chain at fillings M/N closest to the grid values.
std::vector<FillingRow> tight_binding_halffilling_check(int N, const std::vector<double>& filling_grid, double J = 1.0);

}  // namespace ekit
