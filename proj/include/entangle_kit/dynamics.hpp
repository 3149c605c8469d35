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

#include <string>
#include <vector>

#include "entangle_kit/spin_models.hpp"
#include "entangle_kit/state.hpp"

namespace ekit {

enum class MagnonMode { Finite, Bessel };

// Single-magnon amplitudes w_l(t) on a ring of N sites starting from (|i> + sign |j>)/sqrt 2,
// where |l> carries one flipped spin at site l. Time in units of 1/J; the band is 4J cos k.
struct MagnonAmplitudes {
  std::vector<cplx> w;
  int sign = 1;
  int i = 0;
  int j = 1;
  double t = 0.0;
  MagnonMode mode = MagnonMode::Finite;
  bool fell_back = false;  // Bessel request outside its validity window
  std::string warning;
};

MagnonAmplitudes magnon_amplitudes(int N, int i, int j, int sign, double t, MagnonMode mode, double J = 1.0);

// 4Jt < N/2 - |j - i| (ring distance).
bool bessel_window_ok(int N, int i, int j, double t, double J = 1.0);
// Per-site window: 4Jt < N/2 - max(|l - i|, |l - j|), ring distances.
bool bessel_site_ok(int N, int i, int j, int l, double t, double J = 1.0);

struct PairDynamics {
  double C = 0.0;
  double S2 = 0.0;  // bits
};

PairDynamics pair_dynamics(const MagnonAmplitudes& amps, int n, int m);

// Time for the spin Hamiltonian (S = sigma/2, XX coupling J) that matches magnon time t.
inline double magnon_to_model_time(double t) { return 8.0 * t; }

PureState vacuum_state(int N);
// Vacuum with a Bell pair (|i> + sign |j>)/sqrt 2 in the one-magnon sector.
PureState magnon_pair_state(int N, int i, int j, int sign);

struct EvolutionFrame {
  double t = 0.0;
  RMat concurrence;           // N x N, zero diagonal
  std::vector<double> tau1;   // per site
  std::vector<double> residual;
  double norm_drift = 0.0;    // | ||psi(t)|| - 1 |
  double magnetization = 0.0; // <sum S^z>
  PureState state;
};

std::vector<EvolutionFrame> ed_evolution(const PureState& state0, const ModelParams& p, const std::vector<double>& t_grid,
                                         int threads = 1);

}  // namespace ekit
