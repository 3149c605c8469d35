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

#include <functional>

#include "entangle_kit/state.hpp"

namespace ekit {

using Objective = std::function<double(const RVec&)>;

struct MinimizeResult {
  RVec x;
  double value = 0.0;
  int iterations = 0;
};

// Derivative-free simplex minimization (GSL nmsimplex2).
MinimizeResult nelder_mead(const Objective& f, const RVec& x0, double step, int max_iter, double size_tol = 1e-9);

// Brent minimization on a bracket (a, m, b) with f(m) < f(a), f(b).
MinimizeResult brent_minimize(const std::function<double(double)>& f, double a, double m, double b,
                              double tol = 1e-10, int max_iter = 200);

// Root of f on [a, b] by bisection; f(a), f(b) must differ in sign.
double bisect_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

}  // namespace ekit
