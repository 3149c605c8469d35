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

#include "entangle_kit/optimize.hpp"

#include <cmath>
#include <limits>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_roots.h>

#include "entangle_kit/errors.hpp"

namespace ekit {

namespace {

struct GslErrorsOff {
  GslErrorsOff() { gsl_set_error_handler_off(); }
};
const GslErrorsOff gsl_errors_off;

double multi_trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  RVec x(static_cast<Eigen::Index>(v->size));
  for (std::size_t i = 0; i < v->size; ++i) x[static_cast<Eigen::Index>(i)] = gsl_vector_get(v, i);
  const double y = f(x);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

double scalar_trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const RVec& x0, double step, int max_iter, double size_tol) {
  const std::size_t n = static_cast<std::size_t>(x0.size());
  MinimizeResult out;
  if (n == 0) {
    out.x = x0;
    out.value = f(x0);
    return out;
  }
  gsl_multimin_function fn{&multi_trampoline, n, const_cast<Objective*>(&f)};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol) == GSL_SUCCESS) break;
  }
  out.x.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out.x[static_cast<Eigen::Index>(i)] = gsl_vector_get(s->x, i);
  out.value = s->fval;
  out.iterations = it;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return out;
}

MinimizeResult brent_minimize(const std::function<double(double)>& f, double a, double m, double b, double tol,
                              int max_iter) {
  gsl_function fn{&scalar_trampoline, const_cast<std::function<double(double)>*>(&f)};
  gsl_min_fminimizer* s = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
  if (gsl_min_fminimizer_set(s, &fn, m, a, b) != GSL_SUCCESS) {
    gsl_min_fminimizer_free(s);
    throw NumericalError("Brent minimization: invalid bracket");
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    gsl_min_fminimizer_iterate(s);
    const double lo = gsl_min_fminimizer_x_lower(s);
    const double hi = gsl_min_fminimizer_x_upper(s);
    if (gsl_min_test_interval(lo, hi, tol, 0.0) == GSL_SUCCESS) break;
  }
  MinimizeResult out;
  out.x = RVec::Constant(1, gsl_min_fminimizer_x_minimum(s));
  out.value = gsl_min_fminimizer_f_minimum(s);
  out.iterations = it;
  gsl_min_fminimizer_free(s);
  return out;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
  gsl_function fn{&scalar_trampoline, const_cast<std::function<double(double)>*>(&f)};
  gsl_root_fsolver* s = gsl_root_fsolver_alloc(gsl_root_fsolver_bisection);
  if (gsl_root_fsolver_set(s, &fn, a, b) != GSL_SUCCESS) {
    gsl_root_fsolver_free(s);
    throw NumericalError("bisection: endpoints do not bracket a root");
  }
  double root = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    gsl_root_fsolver_iterate(s);
    root = gsl_root_fsolver_root(s);
    if (gsl_root_test_interval(gsl_root_fsolver_x_lower(s), gsl_root_fsolver_x_upper(s), tol, 0.0) == GSL_SUCCESS) {
      break;
    }
  }
  gsl_root_fsolver_free(s);
  return root;
}

}  // namespace ekit
