// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace strand {

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Derivative-free Nelder-Mead simplex minimization.  Deterministic for
/// identical inputs.  Restarts once from the found minimum with a shrunk
/// initial simplex, which is enough to escape the shallow local kinks seen
/// in the variational objectives.
MinimizeResult minimize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                                std::vector<double> start, double tol,
                                long max_evaluations = 60000,
                                double initial_step = 0.1);

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  long evaluations = 0;
};

/// Bracketed root finding (bisection/secant hybrid).  f(a) and f(b) must
/// differ in sign.
RootResult bracket_root(const std::function<double(double)>& f, double a,
                        double b, double tol_rel = 4e-16);

}  // namespace strand
