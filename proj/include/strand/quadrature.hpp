// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>

namespace strand {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

/// Adaptive Gauss-Legendre integration of f over [a, b] to absolute
/// tolerance tol.  freq_hint, when set, is the integrand's oscillation
/// count per unit length; the initial split provides at least four panels
/// per period so the refinement never aliases a fast oscillation.
QuadratureResult integrate_adaptive_full(const std::function<double(double)>& f,
                                         double a, double b, double tol,
                                         std::optional<double> freq_hint = {});

/// As above but returns only the value; throws std::runtime_error on
/// non-convergence (the message carries the best estimate).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol,
                          std::optional<double> freq_hint = {});

/// int_0^inf exp(-t) g(t) dt by adaptive panels up to t = 40 plus a reported
/// tail bound (used by the Borel transform).
QuadratureResult integrate_exp_weighted(const std::function<double(double)>& g,
                                        double tol);

}  // namespace strand
