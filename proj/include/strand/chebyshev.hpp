// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace strand {

/// A function on [a, b] represented by its values at the d+1
/// Chebyshev-Gauss-Lobatto nodes x_j = mid + half*cos(pi j/d), j = 0..d
/// (so node 0 sits at b and node d at a).  Differentiation, antidifferentiation
/// and definite integration act on the Chebyshev coefficients and are
/// spectrally accurate for smooth data.
class GridFunction {
 public:
  GridFunction(double a, double b, int degree);
  static GridFunction from_values(double a, double b, std::vector<double> values);
  static GridFunction from_function(const std::function<double(double)>& f,
                                    double a, double b, int degree);
  /// Degree chosen adaptively: doubled from `initial` until the coefficient
  /// tail drops below tol (relative), capped at max_degree.
  static GridFunction from_function_adaptive(const std::function<double(double)>& f,
                                             double a, double b, double tol,
                                             int initial = 64,
                                             int max_degree = 1 << 15);
  static GridFunction from_coefficients(double a, double b,
                                        std::vector<double> coef);

  double domain_a() const { return a_; }
  double domain_b() const { return b_; }
  int degree() const { return d_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values();
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& coefficients() const;

  double operator()(double x) const;       // Clenshaw evaluation
  double value_at_node(int j) const { return values_[j]; }

  GridFunction derivative() const;
  GridFunction antiderivative() const;      // vanishes at x = a
  double integral() const;                  // over [a, b]
  double end_value() const;                 // value at b (= sum of coefficients)

  /// Relative magnitude of the trailing coefficients; small when the degree
  /// resolves the function.
  double tail_estimate() const;

  /// Pointwise product/combination helpers (same grid required).
  GridFunction multiply(const GridFunction& other) const;
  GridFunction apply(const std::function<double(double)>& fn) const;

  double inner_product(const GridFunction& other) const;  // int f g dx

 private:
  double a_, b_;
  int d_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  mutable std::vector<double> coef_;
  mutable bool coef_valid_ = false;
};

}  // namespace strand
