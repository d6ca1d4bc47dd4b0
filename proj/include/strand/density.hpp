// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace strand {

/// A string's mass density on [-L, L] with the calculus every engine needs:
/// three derivatives, the stretched coordinate sigma(x) = int_-L^x sqrt(rho),
/// its inverse, and the WKB potential V = (4 rho rho'' - 5 rho'^2)/(16 rho^3)
/// in both the x and sigma variables.
///
/// Models are immutable after construction; all evaluators are pure and safe
/// to call concurrently.  Construction validates positivity, sigma
/// consistency, and the supplied derivatives against finite differences.
class DensityModel {
 public:
  struct Spec {
    std::string name;
    std::vector<double> parameters;
    double half_length = 0.5;
    std::function<double(double)> rho;
    std::function<double(double)> rho1;  // rho'
    std::function<double(double)> rho2;  // rho''
    std::function<double(double)> rho3;  // rho'''
    // optional closed forms
    std::function<double(double)> sigma_closed;
    std::function<double(double)> sigma_inverse_closed;
    // potential as a function of sigma, with derivatives and complex
    // continuation (catalog models where the closed form exists)
    std::function<double(double)> v_of_sigma;
    std::function<double(double, int)> v_sigma_derivative;  // any order >= 1
    std::function<std::complex<double>(std::complex<double>)> v_of_sigma_complex;
    double oscillation_frequency = 0.0;  // cycles per unit length, 0 = smooth
    bool finite_difference_mode = false; // derivatives are FD approximations
    bool skip_derivative_check = false;
  };

  explicit DensityModel(Spec spec);

  const std::string& name() const;
  const std::vector<double>& parameters() const;
  double half_length() const;
  double oscillation_frequency() const;
  bool finite_difference_mode() const;

  double rho(double x) const;
  double rho_prime(double x) const;
  double rho_second(double x) const;
  double rho_third(double x) const;
  double sqrt_rho(double x) const;

  /// sigma(x); strictly increasing with sigma(-L) = 0.
  double sigma(double x) const;
  double sigma_total() const;
  /// x with sigma(x) = s, |sigma(x) - s| <= 1e-12 sigma(L).
  double sigma_inverse(double s) const;

  /// V(x) = (4 rho rho'' - 5 rho'^2) / (16 rho^3).
  double potential(double x) const;
  /// V as a function of the stretched coordinate: V(x(s)).
  double potential_in_sigma(double s) const;
  /// d^k V / d sigma^k at sigma = s, odd k.  Closed form when the catalog
  /// carries one; spectral differentiation of V(x(s)) otherwise (orders
  /// beyond 7 refused in the spectral fallback).
  double potential_sigma_derivative(double s, int order) const;
  int max_sigma_derivative_order() const;

  bool has_complex_potential() const;
  std::complex<double> potential_sigma_complex(std::complex<double> s) const;

  /// Isospectral map rho_bar(x) = xi'(x)^2 rho(xi(x)) with the Moebius
  /// reparameterization xi; requires alpha > -1/(2L).
  DensityModel gottlieb_transform(double alpha) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Catalog densities addressable by name + parameters.
namespace density {

DensityModel uniform(double rho0 = 1.0, double half_length = 0.5);
/// rho = 256 c1^2 / (c1^2 (c2+x)^2 - 256 kappa)^2; V is identically kappa,
/// so kappa = 0 gives the family solved exactly by the WKB basis.
DensityModel borg(double c1, double c2, double kappa, double half_length = 0.5);
/// The Borg special case parameterized as in the classical example.
DensityModel borg_alpha(double alpha, double half_length = 0.5);
/// rho = (a+2)^2 / (2 (a (a+2)(2x+1) + 2)) on [-1/2, 1/2]; exactly solvable
/// through Bessel-function zeros.
DensityModel horgan(double a);
/// rho = (x + 3 pi/2)^4 on [-pi/2, pi/2].
DensityModel quartic();
/// rho = (2 + sin(100 pi x))^2 on [-1/2, 1/2].
DensityModel oscillating();
/// rho = 2 + sin(2 pi (x + 1/2)/eps) on [-1/2, 1/2].
DensityModel eps_oscillating(double eps);
/// Tabulated (x, rho) samples; derivatives by finite differences of a cubic
/// spline through the table (documented accuracy loss).
DensityModel from_table(const std::vector<std::pair<double, double>>& samples);
/// Catalog lookup by name; recognized names: uniform, borg, borg_alpha,
/// horgan, quartic, oscillating, eps_oscillating.
DensityModel by_name(const std::string& name, const std::vector<double>& params);

}  // namespace density

/// Free-function forms of the per-model operations.
double potential_V(const DensityModel& m, double x);
double sigma_inverse(const DensityModel& m, double s);
double potential_V_sigma_derivative(const DensityModel& m, double s, int order);
DensityModel gottlieb_transform(const DensityModel& m, double alpha);

}  // namespace strand
