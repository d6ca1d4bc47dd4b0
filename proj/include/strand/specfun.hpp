// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>

namespace strand::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Value plus a conservative absolute error estimate.
struct SpecFunResult {
  double value = 0.0;
  double est_error = 0.0;
};

/// Si(x) = int_0^x sin(t)/t dt.  Entire and odd; any finite x.
double sin_integral(double x);
SpecFunResult sin_integral_result(double x);

/// Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt.  Requires x > 0.
double cos_integral(double x);
SpecFunResult cos_integral_result(double x);

/// Auxiliary pair (f, g) with  Ci(x) = f sin x - g cos x  and
/// pi/2 - Si(x) = f cos x + g sin x.  Requires x > 0.  These evaluate the
/// trig-free part of the Si/Ci asymptotics without cancellation.
std::pair<double, double> si_aux(double x);

/// (J1(x), Y1(x)) for x > 0.
std::pair<double, double> bessel_j1_y1(double x);
/// (J1, Y1, J1', Y1') for x > 0.
struct BesselJ1Y1 {
  double j1, y1, j1p, y1p;
};
BesselJ1Y1 bessel_j1_y1_full(double x);

/// Incomplete elliptic integrals in the parameter-m convention
///   E(phi|m) = int_0^phi sqrt(1 - m sin^2 t) dt
///   F(phi|m) = int_0^phi dt / sqrt(1 - m sin^2 t)
/// for any real phi (periodicity reduction applied internally).
double elliptic_E_incomplete(double phi, double m);
double elliptic_F_incomplete(double phi, double m);
/// Complete integrals E(m) = E(pi/2|m), K(m) = F(pi/2|m) for m < 1.
double elliptic_E_complete(double m);
double elliptic_K_complete(double m);

/// Carlson symmetric forms (exposed for the defining-integral cross-checks).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

/// zeta(k) for integer k >= 2 to full double accuracy.
double zeta(int k);
inline constexpr double zeta3 = 1.2020569031595942853997381615114500;

}  // namespace strand::specfun
