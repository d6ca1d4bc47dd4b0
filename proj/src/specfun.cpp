// SPDX-License-Identifier: Apache-2.0
#include "strand/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace strand::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kFpMin = 1e-290;

// ---------------------------------------------------------------------------
// Sine and cosine integrals.
//
// Power series below x = 4; above, the auxiliary pair (f, g) comes from the
// continued fraction of exp(ix) E1(ix) = g - i f (modified Lentz).  The
// truncated asymptotic series for f and g cannot reach 1e-13 near the
// crossover, the continued fraction can; a test pins branch agreement at the
// seam.
// ---------------------------------------------------------------------------

constexpr double kSiCiSeriesCut = 4.0;

// Si by power series, |x| <= ~4.5.
double si_series(double x) {
  const double x2 = -x * x;
  double term = x;  // k = 0 term: x / (1 * 1!)
  double sum = x;
  double fact = 1.0;  // (2k+1)!
  for (int k = 1; k < 40; ++k) {
    const double tk = 2.0 * k;
    fact *= (tk) * (tk + 1.0);
    term *= x2;
    const double add = term / ((tk + 1.0) * fact);
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Cin(x) = gamma + ln x - Ci(x) by power series.
double cin_series(double x) {
  const double x2 = -x * x;
  double term = 1.0;
  double sum = 0.0;
  double fact = 1.0;  // (2k)!
  for (int k = 1; k < 40; ++k) {
    const double tk = 2.0 * k;
    fact *= (tk - 1.0) * tk;
    term *= x2;
    const double add = -term / (tk * fact);
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum) && k > 2) break;
  }
  return sum;
}

// g - i f = exp(ix) E1(ix) by modified Lentz on the E1 continued fraction.
std::complex<double> exp_e1_cf(double x) {
  const std::complex<double> z(0.0, x);
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / kFpMin;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i < 300; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < 1e-16) return h;
  }
  return h;  // fully converged for x >= 2 well before the cap
}

}  // namespace

std::pair<double, double> si_aux(double x) {
  if (!(x > 0.0)) throw std::domain_error("si_aux: requires x > 0");
  if (x < kSiCiSeriesCut) {
    const double si = si_series(x);
    const double ci = euler_gamma + std::log(x) - cin_series(x);
    const double s = std::sin(x), c = std::cos(x);
    // invert Ci = f s - g c, pi/2 - Si = f c + g s
    return {ci * s + (kPi / 2 - si) * c, (kPi / 2 - si) * s - ci * c};
  }
  const std::complex<double> h = exp_e1_cf(x);
  return {-h.imag(), h.real()};
}

double sin_integral(double x) {
  if (x == 0.0) return 0.0;
  const double ax = std::fabs(x);
  double v;
  if (ax < kSiCiSeriesCut) {
    v = si_series(ax);
  } else {
    const auto [f, g] = si_aux(ax);
    v = kPi / 2 - f * std::cos(ax) - g * std::sin(ax);
  }
  return x > 0 ? v : -v;
}

double cos_integral(double x) {
  if (!(x > 0.0)) throw std::domain_error("cos_integral: requires x > 0");
  if (x < kSiCiSeriesCut) return euler_gamma + std::log(x) - cin_series(x);
  const auto [f, g] = si_aux(x);
  return f * std::sin(x) - g * std::cos(x);
}

SpecFunResult sin_integral_result(double x) {
  const double v = sin_integral(x);
  return {v, 4e-16 * std::fabs(v) + 1e-18};
}

SpecFunResult cos_integral_result(double x) {
  const double v = cos_integral(x);
  return {v, 4e-16 * std::fabs(v) + 4e-16 / std::max(1.0, x)};
}

// ---------------------------------------------------------------------------
// Bessel J1, Y1 (with derivatives via the order-0 recurrences).
//
// Three regimes: ascending series (x <= 2), Steed's continued fractions
// (2 < x < 30), Hankel asymptotic expansion (x >= 30, optimally truncated
// terms are far below double rounding there).
// ---------------------------------------------------------------------------

namespace {

constexpr double kBesselSeriesCut = 2.0;
constexpr double kBesselHankelCut = 30.0;

BesselJ1Y1 bessel_series(double x) {
  const double q = 0.25 * x * x;
  // J0, J1
  double t = 1.0, j0 = 1.0;
  for (int k = 1; k < 30; ++k) {
    t *= -q / (static_cast<double>(k) * k);
    j0 += t;
    if (std::fabs(t) < 1e-18) break;
  }
  t = 1.0;
  double s1 = 1.0;
  for (int k = 1; k < 30; ++k) {
    t *= -q / (static_cast<double>(k) * (k + 1.0));
    s1 += t;
    if (std::fabs(t) < 1e-18) break;
  }
  const double j1 = 0.5 * x * s1;
  // Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} h_k q^k/(k!)^2]
  const double lg = std::log(0.5 * x) + euler_gamma;
  double hk = 0.0, sum0 = 0.0;
  t = 1.0;
  for (int k = 1; k < 30; ++k) {
    t *= q / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    const double add = (k % 2 ? 1.0 : -1.0) * hk * t;
    sum0 += add;
    if (std::fabs(add) < 1e-18) break;
  }
  const double y0 = (2.0 / kPi) * (lg * j0 + sum0);
  // Y1 = (2/pi)[(ln(x/2)+gamma) J1 - 1/x - (x/4) sum_k (-1)^k (h_k+h_{k+1}) q^k/(k!(k+1)!)]
  double sum1 = 1.0;  // k = 0: (h_0 + h_1) = 1
  t = 1.0;
  hk = 0.0;
  double hk1 = 1.0;
  for (int k = 1; k < 30; ++k) {
    t *= -q / (static_cast<double>(k) * (k + 1.0));
    hk += 1.0 / k;
    hk1 += 1.0 / (k + 1.0);
    const double add = (hk + hk1) * t;
    sum1 += add;
    if (std::fabs(add) < 1e-18) break;
  }
  const double y1 = (2.0 / kPi) * (lg * j1 - 1.0 / x - 0.25 * x * sum1);
  return {j1, y1, j0 - j1 / x, y0 - y1 / x};
}

BesselJ1Y1 bessel_steed(double x) {
  // CF1 for J1'/J1 by forward Lentz; isign tracks the sign of J1.
  const double mu = 1.0;
  int isign = 1;
  double h = mu / x;
  if (std::fabs(h) < kFpMin) h = kFpMin;
  double b = 2.0 * (mu + 1.0) / x;
  double c = h;
  double d = 0.0;
  for (int i = 0; i < 20000; ++i) {
    c = b - 1.0 / c;
    d = b - d;
    if (std::fabs(c) < kFpMin) c = (c < 0 ? -kFpMin : kFpMin);
    if (std::fabs(d) < kFpMin) d = (d < 0 ? -kFpMin : kFpMin);
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    b += 2.0 / x;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  const double fmu = h;
  // CF2 for p + i q = (J' + i Y')/(J + i Y) at order mu.
  const double xmu2 = mu * mu;
  double a = 0.25 - xmu2;
  double p = -0.5 / x, q = 1.0;
  const double br0 = 2.0 * x;
  double br = br0, bi = 2.0;
  double fact = a / x / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  double tmp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = tmp;
  for (int i = 2; i < 100000; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::fabs(dr) + std::fabs(di) < kFpMin) dr = kFpMin;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::fabs(cr) + std::fabs(ci) < kFpMin) cr = kFpMin;
    den = dr * dr + di * di;
    dr = dr / den;
    di = -di / den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    tmp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = tmp;
    if (std::fabs(dlr - 1.0) + std::fabs(dli) < 1e-16) break;
  }
  const double w = 2.0 / (kPi * x);  // Wronskian
  const double gam = (p - fmu) / q;
  double jmu = std::sqrt(w / ((p - fmu) * gam + q));
  if (isign < 0) jmu = -jmu;
  const double ymu = jmu * gam;
  const double ymup = ymu * (p + q / gam);
  const double jmup = fmu * jmu;
  return {jmu, ymu, jmup, ymup};
}

// Hankel expansion for order nu in {0, 1}; valid for large x.
void hankel(double x, double nu, double* jv, double* yv) {
  const double mu4 = 4.0 * nu * nu;
  double pterm = 1.0, psum = 1.0;
  double qterm = (mu4 - 1.0) / (8.0 * x), qsum = qterm;
  for (int k = 1; k < 18; ++k) {
    const double d1 = 2.0 * (2 * k) - 1.0;
    pterm *= -(mu4 - (d1 - 2.0) * (d1 - 2.0)) * (mu4 - d1 * d1) /
             ((2.0 * k) * (2.0 * k - 1.0) * 64.0 * x * x);
    psum += pterm;
    const double d2 = 2.0 * (2 * k + 1) - 1.0;
    qterm *= -(mu4 - (d2 - 2.0) * (d2 - 2.0)) * (mu4 - d2 * d2) /
             ((2.0 * k + 1.0) * (2.0 * k) * 64.0 * x * x);
    qsum += qterm;
    if (std::fabs(pterm) < 1e-18 && std::fabs(qterm) < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double cc = std::cos(chi), ss = std::sin(chi);
  *jv = amp * (psum * cc - qsum * ss);
  *yv = amp * (psum * ss + qsum * cc);
}

BesselJ1Y1 bessel_hankel(double x) {
  double j0, y0, j1, y1;
  hankel(x, 0.0, &j0, &y0);
  hankel(x, 1.0, &j1, &y1);
  return {j1, y1, j0 - j1 / x, y0 - y1 / x};
}

}  // namespace

BesselJ1Y1 bessel_j1_y1_full(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j1_y1: requires x > 0");
  if (x <= kBesselSeriesCut) return bessel_series(x);
  if (x < kBesselHankelCut) return bessel_steed(x);
  return bessel_hankel(x);
}

std::pair<double, double> bessel_j1_y1(double x) {
  const BesselJ1Y1 b = bessel_j1_y1_full(x);
  return {b.j1, b.y1};
}

// ---------------------------------------------------------------------------
// Elliptic integrals, parameter-m convention, via Carlson symmetric forms.
// ---------------------------------------------------------------------------

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0 || x + y <= 0 || x + z <= 0 || y + z <= 0)
    throw std::domain_error("carlson_rf: invalid arguments");
  constexpr double errtol = 0.0012;
  double xt = x, yt = y, zt = z;
  double mu = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
  if (x < 0 || y < 0 || z <= 0 || x + y <= 0)
    throw std::domain_error("carlson_rd: invalid arguments");
  constexpr double errtol = 0.0012;
  double xt = x, yt = y, zt = z;
  double sum = 0.0, fac = 1.0;
  double mu = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + 3.0 * zt) / 5.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) < errtol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
              dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))) /
             (mu * std::sqrt(mu));
}

namespace {

// Incomplete integrals on the principal range |phi| <= pi/2.
double ellip_f_principal(double phi, double m) {
  const double s = std::sin(phi), c = std::cos(phi);
  const double r = 1.0 - m * s * s;
  if (r <= 0.0) throw std::domain_error("elliptic_F: 1 - m sin^2 vanishes on path");
  if (s == 0.0) return 0.0;
  return s * carlson_rf(c * c, r, 1.0);
}

double ellip_e_principal(double phi, double m) {
  const double s = std::sin(phi), c = std::cos(phi);
  const double r = 1.0 - m * s * s;
  if (r < 0.0) throw std::domain_error("elliptic_E: integrand not real on path");
  if (s == 0.0) return 0.0;
  return s * carlson_rf(c * c, r, 1.0) -
         (m / 3.0) * s * s * s * carlson_rd(c * c, r, 1.0);
}

}  // namespace

double elliptic_K_complete(double m) {
  if (!(m < 1.0)) throw std::domain_error("elliptic_K: requires m < 1");
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

double elliptic_E_complete(double m) {
  if (m > 1.0) throw std::domain_error("elliptic_E: requires m <= 1");
  if (m == 1.0) return 1.0;
  return carlson_rf(0.0, 1.0 - m, 1.0) - (m / 3.0) * carlson_rd(0.0, 1.0 - m, 1.0);
}

double elliptic_F_incomplete(double phi, double m) {
  const double n = std::round(phi / kPi);
  const double phir = phi - n * kPi;
  double v = ellip_f_principal(phir, m);
  if (n != 0.0) v += 2.0 * n * elliptic_K_complete(m);
  return v;
}

double elliptic_E_incomplete(double phi, double m) {
  const double n = std::round(phi / kPi);
  const double phir = phi - n * kPi;
  double v = ellip_e_principal(phir, m);
  if (n != 0.0) v += 2.0 * n * elliptic_E_complete(m);
  return v;
}

// ---------------------------------------------------------------------------
// Riemann zeta at integer arguments >= 2: direct sum plus Euler-Maclaurin
// tail.  A few low arguments are pinned to their closed forms.
// ---------------------------------------------------------------------------

double zeta(int k) {
  if (k < 2) throw std::domain_error("zeta: requires k >= 2");
  switch (k) {
    case 2: return kPi * kPi / 6.0;
    case 3: return zeta3;
    case 4: return kPi * kPi * kPi * kPi / 90.0;
    case 6: return std::pow(kPi, 6) / 945.0;
    default: break;
  }
  const double s = k;
  const int n0 = 24;
  double sum = 0.0;
  for (int n = 1; n < n0; ++n) sum += std::pow(static_cast<double>(n), -s);
  const double nn = n0;
  double tail = std::pow(nn, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nn, -s);
  tail += s * std::pow(nn, -s - 1.0) / 12.0;
  tail -= s * (s + 1.0) * (s + 2.0) * std::pow(nn, -s - 3.0) / 720.0;
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(nn, -s - 5.0) / 30240.0;
  return sum + tail;
}

}  // namespace strand::specfun
