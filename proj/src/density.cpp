// SPDX-License-Identifier: Apache-2.0
#include "strand/density.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "strand/chebyshev.hpp"
#include "strand/quadrature.hpp"
#include "strand/specfun.hpp"

namespace strand {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double fd_derivative(const std::function<double(double)>& f, double x, int order,
                     double h) {
  switch (order) {
    case 1:  // 4th order
      return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    case 2:  // 4th order
      return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
              f(x - 2 * h)) /
             (12 * h * h);
    case 3:  // 4th order, 7-point
      return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) -
              8 * f(x - 2 * h) + f(x - 3 * h)) /
             (8 * h * h * h);
    default:
      throw std::invalid_argument("fd_derivative: order 1..3");
  }
}

}  // namespace

struct DensityModel::Impl {
  Spec spec;
  double sigma_total = 0.0;
  std::optional<GridFunction> sigma_interp;
  // lazily built spectral derivatives of V(sigma), guarded
  mutable std::mutex vmu;
  mutable std::vector<GridFunction> v_sigma_chain;  // [0] = V, [k] = d^k V/ds^k

  double sigma(double x) const {
    if (spec.sigma_closed) return spec.sigma_closed(x);
    return (*sigma_interp)(x);
  }
};

DensityModel::DensityModel(Spec spec_in) {
  auto impl = std::make_shared<Impl>();
  impl->spec = std::move(spec_in);
  Spec& s = impl->spec;
  const double L = s.half_length;
  if (!(L > 0)) throw std::invalid_argument("DensityModel: half_length > 0");
  if (!s.rho) throw std::invalid_argument("DensityModel: rho evaluator required");

  // positivity scan
  const int npos = 1200;
  for (int i = 0; i <= npos; ++i) {
    const double x = -L + 2.0 * L * i / npos;
    const double r = s.rho(x);
    if (!(r > 0.0) || !std::isfinite(r)) {
      std::ostringstream os;
      os << "DensityModel(" << s.name << "): rho not positive at x = " << x;
      throw std::domain_error(os.str());
    }
  }

  // sigma: closed form or spectral antiderivative of sqrt(rho)
  if (!s.sigma_closed) {
    const double freq = s.oscillation_frequency;
    const int initial = std::max(64, static_cast<int>(64 + 8 * freq * 2 * L));
    GridFunction sq = GridFunction::from_function_adaptive(
        [&](double x) { return std::sqrt(s.rho(x)); }, -L, L, 1e-13, initial,
        1 << 15);
    impl->sigma_interp = sq.antiderivative();
  }
  impl->sigma_total = impl->sigma(L);
  if (!(impl->sigma_total > 0))
    throw std::domain_error("DensityModel: sigma(L) must be positive");

  // sigma consistency: sigma(-L) = 0, monotone, sigma' = sqrt(rho)
  {
    if (std::fabs(impl->sigma(-L)) > 1e-10 * impl->sigma_total)
      throw std::domain_error("DensityModel: sigma(-L) != 0");
    const int nchk = 160;
    const double freq = std::max(s.oscillation_frequency, 1.0 / (2 * L));
    // window form of sigma' = sqrt(rho): the increment of sigma across a
    // short window must equal the integral of sqrt(rho) over it.  This is
    // the same consistency statement without differencing noise.
    const double h = std::min(0.05 / freq, 0.01 * L);
    double prev = 0.0;
    for (int i = 1; i < nchk; ++i) {
      const double x = -L + 2.0 * L * i / nchk;
      const double sv = impl->sigma(x);
      if (!(sv > prev))
        throw std::domain_error("DensityModel: sigma not strictly increasing");
      prev = sv;
      if (std::fabs(x) > L - 2 * h) continue;
      const double got = impl->sigma(x + h) - impl->sigma(x - h);
      const double want = integrate_adaptive(
          [&](double y) { return std::sqrt(s.rho(y)); }, x - h, x + h, 1e-14);
      if (std::fabs(got - want) >
          1e-10 * std::max(want, 2 * h) * std::max(1.0, impl->sigma_total))
        throw std::domain_error("DensityModel: sigma' deviates from sqrt(rho)");
    }
  }

  // derivative consistency against finite differences (vacuous for FD-backed
  // models, skipped there)
  if (!s.finite_difference_mode && !s.skip_derivative_check) {
    if (!s.rho1 || !s.rho2 || !s.rho3)
      throw std::invalid_argument("DensityModel: derivative evaluators required");
    const int nchk = 60;
    const double freq = std::max(s.oscillation_frequency, 1.0 / (2 * L));
    const double wglob = 2 * kPi * freq;
    for (int i = 1; i < nchk; ++i) {
      const double x = -L + 2.0 * L * (i + 0.31) / nchk;
      // local inverse length scale of rho, so the step keeps the 4th-order
      // truncation error well under the 1e-6 gate
      const double r0 = s.rho(x);
      double w = wglob;
      w = std::max(w, 1.5 * std::fabs(s.rho1(x) / r0));
      w = std::max(w, 1.5 * std::sqrt(std::fabs(s.rho2(x) / r0)));
      w = std::max(w, 1.5 * std::cbrt(std::fabs(s.rho3(x) / r0)));
      for (int order = 1; order <= 3; ++order) {
        const double h = 0.012 / w;
        if (std::fabs(x) > L - 4 * h) continue;
        const double fd = fd_derivative(s.rho, x, order, h);
        const double exact = order == 1   ? s.rho1(x)
                             : order == 2 ? s.rho2(x)
                                          : s.rho3(x);
        const double scale = std::fabs(exact) + std::pow(w, order) * r0 + 1e-12;
        if (std::fabs(fd - exact) > 1e-6 * scale) {
          std::ostringstream os;
          os << "DensityModel(" << s.name << "): rho derivative of order "
             << order << " disagrees with finite differences at x = " << x
             << " (fd " << fd << ", supplied " << exact << ")";
          throw std::domain_error(os.str());
        }
      }
    }
  }
  impl_ = std::move(impl);
}

const std::string& DensityModel::name() const { return impl_->spec.name; }
const std::vector<double>& DensityModel::parameters() const {
  return impl_->spec.parameters;
}
double DensityModel::half_length() const { return impl_->spec.half_length; }
double DensityModel::oscillation_frequency() const {
  return impl_->spec.oscillation_frequency;
}
bool DensityModel::finite_difference_mode() const {
  return impl_->spec.finite_difference_mode;
}

double DensityModel::rho(double x) const { return impl_->spec.rho(x); }
double DensityModel::rho_prime(double x) const { return impl_->spec.rho1(x); }
double DensityModel::rho_second(double x) const { return impl_->spec.rho2(x); }
double DensityModel::rho_third(double x) const { return impl_->spec.rho3(x); }
double DensityModel::sqrt_rho(double x) const {
  return std::sqrt(impl_->spec.rho(x));
}

double DensityModel::sigma(double x) const {
  const double L = impl_->spec.half_length;
  if (x < -L - 1e-12 || x > L + 1e-12)
    throw std::domain_error("sigma: x outside [-L, L]");
  return impl_->sigma(std::clamp(x, -L, L));
}

double DensityModel::sigma_total() const { return impl_->sigma_total; }

double DensityModel::sigma_inverse(double s) const {
  const double sL = impl_->sigma_total;
  if (s < -1e-12 * sL || s > sL * (1.0 + 1e-12))
    throw std::domain_error("sigma_inverse: s outside [0, sigma(L)]");
  s = std::clamp(s, 0.0, sL);
  if (impl_->spec.sigma_inverse_closed) return impl_->spec.sigma_inverse_closed(s);
  const double L = impl_->spec.half_length;
  if (s == 0.0) return -L;
  if (s == sL) return L;
  // safeguarded Newton; sigma' = sqrt(rho) > 0 guarantees convergence
  double lo = -L, hi = L;
  double x = -L + (s / sL) * 2 * L;
  for (int it = 0; it < 200; ++it) {
    const double f = impl_->sigma(x) - s;
    if (std::fabs(f) <= 1e-13 * sL) return x;
    if (f > 0)
      hi = x;
    else
      lo = x;
    const double nx = x - f / std::sqrt(impl_->spec.rho(x));
    x = (nx > lo && nx < hi) ? nx : 0.5 * (lo + hi);
  }
  return x;
}

double DensityModel::potential(double x) const {
  const double L = impl_->spec.half_length;
  if (x < -L - 1e-12 || x > L + 1e-12)
    throw std::domain_error("potential: x outside [-L, L]");
  x = std::clamp(x, -L, L);
  const double r = impl_->spec.rho(x);
  const double r1 = impl_->spec.rho1(x);
  const double r2 = impl_->spec.rho2(x);
  return (4.0 * r * r2 - 5.0 * r1 * r1) / (16.0 * r * r * r);
}

double DensityModel::potential_in_sigma(double s) const {
  if (impl_->spec.v_of_sigma) return impl_->spec.v_of_sigma(s);
  return potential(sigma_inverse(s));
}

int DensityModel::max_sigma_derivative_order() const {
  return impl_->spec.v_sigma_derivative ? 99 : 7;
}

double DensityModel::potential_sigma_derivative(double s, int order) const {
  if (order < 1 || order % 2 == 0)
    throw std::invalid_argument(
        "potential_sigma_derivative: order must be odd and >= 1");
  if (impl_->spec.v_sigma_derivative) return impl_->spec.v_sigma_derivative(s, order);
  if (order == 1) {
    // V'(sigma) = rho'''/(4 rho^{5/2}) + 15 rho'^3/(16 rho^{9/2})
    //             - 9 rho' rho''/(8 rho^{7/2})
    const double x = sigma_inverse(s);
    const double r = impl_->spec.rho(x);
    const double r1 = impl_->spec.rho1(x);
    const double r2 = impl_->spec.rho2(x);
    const double r3 = impl_->spec.rho3(x);
    return r3 / (4.0 * std::pow(r, 2.5)) +
           15.0 * r1 * r1 * r1 / (16.0 * std::pow(r, 4.5)) -
           9.0 * r1 * r2 / (8.0 * std::pow(r, 3.5));
  }
  if (order > 7)
    throw std::invalid_argument(
        "potential_sigma_derivative: spectral fallback supports orders {1,3,5,7}");
  std::lock_guard<std::mutex> lock(impl_->vmu);
  auto& chain = impl_->v_sigma_chain;
  if (chain.empty()) {
    const double sL = impl_->sigma_total;
    const double freq = impl_->spec.oscillation_frequency;
    const int initial = std::max(
        256, static_cast<int>(64 + 8 * freq * 2 * impl_->spec.half_length));
    chain.push_back(GridFunction::from_function_adaptive(
        [&](double u) { return potential_in_sigma(u); }, 0.0, sL, 1e-13, initial,
        1 << 14));
  }
  while (static_cast<int>(chain.size()) <= order)
    chain.push_back(chain.back().derivative());
  return chain[order](s);
}

bool DensityModel::has_complex_potential() const {
  return static_cast<bool>(impl_->spec.v_of_sigma_complex);
}

std::complex<double> DensityModel::potential_sigma_complex(
    std::complex<double> s) const {
  if (!impl_->spec.v_of_sigma_complex)
    throw std::domain_error(
        "potential_sigma_complex: no analytic continuation for this density");
  return impl_->spec.v_of_sigma_complex(s);
}

DensityModel DensityModel::gottlieb_transform(double alpha) const {
  const double L = impl_->spec.half_length;
  if (!(alpha > -1.0 / (2.0 * L)))
    throw std::invalid_argument("gottlieb_transform: requires alpha > -1/(2L)");
  const DensityModel base = *this;
  const double c = 1.0 + 2.0 * alpha * L;
  auto xi = [alpha, L, c](double x) {
    return c * (x + L) / (1.0 + alpha * (x + L)) - L;
  };
  auto xi1 = [alpha, L, c](double x) {
    const double d = 1.0 + alpha * (x + L);
    return c / (d * d);
  };
  auto xi2 = [alpha, L, c](double x) {
    const double d = 1.0 + alpha * (x + L);
    return -2.0 * alpha * c / (d * d * d);
  };
  auto xi3 = [alpha, L, c](double x) {
    const double d = 1.0 + alpha * (x + L);
    return 6.0 * alpha * alpha * c / (d * d * d * d);
  };
  auto xi4 = [alpha, L, c](double x) {
    const double d = 1.0 + alpha * (x + L);
    return -24.0 * alpha * alpha * alpha * c / (d * d * d * d * d);
  };
  auto xi_inv = [alpha, L, c](double y) {
    const double yy = y + L;
    return yy / (c - alpha * yy) - L;
  };

  Spec s;
  s.name = base.name() + "+gottlieb";
  s.parameters = base.parameters();
  s.parameters.push_back(alpha);
  s.half_length = L;
  s.oscillation_frequency =
      base.oscillation_frequency() * (1.0 + std::fabs(alpha) * 4 * L);
  s.rho = [base, xi, xi1](double x) {
    const double xp = xi1(x);
    return xp * xp * base.rho(xi(x));
  };
  s.rho1 = [base, xi, xi1, xi2](double x) {
    const double u = xi(x), p = xi1(x), q = xi2(x);
    return 2.0 * p * q * base.rho(u) + p * p * p * base.rho_prime(u);
  };
  s.rho2 = [base, xi, xi1, xi2, xi3](double x) {
    const double u = xi(x), p = xi1(x), q = xi2(x), r = xi3(x);
    return 2.0 * q * q * base.rho(u) + 2.0 * p * r * base.rho(u) +
           5.0 * p * p * q * base.rho_prime(u) + p * p * p * p * base.rho_second(u);
  };
  s.rho3 = [base, xi, xi1, xi2, xi3, xi4](double x) {
    const double u = xi(x), p = xi1(x), q = xi2(x), r = xi3(x), t = xi4(x);
    return 6.0 * q * r * base.rho(u) + 2.0 * p * t * base.rho(u) +
           (12.0 * p * q * q + 7.0 * p * p * r) * base.rho_prime(u) +
           9.0 * p * p * p * q * base.rho_second(u) +
           p * p * p * p * p * base.rho_third(u);
  };
  // sigma_bar(x) = sigma(xi(x)) since xi(-L) = -L, xi(L) = L and xi' > 0
  s.sigma_closed = [base, xi](double x) { return base.sigma(xi(x)); };
  s.sigma_inverse_closed = [base, xi_inv](double sv) {
    return xi_inv(base.sigma_inverse(sv));
  };
  // V in the sigma variable is invariant under the map (that is what makes
  // the family isospectral), so sigma-space callables are inherited.
  s.v_of_sigma = [base](double sv) { return base.potential_in_sigma(sv); };
  if (base.max_sigma_derivative_order() > 7) {
    s.v_sigma_derivative = [base](double sv, int order) {
      return base.potential_sigma_derivative(sv, order);
    };
  }
  if (base.has_complex_potential()) {
    s.v_of_sigma_complex = [base](std::complex<double> z) {
      return base.potential_sigma_complex(z);
    };
  }
  return DensityModel(std::move(s));
}

double potential_V(const DensityModel& m, double x) { return m.potential(x); }
double sigma_inverse(const DensityModel& m, double s) { return m.sigma_inverse(s); }
double potential_V_sigma_derivative(const DensityModel& m, double s, int order) {
  return m.potential_sigma_derivative(s, order);
}
DensityModel gottlieb_transform(const DensityModel& m, double alpha) {
  return m.gottlieb_transform(alpha);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace density {

DensityModel uniform(double rho0, double half_length) {
  if (!(rho0 > 0)) throw std::invalid_argument("uniform: rho0 > 0");
  DensityModel::Spec s;
  s.name = "uniform";
  s.parameters = {rho0, half_length};
  s.half_length = half_length;
  const double sq = std::sqrt(rho0);
  const double L = half_length;
  s.rho = [rho0](double) { return rho0; };
  s.rho1 = [](double) { return 0.0; };
  s.rho2 = [](double) { return 0.0; };
  s.rho3 = [](double) { return 0.0; };
  s.sigma_closed = [sq, L](double x) { return sq * (x + L); };
  s.sigma_inverse_closed = [sq, L](double v) { return v / sq - L; };
  s.v_of_sigma = [](double) { return 0.0; };
  s.v_sigma_derivative = [](double, int) { return 0.0; };
  s.v_of_sigma_complex = [](std::complex<double>) {
    return std::complex<double>(0.0);
  };
  return DensityModel(std::move(s));
}

DensityModel borg(double c1, double c2, double kappa, double half_length) {
  DensityModel::Spec s;
  s.name = "borg";
  s.parameters = {c1, c2, kappa, half_length};
  s.half_length = half_length;
  const double A = 256.0 * c1 * c1;
  const double cc = c1 * c1;
  auto D = [cc, c2, kappa](double x) {
    const double b = c2 + x;
    return cc * b * b - 256.0 * kappa;
  };
  s.rho = [A, D](double x) {
    const double d = D(x);
    return A / (d * d);
  };
  s.rho1 = [A, D, cc, c2](double x) {
    const double d = D(x);
    const double d1 = 2.0 * cc * (c2 + x);
    return -2.0 * A * d1 / (d * d * d);
  };
  s.rho2 = [A, D, cc, c2](double x) {
    const double d = D(x);
    const double d1 = 2.0 * cc * (c2 + x);
    const double d2 = 2.0 * cc;
    return A * (6.0 * d1 * d1 / (d * d * d * d) - 2.0 * d2 / (d * d * d));
  };
  s.rho3 = [A, D, cc, c2](double x) {
    const double d = D(x);
    const double d1 = 2.0 * cc * (c2 + x);
    const double d2 = 2.0 * cc;
    return A * (-24.0 * d1 * d1 * d1 / (d * d * d * d * d) +
                18.0 * d1 * d2 / (d * d * d * d));
  };
  // V is identically kappa for this family
  s.v_of_sigma = [kappa](double) { return kappa; };
  s.v_sigma_derivative = [](double, int) { return 0.0; };
  s.v_of_sigma_complex = [kappa](std::complex<double>) {
    return std::complex<double>(kappa);
  };
  if (kappa == 0.0) {
    const double ac1 = std::fabs(c1);
    const double L = half_length;
    if (c2 - L <= 0.0 && c2 + L >= 0.0)
      throw std::domain_error("borg: c2 + x vanishes inside the string");
    s.sigma_closed = [ac1, c2, L](double x) {
      return (16.0 / ac1) * (1.0 / (c2 - L) - 1.0 / (c2 + x));
    };
  }
  return DensityModel(std::move(s));
}

DensityModel borg_alpha(double alpha, double half_length) {
  if (alpha == 0.0 || alpha <= -1.0)
    throw std::invalid_argument("borg_alpha: requires alpha > -1, alpha != 0");
  const double c1 = 16.0 * alpha * alpha / (1.0 + alpha);
  const double c2 = half_length + 1.0 / alpha;
  return borg(c1, c2, 0.0, half_length);
}

DensityModel horgan(double a) {
  if (!(a > -1.0) || a == 0.0)
    throw std::invalid_argument("horgan: requires a > -1, a != 0");
  DensityModel::Spec s;
  s.name = "horgan";
  s.parameters = {a};
  s.half_length = 0.5;
  const double A = (a + 2.0) * (a + 2.0) / 2.0;
  const double up = 2.0 * a * (a + 2.0);
  auto u = [a](double x) { return a * (a + 2.0) * (2.0 * x + 1.0) + 2.0; };
  s.rho = [A, u](double x) { return A / u(x); };
  s.rho1 = [A, u, up](double x) {
    const double v = u(x);
    return -A * up / (v * v);
  };
  s.rho2 = [A, u, up](double x) {
    const double v = u(x);
    return 2.0 * A * up * up / (v * v * v);
  };
  s.rho3 = [A, u, up](double x) {
    const double v = u(x);
    return -6.0 * A * up * up * up / (v * v * v * v);
  };
  s.sigma_closed = [a, u](double x) {
    return (std::sqrt(2.0 * u(x)) - 2.0) / (2.0 * a);
  };
  s.sigma_inverse_closed = [a](double sv) {
    const double root = 2.0 * a * sv + 2.0;
    const double uu = 0.5 * root * root;
    return ((uu - 2.0) / (a * (a + 2.0)) - 1.0) / 2.0;
  };
  s.v_of_sigma = [a](double sv) {
    const double d = 1.0 + a * sv;
    return 0.75 * a * a / (d * d);
  };
  s.v_sigma_derivative = [a](double sv, int order) {
    // d^m/ds^m of (3 a^2/4)(1 + a s)^-2 = (3 a^2/4)(-a)^m (m+1)!/(1+a s)^{m+2}
    double fact = 1.0;
    for (int k = 2; k <= order + 1; ++k) fact *= k;
    const double d = 1.0 + a * sv;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return 0.75 * a * a * sign * std::pow(a, order) * fact / std::pow(d, order + 2);
  };
  s.v_of_sigma_complex = [a](std::complex<double> z) {
    const std::complex<double> d = 1.0 + a * z;
    return 0.75 * a * a / (d * d);
  };
  return DensityModel(std::move(s));
}

DensityModel quartic() {
  DensityModel::Spec s;
  s.name = "quartic";
  s.half_length = kPi / 2.0;
  auto b = [](double x) { return x + 1.5 * kPi; };
  s.rho = [b](double x) {
    const double v = b(x);
    return v * v * v * v;
  };
  s.rho1 = [b](double x) {
    const double v = b(x);
    return 4.0 * v * v * v;
  };
  s.rho2 = [b](double x) {
    const double v = b(x);
    return 12.0 * v * v;
  };
  s.rho3 = [b](double x) { return 24.0 * b(x); };
  const double pi3 = kPi * kPi * kPi;
  s.sigma_closed = [pi3](double x) {
    return (8.0 * x * x * x + 36.0 * kPi * x * x + 54.0 * kPi * kPi * x +
            19.0 * pi3) /
           24.0;
  };
  // sigma = (b^3 - pi^3)/3
  s.sigma_inverse_closed = [pi3](double sv) {
    return std::cbrt(3.0 * sv + pi3) - 1.5 * kPi;
  };
  s.v_of_sigma = [pi3](double sv) {
    const double d = 3.0 * sv + pi3;
    return -2.0 / (d * d);
  };
  s.v_sigma_derivative = [pi3](double sv, int order) {
    double fact = 1.0;
    for (int k = 2; k <= order + 1; ++k) fact *= k;
    const double d = 3.0 * sv + pi3;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return -2.0 * sign * std::pow(3.0, order) * fact / std::pow(d, order + 2);
  };
  s.v_of_sigma_complex = [pi3](std::complex<double> z) {
    const std::complex<double> d = 3.0 * z + pi3;
    return -2.0 / (d * d);
  };
  return DensityModel(std::move(s));
}

DensityModel oscillating() {
  DensityModel::Spec s;
  s.name = "oscillating";
  s.half_length = 0.5;
  const double w = 100.0 * kPi;
  s.oscillation_frequency = 100.0;  // V carries the doubled frequency
  s.rho = [w](double x) {
    const double v = 2.0 + std::sin(w * x);
    return v * v;
  };
  s.rho1 = [w](double x) {
    return (4.0 + 2.0 * std::sin(w * x)) * w * std::cos(w * x);
  };
  s.rho2 = [w](double x) {
    const double sn = std::sin(w * x), cs = std::cos(w * x);
    return w * w * (2.0 * cs * cs - sn * (4.0 + 2.0 * sn));
  };
  s.rho3 = [w](double x) {
    const double sn = std::sin(w * x), cs = std::cos(w * x);
    return -4.0 * w * w * w * cs * (1.0 + 2.0 * sn);
  };
  s.sigma_closed = [w](double x) {
    const double sh = std::sin(0.5 * w * x);
    return 1.0 + 2.0 * x + sh * sh / (0.5 * w);
  };
  return DensityModel(std::move(s));
}

DensityModel eps_oscillating(double eps) {
  if (!(eps > 0) || eps > 0.5)
    throw std::invalid_argument("eps_oscillating: requires 0 < eps <= 1/2");
  DensityModel::Spec s;
  s.name = "eps_oscillating";
  s.parameters = {eps};
  s.half_length = 0.5;
  s.oscillation_frequency = 1.0 / eps;
  const double w = 2.0 * kPi / eps;
  s.rho = [w](double x) { return 2.0 + std::sin(w * (x + 0.5)); };
  s.rho1 = [w](double x) { return w * std::cos(w * (x + 0.5)); };
  s.rho2 = [w](double x) { return -w * w * std::sin(w * (x + 0.5)); };
  s.rho3 = [w](double x) { return -w * w * w * std::cos(w * (x + 0.5)); };
  const double m = 2.0 / 3.0;
  const double e14 = specfun::elliptic_E_incomplete(kPi / 4.0, m);
  s.sigma_closed = [eps, m, e14](double x) {
    const double phi = kPi * (eps - 4.0 * x - 2.0) / (4.0 * eps);
    return std::sqrt(3.0) * eps / kPi *
           (e14 - specfun::elliptic_E_incomplete(phi, m));
  };
  return DensityModel(std::move(s));
}

DensityModel from_table(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 8)
    throw std::invalid_argument("from_table: need at least 8 samples");
  std::vector<std::pair<double, double>> pts = samples;
  std::sort(pts.begin(), pts.end());
  const double L =
      std::max(std::fabs(pts.front().first), std::fabs(pts.back().first));
  const std::size_t n = pts.size();
  // natural cubic spline
  std::vector<double> xs(n), ys(n), y2(n, 0.0), tmp(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pts[i].first;
    ys[i] = pts[i].second;
    if (!(ys[i] > 0)) throw std::domain_error("from_table: rho must be positive");
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
    const double p = sig * y2[i - 1] + 2.0;
    y2[i] = (sig - 1.0) / p;
    tmp[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) -
             (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    tmp[i] = (6.0 * tmp[i] / (xs[i + 1] - xs[i - 1]) - sig * tmp[i - 1]) / p;
  }
  for (std::size_t k = n - 1; k-- > 1;) y2[k] = y2[k] * y2[k + 1] + tmp[k];

  auto spline = [xs, ys, y2, n](double x) {
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (xs[mid] > x)
        hi = mid;
      else
        lo = mid;
    }
    const double h = xs[hi] - xs[lo];
    const double a = (xs[hi] - x) / h, b = (x - xs[lo]) / h;
    return a * ys[lo] + b * ys[hi] +
           ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * h * h / 6.0;
  };
  const double h = std::max(1e-5 * L, 1e-6);
  DensityModel::Spec s;
  s.name = "tabulated";
  s.half_length = L;
  s.finite_difference_mode = true;
  s.rho = spline;
  auto clampx = [L, h](double x) {
    return std::clamp(x, -L + 3.5 * h, L - 3.5 * h);
  };
  s.rho1 = [spline, h, clampx](double x) {
    return fd_derivative(spline, clampx(x), 1, h);
  };
  s.rho2 = [spline, h, clampx](double x) {
    return fd_derivative(spline, clampx(x), 2, h);
  };
  s.rho3 = [spline, h, clampx](double x) {
    return fd_derivative(spline, clampx(x), 3, h);
  };
  return DensityModel(std::move(s));
}

DensityModel by_name(const std::string& name, const std::vector<double>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() < k)
      throw std::invalid_argument("density::by_name(" + name + "): expected " +
                                  std::to_string(k) + " parameters");
  };
  if (name == "uniform")
    return uniform(p.size() > 0 ? p[0] : 1.0, p.size() > 1 ? p[1] : 0.5);
  if (name == "borg") {
    need(3);
    return borg(p[0], p[1], p[2], p.size() > 3 ? p[3] : 0.5);
  }
  if (name == "borg_alpha") {
    need(1);
    return borg_alpha(p[0], p.size() > 1 ? p[1] : 0.5);
  }
  if (name == "horgan") {
    need(1);
    return horgan(p[0]);
  }
  if (name == "quartic") return quartic();
  if (name == "oscillating") return oscillating();
  if (name == "eps_oscillating") {
    need(1);
    return eps_oscillating(p[0]);
  }
  throw std::invalid_argument("density::by_name: unknown density '" + name + "'");
}

}  // namespace density

}  // namespace strand
