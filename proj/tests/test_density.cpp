// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "strand/density.hpp"
#include "strand/quadrature.hpp"

using namespace strand;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("uniform density: V = 0, sigma linear") {
  const auto m = density::uniform(1.0, 0.5);
  CHECK(potential_V(m, 0.3) == 0.0);
  CHECK(m.sigma(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.sigma_total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.sigma_inverse(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(potential_V(m, 0.7), std::domain_error);
  CHECK_THROWS_AS(m.sigma_inverse(1.5), std::domain_error);
}

TEST_CASE("horgan density: sigma(L) = 1, V(sigma) closed form") {
  const auto m = density::horgan(1.0);
  CHECK(std::fabs(m.sigma_total() - 1.0) < 1e-13);
  // V at sigma = 0 is 3/4
  CHECK(m.potential_in_sigma(0.0) == doctest::Approx(0.75).epsilon(1e-13));
  // sigma_inverse(1) = +1/2
  CHECK(m.sigma_inverse(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  // V(sigma) from x-space potential agrees with the closed form
  for (double s : {0.1, 0.4, 0.9}) {
    const double x = m.sigma_inverse(s);
    CHECK(potential_V(m, x) ==
          doctest::Approx(m.potential_in_sigma(s)).epsilon(1e-11));
  }
  // V^(2j+1)(sigma0) = -(3/2)(j+1)(2j+1)!/(1+sigma0)^{2j+3}; j=0, s=0 -> -1.5
  CHECK(m.potential_sigma_derivative(0.0, 1) ==
        doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(m.potential_sigma_derivative(1.0, 3) ==
        doctest::Approx(-1.5 * 2 * 6 / std::pow(2.0, 5)).epsilon(1e-13));
}

TEST_CASE("quartic density: catalog facts") {
  const auto m = density::quartic();
  CHECK(std::fabs(m.sigma_total() - 7.0 * std::pow(kPi, 3) / 3.0) <
        1e-13 * m.sigma_total());
  // V(x=0) = -2/(3 pi/2)^6
  CHECK(potential_V(m, 0.0) ==
        doctest::Approx(-2.0 / std::pow(1.5 * kPi, 6)).epsilon(1e-13));
  // sigma_inverse at half the total, validated by re-applying sigma
  const double xh = m.sigma_inverse(0.5 * m.sigma_total());
  CHECK(std::fabs(m.sigma(xh) - 0.5 * m.sigma_total()) < 1e-12 * m.sigma_total());
  // quartic sigma(L)/2 = 7 pi^3/6 target from the polynomial
  CHECK(0.5 * m.sigma_total() == doctest::Approx(7.0 * std::pow(kPi, 3) / 6.0));
  // order-1 sigma derivative vs finite difference of V(sigma^. )
  const double s0 = 1.0;
  const double h = 1e-5;
  const double fd = (-m.potential_in_sigma(s0 + 2 * h) +
                     8 * m.potential_in_sigma(s0 + h) -
                     8 * m.potential_in_sigma(s0 - h) +
                     m.potential_in_sigma(s0 - 2 * h)) /
                    (12 * h);
  CHECK(m.potential_sigma_derivative(s0, 1) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("borg family with kappa = 0 has V identically zero") {
  const auto m = density::borg_alpha(0.7, 0.5);
  for (double x : {-0.49, -0.2, 0.0, 0.33, 0.49}) {
    CHECK(std::fabs(potential_V(m, x)) < 1e-12);
  }
  // consistency of derivatives happens at construction; sigma roundtrip:
  for (double s : {0.1, 0.5, 0.9}) {
    const double sv = s * m.sigma_total();
    CHECK(std::fabs(m.sigma(m.sigma_inverse(sv)) - sv) < 1e-11 * m.sigma_total());
  }
}

TEST_CASE("borg raw parameters with kappa != 0: V = kappa") {
  const auto m = density::borg(3.0, 2.0, -0.01, 0.5);
  for (double x : {-0.4, 0.0, 0.4}) {
    CHECK(potential_V(m, x) == doctest::Approx(-0.01).epsilon(1e-9));
  }
}

TEST_CASE("oscillating density: sigma closed form and total") {
  const auto m = density::oscillating();
  CHECK(std::fabs(m.sigma_total() - 2.0) < 1e-13);
  // quadrature oracle for sigma at an interior point
  const double x0 = 0.237;
  const double oracle = integrate_adaptive(
      [&](double y) { return m.sqrt_rho(y); }, -0.5, x0, 1e-12, 50.0);
  CHECK(std::fabs(m.sigma(x0) - oracle) < 1e-11);
}

TEST_CASE("eps-oscillating density: elliptic sigma matches quadrature") {
  const auto m = density::eps_oscillating(1.0 / 50);
  const double oracle = integrate_adaptive(
      [&](double y) { return m.sqrt_rho(y); }, -0.5, 0.5, 1e-13, 50.0);
  CHECK(std::fabs(m.sigma_total() - oracle) < 1e-11);
  // sigma(L) -> (2 sqrt3/pi) E(2/3) as eps -> 0
  const auto m3 = density::eps_oscillating(1e-3);
  CHECK(std::fabs(m3.sigma_total() - 1.390656513186149) < 1e-4);
}

TEST_CASE("sigma_inverse round trip on random interior points") {
  unsigned state = 99u;
  auto next = [&] {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) * (1.0 / 16777216.0);
  };
  for (const auto& m : {density::quartic(), density::horgan(1.0),
                        density::oscillating()}) {
    for (int i = 0; i < 100; ++i) {
      const double s = (0.005 + 0.99 * next()) * m.sigma_total();
      const double x = m.sigma_inverse(s);
      CHECK(std::fabs(m.sigma(x) - s) <= 1e-11 * m.sigma_total());
    }
  }
}

TEST_CASE("gottlieb transform: identity at alpha = 0") {
  const auto m = density::quartic();
  const auto t = gottlieb_transform(m, 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double x = -m.half_length() + 2 * m.half_length() * i / 100.0;
    CHECK(std::fabs(t.rho(x) - m.rho(x)) < 1e-14 * m.rho(x));
  }
}

TEST_CASE("gottlieb transform of the quartic matches the closed caption form") {
  const double alpha = -0.00566;
  const auto t = gottlieb_transform(density::quartic(), alpha);
  auto caption = [alpha](double x) {
    const double num = 16.0 * std::pow(kPi * alpha + 1.0, 2) *
                       std::pow(kPi * (2 * alpha * (2 * x + kPi) + 3) + 2 * x, 4);
    return num / std::pow(alpha * (2 * x + kPi) + 2.0, 8);
  };
  for (double x : {-1.5, -0.7, 0.0, 0.9, 1.5}) {
    CHECK(t.rho(x) == doctest::Approx(caption(x)).epsilon(1e-13));
  }
}

TEST_CASE("gottlieb transform preserves sigma(L) and V(sigma)") {
  const auto m = density::quartic();
  for (double alpha : {0.05, -0.02}) {
    const auto t = gottlieb_transform(m, alpha);
    CHECK(std::fabs(t.sigma_total() - m.sigma_total()) < 1e-11 * m.sigma_total());
    // x-space potential of the transform equals V(sigma) at the mapped point
    for (double x : {-1.2, 0.0, 0.8}) {
      const double vx = potential_V(t, x);
      const double vs = t.potential_in_sigma(t.sigma(x));
      CHECK(vx == doctest::Approx(vs).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(gottlieb_transform(m, -1.0 / (2 * m.half_length())),
                  std::invalid_argument);
}

TEST_CASE("tabulated density: finite-difference mode") {
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i <= 400; ++i) {
    const double x = -0.5 + i / 400.0;
    rows.emplace_back(x, 1.0 + 0.2 * x + 0.05 * std::sin(3 * x));
  }
  const auto m = density::from_table(rows);
  CHECK(m.finite_difference_mode());
  CHECK(m.rho(0.21) == doctest::Approx(1.0 + 0.2 * 0.21 + 0.05 * std::sin(0.63))
                           .epsilon(1e-8));
  // FD first derivative roughly matches the analytic slope
  CHECK(m.rho_prime(0.1) ==
        doctest::Approx(0.2 + 0.15 * std::cos(0.3)).epsilon(1e-4));
  CHECK(m.sigma_total() > 0);
}

TEST_CASE("catalog by_name dispatch") {
  CHECK(density::by_name("horgan", {1.0}).name() == "horgan");
  CHECK(density::by_name("quartic", {}).sigma_total() ==
        doctest::Approx(7 * std::pow(kPi, 3) / 3));
  CHECK_THROWS_AS(density::by_name("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(density::by_name("horgan", {}), std::invalid_argument);
}

TEST_CASE("construction rejects sign-indefinite densities") {
  DensityModel::Spec s;
  s.name = "bad";
  s.half_length = 0.5;
  s.rho = [](double x) { return x; };  // negative on half the domain
  s.rho1 = [](double) { return 1.0; };
  s.rho2 = [](double) { return 0.0; };
  s.rho3 = [](double) { return 0.0; };
  CHECK_THROWS_AS(DensityModel(std::move(s)), std::domain_error);
}

TEST_CASE("construction rejects inconsistent derivatives") {
  DensityModel::Spec s;
  s.name = "bad-deriv";
  s.half_length = 0.5;
  s.rho = [](double x) { return 1.0 + 0.3 * x * x; };
  s.rho1 = [](double x) { return 0.6 * x + 0.05; };  // off by 0.05
  s.rho2 = [](double) { return 0.6; };
  s.rho3 = [](double) { return 0.0; };
  CHECK_THROWS_AS(DensityModel(std::move(s)), std::domain_error);
}
