// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "strand/chebyshev.hpp"
#include "strand/parallel.hpp"
#include "strand/quadrature.hpp"
#include "strand/wkb_basis.hpp"

using namespace strand;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double orthonormality_defect(const WkbBasis& b, int n, int m) {
  const auto& model = b.model();
  const double L = model.half_length();
  const double cycles =
      (0.5 * (n + m) + model.oscillation_frequency() * 2 * L) / (2 * L);
  const double v = integrate_adaptive(
      [&](double x) { return b.phi(n, x) * b.phi(m, x); }, -L, L, 1e-12, cycles);
  return std::fabs(v - (n == m ? 1.0 : 0.0));
}
}  // namespace

TEST_CASE("uniform basis reduces to uniform-string modes") {
  const WkbBasis b(density::uniform(1.0, 0.5));
  for (double x : {-0.3, 0.0, 0.2}) {
    CHECK(b.phi(2, x) ==
          doctest::Approx(std::sqrt(2.0) * std::sin(2 * kPi * (x + 0.5)))
              .epsilon(1e-13));
  }
  CHECK(b.matrix_element_V(3, 5) == doctest::Approx(0.0));
  CHECK(b.matrix_element_V(4, 4) == doctest::Approx(0.0));
}

TEST_CASE("orthonormality across the catalog") {
  for (const auto& m : {density::quartic(), density::horgan(1.0),
                        density::borg_alpha(0.6, 0.5)}) {
    const WkbBasis b(m);
    for (int n : {1, 3, 9, 25, 40})
      for (int k : {1, 3, 9, 25, 40})
        if (k <= n) CHECK(orthonormality_defect(b, n, k) < 1e-10);
  }
  const WkbBasis osc(density::oscillating());
  for (int n : {1, 7, 40})
    for (int k : {1, 7, 40})
      if (k <= n) CHECK(orthonormality_defect(osc, n, k) < 1e-10);
}

TEST_CASE("quartic <phi1|phi1> = 1 by quadrature") {
  const WkbBasis b(density::quartic());
  CHECK(orthonormality_defect(b, 1, 1) < 1e-11);
}

namespace {
// relative L2 residual of (Q - n^2 pi^2/sL^2) phi_n on a degree-adapted grid
double q_relation_residual(const DensityModel& m, int n) {
  const WkbBasis b(m);
  const double L = m.half_length();
  const double sL = m.sigma_total();
  const double eps_n = n * kPi / sL * (n * kPi / sL);
  auto u = GridFunction::from_function_adaptive(
      [&](double x) { return b.phi(n, x) / m.sqrt_rho(x); }, -L, L, 1e-13, 64,
      2048);
  auto upp = u.derivative().derivative();
  const int d = u.degree();
  double num = 0.0, den = 0.0;
  for (int j = d / 10; j <= d - d / 10; ++j) {
    const double x = u.nodes()[j];
    const double phi = b.phi(n, x);
    const double resid =
        -upp(x) / m.sqrt_rho(x) - m.potential(x) * phi - eps_n * phi;
    num += resid * resid;
    den += phi * phi;
  }
  return std::sqrt(num / den) / eps_n;
}
}  // namespace

TEST_CASE("Q eigenrelation on smooth catalog densities") {
  for (const auto& m : {density::uniform(1.0, 0.5), density::horgan(1.0),
                        density::quartic(), density::borg_alpha(0.6, 0.5)}) {
    for (int n : {1, 4, 10}) {
      CHECK(q_relation_residual(m, n) < 1e-8);
    }
  }
}

TEST_CASE("Borg family: phi_1 is an exact eigenfunction") {
  const auto m = density::borg_alpha(0.5, 0.5);
  const WkbBasis b(m);
  const double L = m.half_length();
  const double sL = m.sigma_total();
  auto u = GridFunction::from_function_adaptive(
      [&](double x) { return b.phi(1, x) / m.sqrt_rho(x); }, -L, L, 1e-13, 64,
      2048);
  auto upp = u.derivative().derivative();
  const int d = u.degree();
  double num = 0.0, den = 0.0;
  const double E1 = kPi * kPi / (sL * sL);
  for (int j = d / 10; j <= d - d / 10; ++j) {
    const double x = u.nodes()[j];
    const double phi = b.phi(1, x);
    const double resid = -upp(x) / m.sqrt_rho(x) - E1 * phi;
    num += resid * resid;
    den += phi * phi;
  }
  CHECK(std::sqrt(num / den) / E1 < 1e-8);
}

TEST_CASE("quartic closed forms match quadrature elements") {
  const WkbBasis b(density::quartic());
  for (int n : {1, 5, 20}) {
    const double quad = b.matrix_element_O(n, n, 1e-12);
    const double closed = quartic_matrix_element(n, n);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-10));
  }
  CHECK(b.matrix_element_O(1, 2, 1e-12) ==
        doctest::Approx(quartic_matrix_element(1, 2)).epsilon(1e-10));
  CHECK(b.matrix_element_O(1, 3, 1e-12) ==
        doctest::Approx(quartic_matrix_element(1, 3)).epsilon(1e-10));
  // formula symmetric under swap
  CHECK(quartic_matrix_element(2, 7) == quartic_matrix_element(7, 2));
  // <1|O|1> = E1^(0) + E1^(1), the first-order bound
  CHECK(quartic_matrix_element(1, 1) ==
        doctest::Approx(0.001745807766).epsilon(1e-9));
  // V-element = O-element off the diagonal for the physical basis
  CHECK(b.matrix_element_V(2, 5, 1e-12) ==
        doctest::Approx(quartic_matrix_element(2, 5)).epsilon(1e-9));
}

TEST_CASE("asymptotic elements: Horgan leading off-diagonal and diagonal limit") {
  const auto m = density::horgan(1.0);
  const WkbBasis b(m);
  const double sL = m.sigma_total();

  // leading off-diagonal behaviour; valid once both k-n and k+n are large
  const int n = 200, k = 260;
  const double v1L = m.potential_sigma_derivative(sL, 1);
  const double v10 = m.potential_sigma_derivative(0.0, 1);
  const double lead = sL / (kPi * kPi) * 4.0 * k * n /
                      std::pow(static_cast<double>(k) * k - n * n, 2) *
                      (((k + n) % 2 ? -1.0 : 1.0) * v1L - v10);
  const double quad = b.matrix_element_V(n, k, 1e-14);
  CHECK(std::fabs(lead - quad) / std::fabs(quad) < 2e-3);

  // diagonal tends to <V> = 3/8
  const double diag500 = b.matrix_element_V(500, 500, 1e-13);
  CHECK(std::fabs(diag500 - 0.375) < 1e-5);

  // Appendix series vs quadrature within the first omitted term
  double est = 0.0;
  const double series = b.matrix_element_asymptotic(1, 2, 6, &est);
  const double exact = b.matrix_element_V(1, 2, 1e-13);
  CHECK(std::fabs(series - exact) <= 2.0 * est);
}

TEST_CASE("asymptotic diagonal error shrinks like n^{-(2 jmax + 4)}") {
  // jmax = 0 keeps the truncation error above quadrature noise over the
  // whole n range; at jmax >= 1 the signal would drown by n ~ 100
  const auto m = density::horgan(1.0);
  const WkbBasis b(m);
  const int jmax = 0;
  std::vector<double> ns = {50, 100, 200, 400};
  std::vector<double> errs;
  for (double n : ns) {
    const double quad =
        b.matrix_element_V(static_cast<int>(n), static_cast<int>(n), 1e-14);
    const double series = b.matrix_element_asymptotic(static_cast<int>(n),
                                                      static_cast<int>(n), jmax);
    errs.push_back(std::fabs(series - quad));
  }
  const double slope =
      std::log(errs.back() / errs.front()) / std::log(ns.back() / ns.front());
  CHECK(slope == doctest::Approx(-(2.0 * jmax + 4.0)).epsilon(0.5 / 4.0));
}

TEST_CASE("off-diagonal elements vanish for fixed k as n grows") {
  // <n|V|k> -> 0 for fixed k; note the fixed-gap element <n|V|n+1> instead
  // converges to the nonzero cos-transform of V, so only the fixed-k form
  // decays.
  const WkbBasis b(density::horgan(1.0));
  double prev = 1e9;
  for (int n : {50, 80, 120, 200}) {
    const double v = std::fabs(b.matrix_element_V(n, 2, 1e-14));
    CHECK(v < prev);
    prev = v;
  }
  // the fixed-gap limit: (1/sL) int cos(pi s/sL) V ds
  const auto& m = b.model();
  const double sL = m.sigma_total();
  const double limit = integrate_adaptive(
                           [&](double u) {
                             return std::cos(kPi * u) * m.potential_in_sigma(u * sL);
                           },
                           0.0, 1.0, 1e-13) ;
  double prevdev = 1e9;
  for (int n : {50, 120, 260}) {
    const double dev = std::fabs(b.matrix_element_V(n, n + 1, 1e-14) - limit);
    CHECK(dev < prevdev);
    prevdev = dev;
  }
}

TEST_CASE("matrix element table: assembly, symmetry, cache round trip") {
  const WkbBasis b(density::horgan(1.0));
  const auto t = MatrixElementTable::assemble(b, 8, 1e-11, "V");
  CHECK(t.max_n() == 8);
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= 8; ++k) CHECK(t(n, k) == t(k, n));
  CHECK(t(2, 3) == doctest::Approx(b.matrix_element_V(2, 3, 1e-11)).epsilon(1e-12));
  CHECK_THROWS_AS(t(0, 1), std::out_of_range);
  CHECK_THROWS_AS(t(1, 9), std::out_of_range);

  const std::string path = "/tmp/strand_table_cache_test.csv";
  t.save_csv(path);
  const auto r = MatrixElementTable::load_csv(path);
  CHECK(r.max_n() == t.max_n());
  CHECK(r.cache_key() == t.cache_key());
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) CHECK(r(n, k) == t(n, k));
  std::remove(path.c_str());
}

TEST_CASE("matrix element table: serial and parallel assembly agree exactly") {
  const WkbBasis b(density::quartic());
  set_parallel_enabled(false);
  const auto ts = MatrixElementTable::assemble_quartic_closed(12, "O");
  set_parallel_enabled(true);
  const auto tp = MatrixElementTable::assemble_quartic_closed(12, "O");
  for (int n = 1; n <= 12; ++n)
    for (int k = 1; k <= n; ++k) CHECK(ts(n, k) == tp(n, k));
}

TEST_CASE("W table for the physical basis equals the V table") {
  const WkbBasis b(density::horgan(1.0));
  const auto tv = MatrixElementTable::assemble(b, 6, 1e-11, "V");
  const auto tw = MatrixElementTable::assemble(b, 6, 1e-11, "W");
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(tw(n, k) == doctest::Approx(tv(n, k)).epsilon(5e-7));
}
