// SPDX-License-Identifier: Apache-2.0
#include "strand/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "strand/parallel.hpp"
#include "strand/quadrature.hpp"

namespace strand {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<int> window_states(int n, int window, int max_n) {
  std::set<int> w;
  for (int k = std::max(1, n - window); k <= std::min(max_n, n + window); ++k)
    if (k != n) w.insert(k);
  for (int k = 1; k <= std::min(20, max_n); ++k)
    if (k != n) w.insert(k);
  return {w.begin(), w.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// DPT
// ---------------------------------------------------------------------------

PerturbationSeries dpt_energy(const DensityModel& model, int n, int order, int K) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("dpt_energy: order in 0..3");
  if (n < 1 || K < n + 1) throw std::invalid_argument("dpt_energy: K > n >= 1");
  const double L = model.half_length();
  const double rho0 =
      integrate_adaptive([&](double x) { return model.rho(x); }, -L, L, 1e-13,
                         model.oscillation_frequency() > 0
                             ? std::optional<double>(model.oscillation_frequency())
                             : std::nullopt) /
      (2.0 * L);
  if (!(rho0 > 0)) throw std::domain_error("dpt_energy: non-positive mean density");
  auto eps = [&](int k) { return k * kPi / (2 * L) * (k * kPi / (2 * L)); };

  // <j|drho|k> in the uniform basis, drho = rho/rho0 - 1.  Every element is
  // a difference of two cosine transforms: 2K+1 quadratures serve the whole
  // K x K table.
  const double freq = std::max(model.oscillation_frequency(), 1.0 / (2 * L));
  std::vector<double> ct(2 * K + 1, 0.0);
  parallel_for(ct.size(), [&](std::size_t m) {
    ct[m] = integrate_adaptive(
        [&](double x) {
          return (0.5 / L) *
                 std::cos(static_cast<double>(m) * kPi * (x + L) / (2 * L)) *
                 (model.rho(x) / rho0 - 1.0);
        },
        -L, L, 1e-13, freq + static_cast<double>(m) / (4.0 * L));
  });
  auto d = [&](int j, int k) { return ct[std::abs(j - k)] - ct[j + k]; };

  PerturbationSeries out;
  out.n = n;
  out.engine = PerturbationEngine::DPT;
  out.order = order;
  out.corrections[0] = eps(n) / rho0;
  if (order == 0) return out;

  const double dnn = d(n, n);
  out.corrections[1] = -eps(n) * dnn / rho0;
  if (order == 1) return out;

  double second = 0.0, last = 0.0;
  for (int k = 1; k <= K; ++k) {
    if (k == n) continue;
    const double w = eps(n) - eps(k);
    if (w == 0.0) throw std::logic_error("dpt_energy: degenerate level spacing");
    last = eps(n) * eps(n) * d(n, k) * d(n, k) / w;
    second += last;
  }
  out.corrections[2] = (eps(n) * dnn * dnn + second) / rho0;
  out.truncation_last_term = std::fabs(last / rho0);
  out.truncation_states = K;
  if (order == 2) return out;
  double s_w2 = 0.0, s_w1 = 0.0, dbl = 0.0;
  for (int k = 1; k <= K; ++k) {
    if (k == n) continue;
    const double w = eps(n) - eps(k);
    s_w2 += d(n, k) * d(n, k) / (w * w);
    s_w1 += d(n, k) * d(n, k) / w;
  }
  for (int k = 1; k <= K; ++k) {
    if (k == n) continue;
    const double wk = eps(n) - eps(k);
    for (int m = 1; m <= K; ++m) {
      if (m == n) continue;
      const double wm = eps(n) - eps(m);
      dbl += d(n, k) * d(k, m) * d(m, n) / (wk * wm);
    }
  }
  const double e3 = -eps(n) * dnn * dnn * dnn +
                    std::pow(eps(n), 3) * dnn * s_w2 -
                    3.0 * eps(n) * eps(n) * dnn * s_w1 -
                    std::pow(eps(n), 3) * dbl;
  out.corrections[3] = e3 / rho0;
  return out;
}

double dpt_variational_bound(const DensityModel& model) {
  const double L = model.half_length();
  // <O>_Psi = int (d/dx [Psi/sqrt(rho)])^2 dx with the uniform-string
  // fundamental Psi = cos(pi x/2L)/sqrt(L)
  const double freq = std::max(model.oscillation_frequency(), 1.0 / (2 * L));
  return integrate_adaptive(
      [&](double x) {
        const double r = model.rho(x);
        const double r1 = model.rho_prime(x);
        const double c = std::cos(kPi * x / (2 * L));
        const double s = std::sin(kPi * x / (2 * L));
        const double w1 = (-kPi / (2 * L) * s / std::sqrt(r) -
                           0.5 * c * r1 / std::pow(r, 1.5)) /
                          std::sqrt(L);
        return w1 * w1;
      },
      -L, L, 1e-13, freq);
}

// ---------------------------------------------------------------------------
// WKBPT / iWKBPT
// ---------------------------------------------------------------------------

PerturbationSeries perturbation_series_from_table(const MatrixElementTable& t,
                                                  double sigma_L, int n, int order,
                                                  int window,
                                                  PerturbationEngine tag) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("perturbation series: order in 0..3");
  if (n < 1 || n > t.max_n())
    throw std::invalid_argument("perturbation series: n outside table");
  PerturbationSeries out;
  out.n = n;
  out.engine = tag;
  out.order = order;
  const double s2 = sigma_L * sigma_L / (kPi * kPi);
  out.corrections[0] = n * kPi / sigma_L * (n * kPi / sigma_L);
  if (order == 0) return out;
  out.corrections[1] = t(n, n);
  if (order == 1) return out;

  if (t.max_n() < n + 1)
    throw std::invalid_argument("perturbation series: table too small for order 2");
  const std::vector<int> W = window_states(n, window, t.max_n());
  out.truncation_states = static_cast<int>(W.size());
  double second = 0.0;
  for (int k : W) {
    const double term =
        s2 * t(n, k) * t(n, k) / (static_cast<double>(n) * n - static_cast<double>(k) * k);
    second += term;
    if (k == W.back()) out.truncation_last_term = std::fabs(term);
  }
  out.corrections[2] = second;
  if (order == 2) return out;

  double dbl = 0.0, sq = 0.0;
  for (int k : W) {
    const double dk = static_cast<double>(n) * n - static_cast<double>(k) * k;
    sq += t(n, k) * t(n, k) / (dk * dk);
    for (int l : W) {
      const double dl = static_cast<double>(n) * n - static_cast<double>(l) * l;
      dbl += t(n, k) * t(k, l) * t(l, n) / (dk * dl);
    }
  }
  out.corrections[3] = s2 * s2 * (dbl - t(n, n) * sq);
  return out;
}

PerturbationSeries wkbpt_energy(const WkbBasis& basis, const MatrixElementTable& t,
                                int n, int order, int window) {
  return perturbation_series_from_table(t, basis.model().sigma_total(), n, order,
                                        window, PerturbationEngine::WKBPT);
}

EigenfunctionCorrections wkbpt_eigenfunction(const WkbBasis& basis,
                                             const MatrixElementTable& t, int n,
                                             int order) {
  if (order < 0 || order > 3)
    throw std::invalid_argument("wkbpt_eigenfunction: order in 0..3");
  const int K = t.max_n();
  if (n < 1 || n > K)
    throw std::invalid_argument("wkbpt_eigenfunction: n outside table");
  const double sL = basis.model().sigma_total();
  // D_k = E0_n - E0_k = (pi/sL)^2 (n^2 - k^2)
  auto D = [&](int k) {
    return kPi * kPi / (sL * sL) *
           (static_cast<double>(n) * n - static_cast<double>(k) * k);
  };
  EigenfunctionCorrections out;
  out.n = n;
  out.order = order;
  if (order == 0) return out;

  std::vector<double> c1(K, 0.0), c2(K, 0.0), c3(K, 0.0);
  for (int k = 1; k <= K; ++k)
    if (k != n) c1[k - 1] = t(k, n) / D(k);
  out.coef.push_back(c1);
  if (order >= 2) {
    for (int k = 1; k <= K; ++k) {
      if (k == n) continue;
      double s = 0.0;
      for (int j = 1; j <= K; ++j)
        if (j != n) s += t(k, j) * t(j, n) / (D(k) * D(j));
      c2[k - 1] = s - t(n, n) * t(k, n) / (D(k) * D(k));
    }
    out.coef.push_back(c2);
  }
  if (order >= 3) {
    // standard Rayleigh-Schroedinger recursion, intermediate normalization:
    // c3_k = [sum_m V_km c2_m - E1 c2_k - E2 c1_k] / D_k
    double e2 = 0.0;
    for (int m = 1; m <= K; ++m)
      if (m != n) e2 += t(n, m) * t(m, n) / D(m);
    for (int k = 1; k <= K; ++k) {
      if (k == n) continue;
      double s = 0.0;
      for (int m = 1; m <= K; ++m)
        if (m != n) s += t(k, m) * c2[m - 1];
      c3[k - 1] = (s - t(n, n) * c2[k - 1] - e2 * c1[k - 1]) / D(k);
    }
    out.coef.push_back(c3);
  }
  return out;
}

double mixed_matrix_element_O(const DensityModel& trial,
                              const DensityModel& physical, int n, int k,
                              double tol) {
  if (n < 1 || k < 1)
    throw std::invalid_argument("mixed_matrix_element_O: n, k >= 1");
  const double L = trial.half_length();
  if (std::fabs(physical.half_length() - L) > 1e-14)
    throw std::invalid_argument("mixed_matrix_element_O: domain mismatch");
  const double sLt = trial.sigma_total();
  const double amp = std::sqrt(2.0 / sLt);
  auto uprime = [&](int idx, double x) {
    // d/dx [ trial_rho^{1/4} / sqrt(physical_rho) sin(idx pi sigma~/sL~) ]
    const double rt = trial.rho(x);
    const double rt1 = trial.rho_prime(x);
    const double rp = physical.rho(x);
    const double rp1 = physical.rho_prime(x);
    const double A = std::pow(rt, 0.25) / std::sqrt(rp);
    const double A1 = 0.25 * rt1 * std::pow(rt, -0.75) / std::sqrt(rp) -
                      0.5 * std::pow(rt, 0.25) * rp1 / std::pow(rp, 1.5);
    const double ph = idx * kPi * trial.sigma(x) / sLt;
    return amp * (A1 * std::sin(ph) +
                  A * std::cos(ph) * idx * kPi * std::sqrt(rt) / sLt);
  };
  const double cycles =
      (0.5 * (n + k) +
       (trial.oscillation_frequency() + physical.oscillation_frequency()) * 2 * L) /
      (2 * L);
  return integrate_adaptive(
      [&](double x) { return uprime(n, x) * uprime(k, x); }, -L, L, tol, cycles);
}

PerturbationSeries iwkbpt_energy(const DensityModel& trial,
                                 const DensityModel& physical, int n, int order,
                                 int K, double tol, int window) {
  if (K < n + 1) throw std::invalid_argument("iwkbpt_energy: K > n");
  const double sLt = trial.sigma_total();
  // W = O - Q~ in the trial basis: mixed elements, diagonal shifted by the
  // Q~ eigenvalue
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= K; ++a)
    for (int b = 1; b <= a; ++b) pairs.emplace_back(a, b);
  std::vector<double> vals(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [a, b] = pairs[i];
    double v = mixed_matrix_element_O(trial, physical, a, b, tol);
    if (a == b) v -= a * kPi / sLt * (a * kPi / sLt);
    vals[i] = v;
  });
  const MatrixElementTable t =
      MatrixElementTable::from_lower_triangle(K, tol, "W", std::move(vals));
  return perturbation_series_from_table(t, sLt, n, order, window,
                                        PerturbationEngine::IWKBPT);
}

double sigma_residual(const DensityModel& trial, const DensityModel& physical,
                      int n, int m, double tol) {
  if (m < 1) throw std::invalid_argument("sigma_residual: m >= 1");
  const int lo = std::max(1, n - m);
  const int hi = n + m;
  std::vector<double> terms;
  for (int k = lo; k <= hi; ++k) {
    if (k == n) continue;
    const double v = mixed_matrix_element_O(trial, physical, n, k, tol);
    terms.push_back(v * v);
  }
  return pairwise_sum(terms);
}

double ratio_first_order(const DensityModel& model, PerturbationEngine engine) {
  const double L = model.half_length();
  if (engine == PerturbationEngine::DPT) {
    const double rho0 =
        integrate_adaptive([&](double x) { return model.rho(x); }, -L, L, 1e-13,
                           std::max(model.oscillation_frequency(), 1.0 / (2 * L))) /
        (2.0 * L);
    auto elem = [&](int j) {
      return integrate_adaptive(
          [&](double x) {
            const double p = std::sin(j * kPi * (x + L) / (2 * L));
            return (1.0 / L) * p * p * (model.rho(x) / rho0 - 1.0);
          },
          -L, L, 1e-13,
          std::max(model.oscillation_frequency(), 1.0 / (2 * L)) + j / (2.0 * L));
    };
    return 4.0 * (1.0 - elem(2) + elem(1));
  }
  if (engine == PerturbationEngine::WKBPT) {
    const WkbBasis b(model);
    const double sL = model.sigma_total();
    return 4.0 + sL * sL / (kPi * kPi) *
                     (b.matrix_element_V(2, 2) - 4.0 * b.matrix_element_V(1, 1));
  }
  throw std::invalid_argument("ratio_first_order: engine must be DPT or WKBPT");
}

}  // namespace strand
