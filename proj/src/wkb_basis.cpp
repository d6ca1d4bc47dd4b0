// SPDX-License-Identifier: Apache-2.0
#include "strand/wkb_basis.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "strand/parallel.hpp"
#include "strand/quadrature.hpp"
#include "strand/specfun.hpp"

namespace strand {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

WkbBasis::WkbBasis(DensityModel model, int max_index)
    : model_(std::move(model)), max_index_(max_index) {
  if (max_index < 1) throw std::invalid_argument("WkbBasis: max_index >= 1");
}

double WkbBasis::phi(int n, double x) const {
  if (n < 1) throw std::invalid_argument("WkbBasis::phi: n >= 1");
  const double sL = model_.sigma_total();
  return std::sqrt(2.0 / sL) * std::pow(model_.rho(x), 0.25) *
         std::sin(n * kPi * model_.sigma(x) / sL);
}

double WkbBasis::u_prime(int n, double x) const {
  // u_n = phi_n / sqrt(rho) = sqrt(2/sL) rho^{-1/4} sin(n pi sigma/sL)
  const double sL = model_.sigma_total();
  const double r = model_.rho(x);
  const double r1 = model_.rho_prime(x);
  const double ph = n * kPi * model_.sigma(x) / sL;
  const double amp = std::sqrt(2.0 / sL);
  return amp * (-0.25 * r1 * std::pow(r, -1.25) * std::sin(ph) +
                std::pow(r, -0.25) * std::cos(ph) * n * kPi * std::sqrt(r) / sL);
}

double WkbBasis::matrix_element_V(int n, int k, double tol) const {
  if (n < 1 || k < 1) throw std::invalid_argument("matrix_element_V: n, k >= 1");
  const double sL = model_.sigma_total();
  // 2 int_0^1 sin(n pi u) sin(k pi u) V(x(u sL)) du
  const double cycles = 0.5 * (n + k) + model_.oscillation_frequency() *
                                            2.0 * model_.half_length();
  const QuadratureResult r = integrate_adaptive_full(
      [&](double u) {
        return 2.0 * std::sin(n * kPi * u) * std::sin(k * kPi * u) *
               model_.potential_in_sigma(u * sL);
      },
      0.0, 1.0, tol, cycles);
  if (!r.converged)
    throw std::runtime_error("matrix_element_V: quadrature did not converge");
  return r.value;
}

double WkbBasis::matrix_element_O(int n, int k, double tol) const {
  if (n < 1 || k < 1) throw std::invalid_argument("matrix_element_O: n, k >= 1");
  const double L = model_.half_length();
  const double cycles =
      (0.5 * (n + k) + model_.oscillation_frequency() * 2.0 * L) / (2.0 * L);
  const QuadratureResult r = integrate_adaptive_full(
      [&](double x) { return u_prime(n, x) * u_prime(k, x); }, -L, L, tol,
      cycles);
  if (!r.converged)
    throw std::runtime_error("matrix_element_O: quadrature did not converge");
  return r.value;
}

double WkbBasis::matrix_element_asymptotic(int n, int k, int j_max,
                                           double* error_estimate) const {
  if (n < 1) throw std::invalid_argument("matrix_element_asymptotic: n >= 1");
  if (2 * j_max + 1 > model_.max_sigma_derivative_order())
    throw std::invalid_argument(
        "matrix_element_asymptotic: V derivative order unavailable");
  const double sL = model_.sigma_total();
  auto vd = [&](int order, double s) {
    return model_.potential_sigma_derivative(s, order);
  };
  if (n == k) {
    // <n|V|n> = <V> - sum_j sL^{2j+1}/(2 pi n)^{2j+2} (-1)^j [V^(2j+1)(sL) - V^(2j+1)(0)]
    const double meanv =
        integrate_adaptive(
            [&](double x) { return model_.potential(x) * model_.sqrt_rho(x); },
            -model_.half_length(), model_.half_length(), 1e-13,
            model_.oscillation_frequency() > 0
                ? std::optional<double>(2.0 * model_.oscillation_frequency())
                : std::nullopt) /
        sL;
    double sum = meanv;
    double last = 0.0;
    for (int j = 0; j <= j_max; ++j) {
      const int order = 2 * j + 1;
      const double term = std::pow(sL, order) /
                          std::pow(2 * kPi * n, order + 1) *
                          ((j % 2) ? -1.0 : 1.0) * (vd(order, sL) - vd(order, 0.0));
      sum -= term;
      last = term;
    }
    if (error_estimate) {
      const int order = 2 * (j_max + 1) + 1;
      if (order <= model_.max_sigma_derivative_order()) {
        *error_estimate = std::fabs(std::pow(sL, order) /
                                    std::pow(2 * kPi * n, order + 1) *
                                    (vd(order, sL) - vd(order, 0.0)));
      } else {
        *error_estimate = std::fabs(last);
      }
    }
    return sum;
  }
  const double parity = ((n + k) % 2) ? -1.0 : 1.0;
  double sum = 0.0;
  double last = 0.0;
  auto term_at = [&](int j) {
    const int order = 2 * j + 1;
    const double wdiff = parity * vd(order, sL) - vd(order, 0.0);
    const double kernel = 1.0 / std::pow(static_cast<double>(k - n), order + 1) -
                          1.0 / std::pow(static_cast<double>(k + n), order + 1);
    return ((j % 2) ? -1.0 : 1.0) * std::pow(sL, order) /
           std::pow(kPi, order + 1) * kernel * wdiff;
  };
  for (int j = 0; j <= j_max; ++j) {
    last = term_at(j);
    sum += last;
  }
  if (error_estimate) {
    const int order = 2 * (j_max + 1) + 1;
    *error_estimate = (order <= model_.max_sigma_derivative_order())
                          ? std::fabs(term_at(j_max + 1))
                          : std::fabs(last);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Quartic closed forms
// ---------------------------------------------------------------------------

double quartic_matrix_element(int n, int m) {
  using specfun::cos_integral;
  using specfun::sin_integral;
  const double pi5 = std::pow(kPi, 5);
  if (n == m) {
    const double nn = n;
    const double s = std::sin(2.0 * kPi * nn / 7.0);
    const double c = std::cos(2.0 * kPi * nn / 7.0);
    return 9.0 * nn * nn / (49.0 * kPi * kPi * kPi * kPi) -
           4.0 * nn * cos_integral(2.0 * nn * kPi / 7.0) * s / (49.0 * pi5) +
           4.0 * nn * cos_integral(16.0 * nn * kPi / 7.0) * s / (49.0 * pi5) +
           4.0 * nn * sin_integral(2.0 * nn * kPi / 7.0) * c / (49.0 * pi5) -
           4.0 * nn * sin_integral(16.0 * nn * kPi / 7.0) * c / (49.0 * pi5);
  }
  const double d = std::abs(m - n);
  const double p = m + n;
  const double sd = std::sin(kPi * d / 7.0), cd = std::cos(kPi * d / 7.0);
  const double sp = std::sin(kPi * p / 7.0), cp = std::cos(kPi * p / 7.0);
  return (2.0 / (49.0 * pi5)) *
         (d * (cos_integral(d * kPi / 7.0) - cos_integral(8.0 * d * kPi / 7.0)) * sd +
          p * (cos_integral(8.0 * p * kPi / 7.0) - cos_integral(p * kPi / 7.0)) * sp +
          d * (sin_integral(8.0 * d * kPi / 7.0) - sin_integral(d * kPi / 7.0)) * cd +
          p * (sin_integral(p * kPi / 7.0) - sin_integral(8.0 * p * kPi / 7.0)) * cp);
}

double quartic_matrix_element_V(int n, int m) {
  if (n != m) return quartic_matrix_element(n, m);
  const double sL = 7.0 * kPi * kPi * kPi / 3.0;
  return quartic_matrix_element(n, n) -
         static_cast<double>(n) * n * kPi * kPi / (sL * sL);
}

// ---------------------------------------------------------------------------
// MatrixElementTable
// ---------------------------------------------------------------------------

namespace {

std::string make_key(const DensityModel& m, int max_n, double tol,
                     const std::string& kind) {
  std::ostringstream os;
  os << m.name();
  os.precision(17);
  for (double p : m.parameters()) os << "," << p;
  os << ";N=" << max_n << ";tol=" << tol << ";kind=" << kind;
  return os.str();
}

}  // namespace

MatrixElementTable MatrixElementTable::assemble(const WkbBasis& basis, int max_n,
                                                double tol,
                                                const std::string& kind) {
  if (max_n < 1) throw std::invalid_argument("MatrixElementTable: max_n >= 1");
  if (kind != "V" && kind != "O" && kind != "W")
    throw std::invalid_argument("MatrixElementTable: kind must be V, O or W");
  MatrixElementTable t;
  t.max_n_ = max_n;
  t.tol_ = tol;
  t.key_ = make_key(basis.model(), max_n, tol, kind);
  t.lower_.assign(static_cast<std::size_t>(max_n) * (max_n + 1) / 2, 0.0);
  const double sL = basis.model().sigma_total();
  if (kind == "V") {
    // every <n|V|k> is a difference of two cosine transforms of V in the
    // stretched variable: 2 sin(n pi u) sin(k pi u) = cos((n-k) pi u) -
    // cos((n+k) pi u).  2 max_n + 1 quadratures cover the whole table.
    const auto& model = basis.model();
    const double base_cycles =
        model.oscillation_frequency() * 2.0 * model.half_length();
    std::vector<double> ct(2 * max_n + 1, 0.0);
    parallel_for(ct.size(), [&](std::size_t m) {
      ct[m] = integrate_adaptive(
          [&](double u) {
            return std::cos(static_cast<double>(m) * kPi * u) *
                   model.potential_in_sigma(u * sL);
          },
          0.0, 1.0, tol, 0.5 * static_cast<double>(m) + base_cycles);
    });
    std::size_t i = 0;
    for (int n = 1; n <= max_n; ++n)
      for (int k = 1; k <= n; ++k) t.lower_[i++] = ct[n - k] - ct[n + k];
    return t;
  }
  // one quadrature per unordered pair (n >= k)
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(t.lower_.size());
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k) pairs.emplace_back(n, k);
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [n, k] = pairs[i];
    double v = basis.matrix_element_O(n, k, tol);
    if (kind == "W" && n == k) v -= n * kPi / sL * (n * kPi / sL);
    t.lower_[i] = v;
  });
  return t;
}

MatrixElementTable MatrixElementTable::assemble_quartic_closed(
    int max_n, const std::string& kind) {
  if (kind != "V" && kind != "O")
    throw std::invalid_argument("assemble_quartic_closed: kind must be V or O");
  MatrixElementTable t;
  t.max_n_ = max_n;
  t.tol_ = 0.0;
  t.key_ = "quartic;N=" + std::to_string(max_n) + ";closed;kind=" + kind;
  t.lower_.assign(static_cast<std::size_t>(max_n) * (max_n + 1) / 2, 0.0);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(t.lower_.size());
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n; ++k) pairs.emplace_back(n, k);
  const bool want_v = (kind == "V");
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [n, k] = pairs[i];
    t.lower_[i] =
        want_v ? quartic_matrix_element_V(n, k) : quartic_matrix_element(n, k);
  });
  return t;
}

MatrixElementTable MatrixElementTable::from_lower_triangle(
    int max_n, double tol, const std::string& kind, std::vector<double> lower) {
  if (lower.size() != static_cast<std::size_t>(max_n) * (max_n + 1) / 2)
    throw std::invalid_argument("from_lower_triangle: size mismatch");
  MatrixElementTable t;
  t.max_n_ = max_n;
  t.tol_ = tol;
  t.key_ = "external;N=" + std::to_string(max_n) + ";kind=" + kind;
  t.lower_ = std::move(lower);
  return t;
}

double MatrixElementTable::operator()(int n, int k) const {
  if (n < 1 || k < 1 || n > max_n_ || k > max_n_)
    throw std::out_of_range("MatrixElementTable: index outside table");
  if (k > n) std::swap(n, k);
  return lower_[static_cast<std::size_t>(n - 1) * n / 2 + (k - 1)];
}

void MatrixElementTable::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("MatrixElementTable: cannot write " + path);
  out << "# key," << key_ << "\n";
  out << "# max_n," << max_n_ << "\n";
  out << "# tol," << tol_ << "\n";
  out.precision(17);
  for (int n = 1; n <= max_n_; ++n)
    for (int k = 1; k <= n; ++k)
      out << n << "," << k << ","
          << lower_[static_cast<std::size_t>(n - 1) * n / 2 + (k - 1)] << "\n";
}

MatrixElementTable MatrixElementTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("MatrixElementTable: cannot read " + path);
  MatrixElementTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto comma = line.find(',');
      const std::string tag = line.substr(0, comma);
      const std::string val = line.substr(comma + 1);
      if (tag == "# key")
        t.key_ = val;
      else if (tag == "# max_n")
        t.max_n_ = std::stoi(val);
      else if (tag == "# tol")
        t.tol_ = std::stod(val);
      if (t.max_n_ > 0 && t.lower_.empty())
        t.lower_.assign(static_cast<std::size_t>(t.max_n_) * (t.max_n_ + 1) / 2,
                        0.0);
      continue;
    }
    std::istringstream row(line);
    int n, k;
    char c1, c2;
    double v;
    row >> n >> c1 >> k >> c2 >> v;
    if (!row || n < 1 || k < 1 || k > n || n > t.max_n_)
      throw std::runtime_error("MatrixElementTable: malformed row: " + line);
    t.lower_[static_cast<std::size_t>(n - 1) * n / 2 + (k - 1)] = v;
  }
  if (t.max_n_ == 0)
    throw std::runtime_error("MatrixElementTable: missing header in " + path);
  return t;
}

}  // namespace strand
