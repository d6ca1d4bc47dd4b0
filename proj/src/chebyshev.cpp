// SPDX-License-Identifier: Apache-2.0
#include "strand/chebyshev.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "strand/parallel.hpp"

namespace strand {

namespace {

// cos(pi m / d) for m = 0..2d-1, shared per degree.  cos(pi j k / d) is an
// exact table lookup at index (j*k) mod 2d, which keeps the O(d^2) transform
// free of trig calls and of recurrence drift.
const std::vector<double>& cos_table(int d) {
  static std::map<int, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<double> t(2 * d);
  for (int m = 0; m < 2 * d; ++m) t[m] = std::cos(M_PI * m / d);
  return cache.emplace(d, std::move(t)).first->second;
}

}  // namespace

GridFunction::GridFunction(double a, double b, int degree)
    : a_(a), b_(b), d_(degree) {
  if (!(a < b)) throw std::invalid_argument("GridFunction: requires a < b");
  if (degree < 2) throw std::invalid_argument("GridFunction: degree >= 2");
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  nodes_.resize(d_ + 1);
  const auto& tab = cos_table(d_);
  for (int j = 0; j <= d_; ++j) nodes_[j] = mid + half * tab[j];
  values_.assign(d_ + 1, 0.0);
}

GridFunction GridFunction::from_values(double a, double b,
                                       std::vector<double> values) {
  GridFunction g(a, b, static_cast<int>(values.size()) - 1);
  g.values_ = std::move(values);
  return g;
}

GridFunction GridFunction::from_function(const std::function<double(double)>& f,
                                         double a, double b, int degree) {
  GridFunction g(a, b, degree);
  for (int j = 0; j <= degree; ++j) g.values_[j] = f(g.nodes_[j]);
  return g;
}

GridFunction GridFunction::from_function_adaptive(
    const std::function<double(double)>& f, double a, double b, double tol,
    int initial, int max_degree) {
  int d = initial;
  while (true) {
    GridFunction g = from_function(f, a, b, d);
    if (g.tail_estimate() < tol || d >= max_degree) return g;
    d *= 2;
  }
}

GridFunction GridFunction::from_coefficients(double a, double b,
                                             std::vector<double> coef) {
  const int d = static_cast<int>(coef.size()) - 1;
  GridFunction g(a, b, d);
  const auto& tab = cos_table(d);
  const int period = 2 * d;
  parallel_for(static_cast<std::size_t>(d) + 1, [&](std::size_t j) {
    double s = 0.0;
    std::size_t idx = 0;
    for (int k = 0; k <= d; ++k) {
      s += coef[k] * tab[idx];
      idx += j;
      if (idx >= static_cast<std::size_t>(period)) idx -= period;
    }
    g.values_[j] = s;
  });
  g.coef_ = std::move(coef);
  g.coef_valid_ = true;
  return g;
}

std::vector<double>& GridFunction::mutable_values() {
  coef_valid_ = false;
  return values_;
}

const std::vector<double>& GridFunction::coefficients() const {
  if (coef_valid_) return coef_;
  const int d = d_;
  coef_.assign(d + 1, 0.0);
  const auto& tab = cos_table(d);
  const int period = 2 * d;
  std::vector<double> w(values_);
  w[0] *= 0.5;
  w[d] *= 0.5;
  parallel_for(static_cast<std::size_t>(d) + 1, [&](std::size_t k) {
    double s = 0.0;
    std::size_t idx = 0;
    for (int j = 0; j <= d; ++j) {
      s += w[j] * tab[idx];
      idx += k;
      if (idx >= static_cast<std::size_t>(period)) idx -= period;
    }
    coef_[k] = 2.0 * s / d;
  });
  coef_[0] *= 0.5;
  coef_[d] *= 0.5;
  coef_valid_ = true;
  return coef_;
}

double GridFunction::operator()(double x) const {
  const auto& c = coefficients();
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  double b1 = 0.0, b2 = 0.0;
  for (int k = d_; k >= 1; --k) {
    const double tmp = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + c[0];
}

GridFunction GridFunction::derivative() const {
  const auto& c = coefficients();
  const int d = d_;
  std::vector<double> dc(d + 1, 0.0);
  for (int k = d; k >= 1; --k) {
    const double next = (k + 1 <= d - 1) ? dc[k + 1] : 0.0;
    dc[k - 1] = next + 2.0 * k * c[k];
  }
  dc[0] *= 0.5;
  dc.resize(std::max(2, d - 1) + 1);
  if (d - 1 < 2) dc.resize(3, 0.0);
  const double h = 2.0 / (b_ - a_);
  for (auto& v : dc) v *= h;
  return from_coefficients(a_, b_, std::move(dc));
}

GridFunction GridFunction::antiderivative() const {
  const auto& c = coefficients();
  const int d = d_;
  const double h = 0.5 * (b_ - a_);
  std::vector<double> b(d + 2, 0.0);
  for (int k = 1; k <= d + 1; ++k) {
    const double cm = (k == 1) ? 2.0 * c[0] : c[k - 1];
    const double cp = (k + 1 <= d) ? c[k + 1] : 0.0;
    b[k] = h * (cm - cp) / (2.0 * k);
  }
  double at_a = 0.0;
  for (int k = 1; k <= d + 1; ++k) at_a += (k % 2 ? -b[k] : b[k]);
  b[0] = -at_a;
  return from_coefficients(a_, b_, std::move(b));
}

double GridFunction::integral() const {
  const auto& c = coefficients();
  double s = 0.0;
  for (int k = 0; k <= d_; k += 2) s += c[k] * 2.0 / (1.0 - static_cast<double>(k) * k);
  return 0.5 * (b_ - a_) * s;
}

double GridFunction::end_value() const { return values_[0]; }

double GridFunction::tail_estimate() const {
  const auto& c = coefficients();
  double cmax = 0.0;
  for (double v : c) cmax = std::max(cmax, std::fabs(v));
  if (cmax == 0.0) return 0.0;
  const int tail = std::max(2, d_ / 16);
  double tmax = 0.0;
  for (int k = d_ + 1 - tail; k <= d_; ++k) tmax = std::max(tmax, std::fabs(c[k]));
  return tmax / cmax;
}

GridFunction GridFunction::multiply(const GridFunction& other) const {
  if (other.d_ != d_ || other.a_ != a_ || other.b_ != b_)
    throw std::invalid_argument("GridFunction::multiply: grid mismatch");
  GridFunction g(a_, b_, d_);
  for (int j = 0; j <= d_; ++j) g.values_[j] = values_[j] * other.values_[j];
  return g;
}

GridFunction GridFunction::apply(const std::function<double(double)>& fn) const {
  GridFunction g(a_, b_, d_);
  for (int j = 0; j <= d_; ++j) g.values_[j] = fn(values_[j]);
  return g;
}

double GridFunction::inner_product(const GridFunction& other) const {
  return multiply(other).integral();
}

}  // namespace strand
