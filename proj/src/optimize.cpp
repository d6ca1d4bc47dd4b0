// SPDX-License-Identifier: Apache-2.0
#include "strand/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace strand {

namespace {

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
};

MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           const std::vector<double>& start, double tol,
                           double step, long budget, long* used) {
  const int n = static_cast<int>(start.size());
  Simplex s;
  s.pts.push_back(start);
  for (int i = 0; i < n; ++i) {
    auto p = start;
    p[i] += (p[i] != 0.0 ? std::fabs(p[i]) : 1.0) * step;
    s.pts.push_back(p);
  }
  s.vals.resize(n + 1);
  long ev = 0;
  for (int i = 0; i <= n; ++i) {
    s.vals[i] = f(s.pts[i]);
    ++ev;
  }
  std::vector<int> order(n + 1);
  auto resort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s.vals[a] < s.vals[b]; });
  };
  MinimizeResult out;
  while (ev < budget) {
    resort();
    const int lo = order[0], hi = order[n], nh = order[n - 1];
    // simplex diameter
    double diam = 0.0;
    for (int i = 1; i <= n; ++i) {
      double d = 0.0;
      for (int k = 0; k < n; ++k)
        d = std::max(d, std::fabs(s.pts[order[i]][k] - s.pts[lo][k]));
      diam = std::max(diam, d);
    }
    const double fspread = std::fabs(s.vals[hi] - s.vals[lo]);
    if (diam < tol && fspread < std::max(1e-300, tol * (1.0 + std::fabs(s.vals[lo]))))
      break;
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (int k = 0; k < n; ++k) centroid[k] += s.pts[i][k];
    }
    for (double& c : centroid) c /= n;
    auto blend = [&](double alpha) {
      std::vector<double> p(n);
      for (int k = 0; k < n; ++k)
        p[k] = centroid[k] + alpha * (s.pts[hi][k] - centroid[k]);
      return p;
    };
    auto refl = blend(-1.0);
    const double frefl = f(refl);
    ++ev;
    if (frefl < s.vals[lo]) {
      auto expd = blend(-2.0);
      const double fexp = f(expd);
      ++ev;
      if (fexp < frefl) {
        s.pts[hi] = std::move(expd);
        s.vals[hi] = fexp;
      } else {
        s.pts[hi] = std::move(refl);
        s.vals[hi] = frefl;
      }
    } else if (frefl < s.vals[nh]) {
      s.pts[hi] = std::move(refl);
      s.vals[hi] = frefl;
    } else {
      auto contr = blend(frefl < s.vals[hi] ? -0.5 : 0.5);
      const double fcon = f(contr);
      ++ev;
      if (fcon < std::min(frefl, s.vals[hi])) {
        s.pts[hi] = std::move(contr);
        s.vals[hi] = fcon;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (int k = 0; k < n; ++k)
            s.pts[i][k] = 0.5 * (s.pts[i][k] + s.pts[lo][k]);
          s.vals[i] = f(s.pts[i]);
          ++ev;
        }
      }
    }
  }
  resort();
  out.x = s.pts[order[0]];
  out.value = s.vals[order[0]];
  out.converged = ev < budget;
  *used = ev;
  return out;
}

}  // namespace

MinimizeResult minimize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                                std::vector<double> start, double tol,
                                long max_evaluations, double initial_step) {
  if (start.empty()) {
    MinimizeResult r;
    r.value = objective(start);
    r.evaluations = 1;
    return r;
  }
  if (!std::isfinite(objective(start)))
    throw std::invalid_argument("minimize_simplex: objective not finite at start");
  long used1 = 0, used2 = 0;
  MinimizeResult first = nelder_mead(objective, start, tol, initial_step,
                                     max_evaluations, &used1);
  MinimizeResult second = nelder_mead(objective, first.x, tol, initial_step * 0.1,
                                      max_evaluations - used1, &used2);
  MinimizeResult& best = second.value <= first.value ? second : first;
  best.evaluations = used1 + used2 + 1;
  best.converged = first.converged && second.converged;
  return best;
}

RootResult bracket_root(const std::function<double(double)>& f, double a,
                        double b, double tol_rel) {
  double fa = f(a), fb = f(b);
  long ev = 2;
  if (fa == 0.0) return {a, 0.0, ev};
  if (fb == 0.0) return {b, 0.0, ev};
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("bracket_root: endpoints do not bracket a root");
  for (int it = 0; it < 200; ++it) {
    const double tol = tol_rel * (std::fabs(a) + std::fabs(b)) * 0.5 + 1e-300;
    if (std::fabs(b - a) <= tol) break;
    // secant candidate, safeguarded to stay inside
    double m = 0.5 * (a + b);
    const double denom = fb - fa;
    if (denom != 0.0) {
      const double sx = (a * fb - b * fa) / denom;
      const double lo = std::min(a, b), hi = std::max(a, b);
      if (sx > lo + 0.1 * tol && sx < hi - 0.1 * tol) m = sx;
    }
    const double fm = f(m);
    ++ev;
    if (fm == 0.0) return {m, 0.0, ev};
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  const double x = std::fabs(fa) < std::fabs(fb) ? a : b;
  return {x, std::fabs(fa) < std::fabs(fb) ? fa : fb, ev};
}

}  // namespace strand
