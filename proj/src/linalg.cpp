// SPDX-License-Identifier: Apache-2.0
#include "strand/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

extern "C" {
void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a,
             const int* lda, double* w, double* work, const int* lwork,
             int* iwork, const int* liwork, int* info);
}

namespace strand {

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("SymmetricMatrix: n >= 1");
  data_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

double SymmetricMatrix::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::fabs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

namespace {

void sort_pairs(EigenDecomposition* d) {
  const int n = static_cast<int>(d->eigenvalues.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return d->eigenvalues[a] < d->eigenvalues[b];
  });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  if (!d->vectors.empty()) out.vectors.resize(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = d->eigenvalues[order[k]];
    if (!d->vectors.empty()) out.vectors[k] = std::move(d->vectors[order[k]]);
  }
  *d = std::move(out);
}

// Deterministic sign: first component of largest magnitude made positive.
void fix_signs(EigenDecomposition* d) {
  for (auto& v : d->vectors) {
    double big = 0.0;
    for (double x : v)
      if (std::fabs(x) > std::fabs(big)) big = x;
    if (big < 0.0)
      for (double& x : v) x = -x;
  }
}

}  // namespace

EigenDecomposition eigen_jacobi(const SymmetricMatrix& m, bool want_vectors) {
  const int n = m.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<std::vector<double>> v;
  if (want_vectors) {
    v.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double denom = std::sqrt(std::fabs(a[p][p] * a[q][q])) + 1e-300;
        off = std::max(off, std::fabs(a[p][q]) / denom);
      }
    if (off < 1e-15) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double scale = std::sqrt(std::fabs(a[p][p] * a[q][q])) + 1e-300;
        if (std::fabs(apq) < 1e-18 * scale) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0)
                             ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                             : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a[p][p] - t * apq;
        const double aqq = a[q][q] + t * apq;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][p] = app;
        a[q][q] = aqq;
        a[p][q] = a[q][p] = 0.0;
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v[k][p], vkq = v[k][q];
            v[k][p] = c * vkp - s * vkq;
            v[k][q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) out.eigenvalues[i] = a[i][i];
  if (want_vectors) {
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.vectors[k][i] = v[i][k];
  }
  sort_pairs(&out);
  if (want_vectors) fix_signs(&out);
  return out;
}

EigenDecomposition eigen_lapack(const SymmetricMatrix& m, bool want_vectors) {
  const int n = m.size();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(j) * n + i] = m(i, j);
  std::vector<double> w(n);
  const char jobz = want_vectors ? 'V' : 'N';
  const char uplo = 'L';
  int info = 0;
  int lwork = -1, liwork = -1;
  double wkopt = 0.0;
  int iwkopt = 0;
  dsyevd_(&jobz, &uplo, &n, a.data(), &n, w.data(), &wkopt, &lwork, &iwkopt,
          &liwork, &info);
  lwork = static_cast<int>(wkopt);
  liwork = iwkopt;
  std::vector<double> work(lwork);
  std::vector<int> iwork(liwork);
  dsyevd_(&jobz, &uplo, &n, a.data(), &n, w.data(), work.data(), &lwork,
          iwork.data(), &liwork, &info);
  if (info != 0)
    throw std::runtime_error("eigen_lapack: dsyevd failed, info=" +
                             std::to_string(info) + " (n=" + std::to_string(n) + ")");
  EigenDecomposition out;
  out.eigenvalues = std::move(w);
  if (want_vectors) {
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        out.vectors[k][i] = a[static_cast<std::size_t>(k) * n + i];
    fix_signs(&out);
  }
  return out;
}

EigenDecomposition eigen_symmetric(const SymmetricMatrix& m, bool want_vectors) {
  return m.size() <= 600 ? eigen_jacobi(m, want_vectors)
                         : eigen_lapack(m, want_vectors);
}

std::vector<double> lstsq_qr(std::vector<std::vector<double>> columns,
                             std::vector<double> y, double* residual,
                             double* condition) {
  const int p = static_cast<int>(columns.size());
  if (p == 0) throw std::invalid_argument("lstsq_qr: no columns");
  const std::size_t rows = y.size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("lstsq_qr: ragged design");
  if (rows < static_cast<std::size_t>(p))
    throw std::invalid_argument("lstsq_qr: underdetermined");
  std::vector<double> scale(p);
  for (int j = 0; j < p; ++j) {
    double s = 0.0;
    for (double v : columns[j]) s += v * v;
    scale[j] = std::sqrt(s);
    if (scale[j] == 0.0) throw std::runtime_error("lstsq_qr: rank-deficient design");
    for (double& v : columns[j]) v /= scale[j];
  }
  // Householder QR in place.
  std::vector<std::vector<double>>& A = columns;
  for (int j = 0; j < p; ++j) {
    double nrm = 0.0;
    for (std::size_t i = j; i < rows; ++i) nrm += A[j][i] * A[j][i];
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) throw std::runtime_error("lstsq_qr: rank-deficient design");
    if (A[j][j] > 0) nrm = -nrm;
    for (std::size_t i = j; i < rows; ++i) A[j][i] /= nrm;
    A[j][j] -= 1.0;
    for (int k = j + 1; k < p; ++k) {
      double s = 0.0;
      for (std::size_t i = j; i < rows; ++i) s += A[j][i] * A[k][i];
      s /= A[j][j];
      for (std::size_t i = j; i < rows; ++i) A[k][i] += s * A[j][i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < rows; ++i) s += A[j][i] * y[i];
    s /= A[j][j];
    for (std::size_t i = j; i < rows; ++i) y[i] += s * A[j][i];
    A[j][j] = nrm;  // R diagonal stashed
  }
  std::vector<double> x(p);
  for (int j = p - 1; j >= 0; --j) {
    double s = y[j];
    for (int k = j + 1; k < p; ++k) s -= A[k][j] * x[k];
    x[j] = s / A[j][j];
  }
  if (residual) {
    double s = 0.0;
    for (std::size_t i = p; i < rows; ++i) s += y[i] * y[i];
    *residual = std::sqrt(s);
  }
  if (condition) {
    double dmax = 0.0, dmin = 1e300;
    for (int j = 0; j < p; ++j) {
      dmax = std::max(dmax, std::fabs(A[j][j]));
      dmin = std::min(dmin, std::fabs(A[j][j]));
    }
    *condition = dmax / dmin;
  }
  for (int j = 0; j < p; ++j) x[j] /= scale[j];
  return x;
}

FitResult fit_inverse_even_powers(const std::vector<std::pair<int, double>>& energies,
                                  int num_coeffs, int n_min,
                                  bool relative_weighting) {
  std::vector<double> ns, Es;
  for (const auto& [n, E] : energies) {
    if (n >= n_min) {
      ns.push_back(n);
      Es.push_back(E);
    }
  }
  const std::size_t rows = ns.size();
  if (rows < 3 * static_cast<std::size_t>(num_coeffs))
    throw std::invalid_argument(
        "fit_inverse_even_powers: need at least 3x as many rows as coefficients");
  std::vector<std::vector<double>> cols(num_coeffs, std::vector<double>(rows));
  std::vector<double> y(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double n2 = ns[i] * ns[i];
    const double w = relative_weighting ? 1.0 / n2 : 1.0;
    y[i] = Es[i] * w;
    for (int j = 0; j < num_coeffs; ++j) {
      // basis: n^2, 1, n^-2, n^-4, ...
      const double b = (j == 0) ? n2 : std::pow(n2, -static_cast<double>(j - 1));
      cols[j][i] = b * w;
    }
  }
  FitResult out;
  double resid = 0.0, cond = 0.0;
  out.coefficients = lstsq_qr(std::move(cols), std::move(y), &resid, &cond);
  out.residual_norm = resid;
  out.condition = cond;
  // crude per-coefficient error bars: residual scaled by column sensitivity
  out.coefficient_errors.resize(num_coeffs);
  const double dof = std::max<double>(1.0, static_cast<double>(rows) - num_coeffs);
  for (int j = 0; j < num_coeffs; ++j) {
    double colnorm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double n2 = ns[i] * ns[i];
      const double w = relative_weighting ? 1.0 / n2 : 1.0;
      const double b = (j == 0) ? n2 : std::pow(n2, -static_cast<double>(j - 1));
      colnorm += b * w * b * w;
    }
    out.coefficient_errors[j] = resid / std::sqrt(dof * colnorm) * cond;
  }
  return out;
}

}  // namespace strand
