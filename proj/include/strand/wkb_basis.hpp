// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "strand/density.hpp"

namespace strand {

/// The orthonormal basis phi_n(x) = sqrt(2/sigma(L)) rho^{1/4}
/// sin(n pi sigma(x)/sigma(L)) attached to a density (physical or trial).
/// phi_n vanishes at both ends by construction and diagonalizes the operator
/// Q = O - V with eigenvalues n^2 pi^2 / sigma(L)^2.
class WkbBasis {
 public:
  explicit WkbBasis(DensityModel model, int max_index = 1 << 20);

  const DensityModel& model() const { return model_; }
  int max_index() const { return max_index_; }

  double phi(int n, double x) const;
  /// d/dx [phi_n / sqrt(rho)], the object entering the integrated-by-parts
  /// O matrix elements.
  double u_prime(int n, double x) const;

  /// <n|V|k> by quadrature in the stretched variable u = sigma/sigma(L),
  /// where the trig factors have uniform frequency.
  double matrix_element_V(int n, int k, double tol = 1e-12) const;
  /// <n|O|k> = int u_n' u_k' dx (one integration by parts; boundary terms
  /// vanish).  For the physical basis <n|O|k> = <n|V|k> off the diagonal.
  double matrix_element_O(int n, int k, double tol = 1e-12) const;

  /// Appendix-style asymptotic partial sum for <n|V|k>; *error_estimate
  /// (optional) receives the magnitude of the first omitted term.
  double matrix_element_asymptotic(int n, int k, int j_max,
                                   double* error_estimate = nullptr) const;

 private:
  DensityModel model_;
  int max_index_;
};

/// Closed-form <n|O|m> for the quartic catalog density (the printed Si/Ci
/// expressions); the fast path behind its spectral solves and bound tables.
double quartic_matrix_element(int n, int m);
/// Closed-form <n|V|m> for the quartic density (diagonal shifted by the
/// Q eigenvalue).
double quartic_matrix_element_V(int n, int m);

/// Symmetric table of <n|V|k> (or <n|W|k> for trial bases), assembled in
/// parallel over unordered pairs, one quadrature per entry.
class MatrixElementTable {
 public:
  MatrixElementTable() = default;
  /// kind "V": matrix_element_V; kind "O": matrix_element_O; kind "W":
  /// matrix_element_O minus the diagonal Q eigenvalue n^2 pi^2/sigma(L)^2.
  static MatrixElementTable assemble(const WkbBasis& basis, int max_n,
                                     double tol, const std::string& kind = "V");
  /// Quartic fast path: closed-form elements, kind "V" or "O".
  static MatrixElementTable assemble_quartic_closed(int max_n,
                                                    const std::string& kind = "V");
  /// Wraps an externally assembled packed lower triangle (1-based, row n
  /// holds columns 1..n).
  static MatrixElementTable from_lower_triangle(int max_n, double tol,
                                                const std::string& kind,
                                                std::vector<double> lower);

  int max_n() const { return max_n_; }
  double quadrature_tol() const { return tol_; }
  double operator()(int n, int k) const;

  /// Flat CSV cache, keyed by (density name, parameters, N, tol, kind).
  void save_csv(const std::string& path) const;
  static MatrixElementTable load_csv(const std::string& path);
  std::string cache_key() const { return key_; }

 private:
  int max_n_ = 0;
  double tol_ = 0.0;
  std::string key_;
  std::vector<double> lower_;  // packed lower triangle, 1-based indices
};

}  // namespace strand
