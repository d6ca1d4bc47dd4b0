// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace strand {

/// Dense symmetric matrix, lower triangle stored row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n);
  int size() const { return n_; }
  double operator()(int i, int j) const {
    return i >= j ? data_[idx(i, j)] : data_[idx(j, i)];
  }
  void set(int i, int j, double v) { data_[i >= j ? idx(i, j) : idx(j, i)] = v; }
  double norm_inf() const;
  const std::vector<double>& packed() const { return data_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  int n_;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;          // ascending
  std::vector<std::vector<double>> vectors; // vectors[k] is the k-th eigenvector
};

/// Cyclic Jacobi.  Slower than tridiagonal methods but attains high
/// *relative* accuracy on graded positive-definite matrices, which the
/// spectral engine needs for its smallest eigenvalues.
EigenDecomposition eigen_jacobi(const SymmetricMatrix& m, bool want_vectors = true);

/// LAPACK dsyevd.  Used for the large collocation matrices.
EigenDecomposition eigen_lapack(const SymmetricMatrix& m, bool want_vectors = true);

/// Backend picked by size (Jacobi up to 600, LAPACK beyond).
EigenDecomposition eigen_symmetric(const SymmetricMatrix& m, bool want_vectors = true);

struct FitResult {
  std::vector<double> coefficients;  // A1, A2, A3, ... per basis {n^2, 1, n^-2, ...}
  double residual_norm = 0.0;
  double condition = 0.0;            // of the column-scaled design matrix
  std::vector<double> coefficient_errors;  // residual-based 1-sigma estimates
};

/// Least squares fit of E_n ~ A1 n^2 + A2 + A3/n^2 + ... (num_coeffs terms)
/// over rows with n >= n_min.  Columns are scaled to unit norm and solved by
/// Householder QR.  relative_weighting divides each row by n^2 so that the
/// uniform *relative* accuracy of eigenvalue data maps to uniform row noise;
/// this is what makes A3 recoverable in double precision.
FitResult fit_inverse_even_powers(const std::vector<std::pair<int, double>>& energies,
                                  int num_coeffs, int n_min,
                                  bool relative_weighting = true);

/// General linear least squares min ||A x - y||_2 by Householder QR with
/// column scaling.  Returns x; fills cond/residual when non-null.
std::vector<double> lstsq_qr(std::vector<std::vector<double>> columns,
                             std::vector<double> y, double* residual = nullptr,
                             double* condition = nullptr);

}  // namespace strand
