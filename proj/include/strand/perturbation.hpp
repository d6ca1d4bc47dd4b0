// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "strand/density.hpp"
#include "strand/wkb_basis.hpp"

namespace strand {

enum class PerturbationEngine { DPT, WKBPT, IWKBPT };

struct PerturbationSeries {
  int n = 0;
  PerturbationEngine engine = PerturbationEngine::WKBPT;
  int order = 0;
  std::array<double, 4> corrections{};  // E^(0)..E^(3); unused entries zero
  double truncation_last_term = 0.0;    // magnitude of last included 2nd-order term
  int truncation_states = 0;            // states summed over
  double total() const {
    double s = 0.0;
    for (int j = 0; j <= order; ++j) s += corrections[j];
    return s;
  }
};

/// Basis-coefficient vectors of the eigenfunction corrections; coef[j][k-1]
/// multiplies basis state k at order j+1.  The n-th component is zero at
/// every order (intermediate normalization).
struct EigenfunctionCorrections {
  int n = 0;
  int order = 0;
  std::vector<std::vector<double>> coef;  // [order][state-1]
};

// ---------------------------------------------------------------------------
// Density perturbation theory: expansion around the mean density.
// ---------------------------------------------------------------------------

/// Corrections through `order` (<= 3) with matrix elements of the density
/// fluctuation in the uniform-string basis, sums truncated at K states.
PerturbationSeries dpt_energy(const DensityModel& model, int n, int order, int K);

/// Upper bound for E_1 from the uniform-string fundamental as variational
/// ansatz (the Rayleigh quotient of the symmetrized operator).
double dpt_variational_bound(const DensityModel& model);

// ---------------------------------------------------------------------------
// WKB-basis perturbation theory and its trial-density variant.
// ---------------------------------------------------------------------------

/// Second/third-order sums run over the union of a window of half-width
/// `window` around n and the first 20 states (all within the table).
PerturbationSeries wkbpt_energy(const WkbBasis& basis, const MatrixElementTable& table,
                                int n, int order, int window = 10);

/// The same sums expressed through a W table and the trial sigma(L); with
/// the physical table/sigma this *is* wkbpt_energy (shared implementation).
PerturbationSeries perturbation_series_from_table(const MatrixElementTable& table,
                                                  double sigma_L, int n, int order,
                                                  int window,
                                                  PerturbationEngine tag);

EigenfunctionCorrections wkbpt_eigenfunction(const WkbBasis& basis,
                                             const MatrixElementTable& table,
                                             int n, int order);

/// iWKBPT: perturbation series in the basis of a trial density for the
/// physical operator.  Assembles the W table internally (use the table
/// overload to share tables across modes).
PerturbationSeries iwkbpt_energy(const DensityModel& trial,
                                 const DensityModel& physical, int n, int order,
                                 int K, double tol = 1e-11, int window = 10);

/// <n|O|k> in the trial basis for the physical operator, by the
/// integrated-by-parts quadrature.
double mixed_matrix_element_O(const DensityModel& trial,
                              const DensityModel& physical, int n, int k,
                              double tol = 1e-11);

/// Stabilized residual Sigma_n^(m): the off-diagonal sum of <n|O|k>^2 over a
/// window of half-width m.  Zero exactly when the trial n-th mode solves the
/// physical problem.
double sigma_residual(const DensityModel& trial, const DensityModel& physical,
                      int n, int m, double tol = 1e-11);

/// First-order estimates of E2/E1 (concave/convex density diagnostics).
double ratio_first_order(const DensityModel& model, PerturbationEngine engine);

}  // namespace strand
