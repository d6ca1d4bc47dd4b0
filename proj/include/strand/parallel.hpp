// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strand {

/// Runtime switch for the OpenMP kernels. The serial reference path is kept
/// for testing and benchmarking; results are identical either way because
/// every parallel kernel writes to disjoint slots or reduces with a fixed
/// tree order.
bool parallel_enabled();
void set_parallel_enabled(bool on);
int worker_count();

/// Applies fn(i) for i in [0, n). Iterations must be independent.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Sum with a fixed pairwise reduction tree. The result depends only on the
/// term order, not on the worker schedule.
double pairwise_sum(const double* terms, std::size_t n);
double pairwise_sum(const std::vector<double>& terms);

/// Evaluates term(i) for i in [0, n) (in parallel when enabled) and reduces
/// with pairwise_sum.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace strand
