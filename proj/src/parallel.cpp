// SPDX-License-Identifier: Apache-2.0
#include "strand/parallel.hpp"

#include <atomic>

namespace strand {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int worker_count() {
#ifdef _OPENMP
  return parallel_enabled() ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

double pairwise_sum(const double* terms, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += terms[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms, half) + pairwise_sum(terms + half, n - half);
}

double pairwise_sum(const std::vector<double>& terms) {
  return pairwise_sum(terms.data(), terms.size());
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  std::vector<double> buf(n);
  parallel_for(n, [&](std::size_t i) { buf[i] = term(i); });
  return pairwise_sum(buf);
}

}  // namespace strand
