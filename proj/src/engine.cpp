// SPDX-License-Identifier: Apache-2.0
#include "coopmux/engine.hpp"

#include <exception>

#include <omp.h>

namespace coopmux {

std::vector<std::uint64_t> tally_serial(std::uint64_t trials, std::size_t slots,
                                        const TrialKernel& kernel) {
  std::vector<std::uint64_t> counts(slots, 0);
  for (std::uint64_t t = 0; t < trials; ++t) kernel(t, counts);
  return counts;
}

std::vector<std::uint64_t> tally_parallel(std::uint64_t trials, std::size_t slots,
                                          const TrialKernel& kernel, int workers) {
  std::vector<std::uint64_t> counts(slots, 0);
  std::exception_ptr failure;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(trials);

#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> local(slots, 0);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
      try {
        kernel(static_cast<std::uint64_t>(t), local);
      } catch (...) {
#pragma omp critical(coopmux_engine_error)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(coopmux_engine_merge)
    for (std::size_t i = 0; i < slots; ++i) counts[i] += local[i];
  }

  if (failure) std::rethrow_exception(failure);
  return counts;
}

std::vector<std::uint64_t> tally(std::uint64_t trials, std::size_t slots,
                                 const TrialKernel& kernel, int workers) {
  if (workers == 1) return tally_serial(trials, slots, kernel);
  return tally_parallel(trials, slots, kernel, workers);
}

}  // namespace coopmux
