// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace coopmux {

/// Per-trial work: add event counts for trial `trial` into `tally`.
/// Must depend on nothing but the trial index (and captured read-only state).
using TrialKernel = std::function<void(std::uint64_t trial, std::span<std::uint64_t> tally)>;

/// Reference implementation: trials 0..trials-1 in order on the calling thread.
std::vector<std::uint64_t> tally_serial(std::uint64_t trials, std::size_t slots,
                                        const TrialKernel& kernel);

/// OpenMP version. Each thread tallies into a private buffer; the buffers are
/// summed afterwards. Integer sums commute, so the result equals tally_serial
/// for any worker count. workers <= 0 uses the OpenMP default.
std::vector<std::uint64_t> tally_parallel(std::uint64_t trials, std::size_t slots,
                                          const TrialKernel& kernel, int workers);

/// Dispatches to tally_serial for workers == 1, tally_parallel otherwise.
std::vector<std::uint64_t> tally(std::uint64_t trials, std::size_t slots,
                                 const TrialKernel& kernel, int workers);

}  // namespace coopmux
