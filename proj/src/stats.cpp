// SPDX-License-Identifier: Apache-2.0
#include "coopmux/stats.hpp"

#include <algorithm>
#include <cmath>

#include "coopmux/errors.hpp"

namespace coopmux {

Interval wilson_interval(std::uint64_t events, std::uint64_t trials, double z) {
  if (trials == 0) throw ContractError("wilson_interval: zero trials");
  if (events > trials) throw ContractError("wilson_interval: events exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(events) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(std::min(center - half, p), 0.0, 1.0),
          std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

OutageEstimate OutageEstimate::from_counts(std::uint64_t events, std::uint64_t trials) {
  const Interval ci = wilson_interval(events, trials);
  return {trials, events, static_cast<double>(events) / static_cast<double>(trials), ci.low, ci.high};
}

}  // namespace coopmux
