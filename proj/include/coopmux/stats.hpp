// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace coopmux {

inline constexpr double kZ95 = 1.959963984540054;

/// Monte Carlo probability estimate with a 95% Wilson score interval.
struct OutageEstimate {
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  static OutageEstimate from_counts(std::uint64_t events, std::uint64_t trials);

  double half_width() const { return 0.5 * (ci_high - ci_low); }
  std::uint64_t non_events() const { return trials - events; }
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

Interval wilson_interval(std::uint64_t events, std::uint64_t trials, double z = kZ95);

}  // namespace coopmux
