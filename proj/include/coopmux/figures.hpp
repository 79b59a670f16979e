// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coopmux/csv.hpp"

namespace coopmux {

inline constexpr int kFirstFigure = 2;
inline constexpr int kLastFigure = 8;

/// Overrides for the built-in figure configurations.
struct FigureOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  int workers = 0;
  double eta_start_db = -10.0;
  double eta_stop_db = 40.0;
  double eta_step_db = 2.0;
  std::optional<double> r;                // replaces the figure's multiplexing gain
  std::optional<std::vector<double>> phi_db;  // replaces the figure's path gains
};

/// Built-in experiments, one CSV per figure:
///   2  pc_phi<x>, pnu_phi<x> for (2,2,4,2), phi in {10, 20, 30} dB
///   3  pc_phi<x>, pnu_phi<x> for (2,3,4,1), phi in {10, 20, 30} dB
///   4  direct, mimo_4x4, adaptive_phi<x>, bound_phi<x> for (2,2,4,2), r = 2, phi in {20, 30} dB
///   5  pc_ors_2relay, pc_1relay for (2,2,4,2), phi = 20 dB
///   6  selection_1relay, selection_2relay for (2,2,4,2), phi = 20 dB, r = 2
///   7  pc_1, pc_2 for two (2,3,4,1) relays, phi = 20 dB
///   8  multi_adaptive_2relay, adaptive_1relay for (2,3,4,1), phi = 20 dB, r = 2.3
/// Throws ContractError for an id outside [2, 8].
CsvDocument make_figure(int id, const FigureOptions& opts);

}  // namespace coopmux
