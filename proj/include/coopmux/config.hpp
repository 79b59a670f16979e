// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopmux/montecarlo.hpp"

namespace coopmux {

/// A sweep described by a flat `key = value` file. `#` starts a comment.
///
///   scheme        direct | fixed_adaptive | fixed_bound | multicast |
///                 relay_selection | multi_adaptive | cyclic_adaptive | stc_adaptive
///   K, N          source and destination antennas
///   relays        relay count (default 0 for direct, else 1)
///   M, M_t, M_r   per-relay antennas; one value for all relays or a comma list
///   phi_db        per-relay path gain in dB, or
///   distance      per-relay normalised distance together with `gamma`
///   cyclic_I      cycle length, cyclic_adaptive only
///   r, g          multiplexing gain and array gain (g defaults to K*N)
///   eta_start_db, eta_stop_db, eta_step_db   SNR grid (default -10, 40, 2)
///   trials, seed  Monte Carlo budget (default 100000, 1)
///   output        CSV path
struct ExperimentConfig {
  Scheme scheme = Scheme::Direct;
  NetworkTopology topology;
  std::optional<std::size_t> cyclic_cycle;
  double r = 0.0;
  std::optional<double> g;
  double eta_start_db = -10.0;
  double eta_stop_db = 40.0;
  double eta_step_db = 2.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string output;

  ProtocolSpec protocol() const;
  RateSpec rate() const;
  std::vector<SnrPoint> grid() const;
};

/// Throws ConfigError with the line number and key on any schema violation.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace coopmux
