// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coopmux/matrix.hpp"
#include "coopmux/rng.hpp"

namespace coopmux {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// One relay: total antennas M, transmit subset size M_t, receive antennas M_r,
/// and the source-to-relay path gain phi in dB (relative to the direct link).
struct RelaySpec {
  std::size_t antennas = 1;           // M
  std::size_t transmit_antennas = 1;  // M_t
  std::size_t receive_antennas = 1;   // M_r
  double path_gain_db = 0.0;          // phi

  /// M_r defaults to M.
  static RelaySpec make(std::size_t m, std::size_t m_t, double phi_db,
                        std::optional<std::size_t> m_r = std::nullopt);

  double path_gain() const { return db_to_linear(path_gain_db); }

  void validate() const;
};

/// Source with K antennas, destination with N, and an ordered relay list.
/// The S->D and R->D path gains are fixed at 0 dB.
struct NetworkTopology {
  std::size_t source_antennas = 1;  // K
  std::size_t dest_antennas = 1;    // N
  std::vector<RelaySpec> relays;
  std::optional<double> path_loss_exponent;

  std::size_t relay_count() const { return relays.size(); }
  void validate() const;
  std::string describe() const;
};

/// One block-fading draw of every small-scale fading matrix.
struct ChannelRealization {
  ComplexMatrix h_sd;               // N x K
  std::vector<ComplexMatrix> h_sr;  // M_r,i x K
  std::vector<ComplexMatrix> h_rd;  // N x M_i
};

struct SnrPoint {
  double eta_db = 0.0;
  double linear() const { return db_to_linear(eta_db); }
};

/// Finite-SNR multiplexing gain r with array gain g; R = r log2(1 + g eta).
struct RateSpec {
  double multiplexing_gain = 0.0;
  double array_gain = 1.0;

  /// g defaults to K*N, the direct-link array gain.
  static RateSpec with_default_gain(double r, const NetworkTopology& topology);
};

/// phi = d^-gamma for a relay at normalised distance d in (0, 1].
double path_gain_from_distance(double distance, double exponent);

/// Samples H_sd, then (H_sr[i], H_rd[i]) for each relay in order.
ChannelRealization sample_realization(const NetworkTopology& topology, RngStream& stream);

/// r * log2(1 + g * eta).
double rate_at(const RateSpec& rate, const SnrPoint& snr);
double rate_at(const RateSpec& rate, double eta_linear);

}  // namespace coopmux
