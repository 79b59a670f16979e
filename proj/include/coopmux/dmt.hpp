// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coopmux/capacity.hpp"

namespace coopmux {

struct DmtVertex {
  double r = 0.0;
  double d = 0.0;
  friend bool operator==(const DmtVertex&, const DmtVertex&) = default;
};

/// Piecewise-linear diversity-multiplexing tradeoff d(r).
///
/// Vertices start at r = 0, have strictly increasing r and nonincreasing d,
/// and end with d = 0.
class DmtCurve {
 public:
  explicit DmtCurve(std::vector<DmtVertex> vertices);

  const std::vector<DmtVertex>& vertices() const { return vertices_; }

  /// Linear interpolation; zero beyond the last vertex.
  double at(double r) const;

  double max_multiplexing() const { return vertices_.back().r; }
  double max_diversity() const { return vertices_.front().d; }

 private:
  std::vector<DmtVertex> vertices_;
};

/// Point-to-point MIMO: vertices (k, (tx-k)(rx-k)), k = 0..min(tx, rx).
DmtCurve mimo_dmt(std::size_t tx, std::size_t rx);

/// Half-duplex space-time coding with a perfect source-relay link.
///
/// Vertices at r_i = i/2 with d_i = (K-a_i)(N-a_i) + (M_t-b_i)(N-b_i); at each
/// step the side with the larger marginal diversity drop gives up one
/// dimension, ties going to the source side.
DmtCurve stc_dmt(std::size_t k, std::size_t m_t, std::size_t n);

/// Direct link used in one of two half-duplex slots (rate doubled):
/// vertices (k, (K-2k)(N-2k)) and a terminal zero at r = min(K, N)/2.
DmtCurve direct_halfduplex_dmt(std::size_t k, std::size_t n);

struct EffectivenessReport {
  std::optional<Rational> omega;  // empty: degenerate exponent
  bool gain_over_direct = false;  // condition (a)
  bool effective = false;         // (a) and omega >= 1
  double max_gain = 0.0;          // multiplexing-gain ratio over direct transmission
  int transmit_threshold = 0;        // 2 min(K, M) - K, fixed relaying only
};

/// Fixed relaying. max_gain is the bound min(2, 2M/K, N/K).
EffectivenessReport effectiveness_fixed(std::size_t k, std::size_t m_r, std::size_t n,
                                        std::size_t m_t);

/// Half-duplex space-time coding. max_gain = (min(K,N)+min(M_t,N)) / (2 min(K,N)).
EffectivenessReport effectiveness_stc(std::size_t k, std::size_t m_r, std::size_t n,
                                      std::size_t m_t);

/// Distributed D-BLAST with a single-antenna source. max_gain = min(1+M_t, N).
EffectivenessReport effectiveness_dblast(std::size_t m_t, std::size_t n, std::size_t m_r);

/// Finite-SNR diversity of the adaptive protocol from the two MIMO branches:
/// w1 = P_c P_big, w2 = (1-P_c) P_small,
/// d = (w1 d_big + w2 d_small)/(w1 + w2) - eps d_c, eps = P_small/(w1 + w2) - 1.
/// Empty when w1 + w2 == 0.
std::optional<double> finite_snr_combiner(double p_c, double p_big, double p_small, double d_big,
                                          double d_small, double d_c);

/// A codeword placed on the time/transmitter grid.
struct Codeword {
  enum class Origin { Source, Relay };
  int message = 0;
  Origin origin = Origin::Source;
  int part = 0;  // cyclic: codeword column i; D-BLAST: relay antenna j; 0 = unsplit

  std::string label() const;
  friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct Schedule {
  std::vector<std::string> transmitters;                      // row labels
  std::vector<std::vector<std::optional<Codeword>>> slots;    // [row][slot], 0-based slots

  std::size_t frame_length() const { return slots.empty() ? 0 : slots.front().size(); }
  /// Cell at 1-based slot index.
  const std::optional<Codeword>& at(std::size_t row, std::size_t slot) const {
    return slots.at(row).at(slot - 1);
  }
  std::string render() const;
};

/// Staircase: source sends message i in slot i; relay antenna j re-sends
/// message i-j in slot i. Frame length L + M_t.
Schedule dblast_schedule(std::size_t messages, std::size_t m_t);

/// Cyclic relaying: message l occupies source slots (l-1)I+1..lI; antenna set
/// A_i re-sends part i one message period later. Frame length (L+1)I.
Schedule cyclic_schedule(std::size_t messages, std::size_t cycle);

}  // namespace coopmux
