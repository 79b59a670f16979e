// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coopmux/channel.hpp"

namespace coopmux {

/// Exact non-negative rational, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// All capacities below are in bits per channel use and take eta as a linear
// SNR. Relay transmit blocks are the first M_t columns of H_rd[i].

/// log2 det(I + eta H_sd H_sd^H).
double c_direct(const ChannelRealization& ch, double eta);

/// log2 det(I + phi eta H_sr H_sr^H) for relay i; phi linear.
double c_source_relay(const ChannelRealization& ch, std::size_t relay, double phi, double eta);

/// Capacity of [H_sd | H_rd[i][:, :M_t,i] | ...] over the decoding set.
/// An empty set is the direct link.
double c_composite(const NetworkTopology& topo, const ChannelRealization& ch,
                   std::span<const std::size_t> decoding_set, double eta);

/// Same as c_composite with the decoding set given as a bit mask (bit i = relay i).
double c_composite_mask(const NetworkTopology& topo, const ChannelRealization& ch,
                        std::uint32_t mask, double eta);

/// Per-slot capacities of cyclic relaying: log2 det(I + eta H_SR(i),D H^H) for
/// antenna sets A_i = columns [(i-1) M_t, i M_t) of H_rd[relay], i = 1..I.
std::vector<double> cyclic_slot_capacities(const NetworkTopology& topo,
                                           const ChannelRealization& ch, std::size_t cycle,
                                           double eta, std::size_t relay = 0);

/// Average of the per-slot cyclic capacities. Throws ConfigError if I*M_t > M.
double c_cyclic(const NetworkTopology& topo, const ChannelRealization& ch, std::size_t cycle,
                double eta, std::size_t relay = 0);

/// log2 det(I + eta H~ H~^H) with H~ = [H_sd | A_1 | ... | A_I].
double c_cyclic_stacked(const NetworkTopology& topo, const ChannelRealization& ch,
                        std::size_t cycle, double eta, std::size_t relay = 0);

/// Half-duplex space-time coding: (C_sd + C_rd,tx) / 2 per channel use.
double c_half_duplex_pair(const NetworkTopology& topo, const ChannelRealization& ch,
                          std::size_t relay, double eta);

/// C_sr >= C_{SR,D} with the single relay in the decoding set. Inclusive.
bool decode_constraint_fixed(const NetworkTopology& topo, const ChannelRealization& ch,
                             std::size_t relay, double phi, double eta);

/// I * C_sr >= sum of the I per-slot cyclic composite capacities.
bool decode_constraint_cyclic(const NetworkTopology& topo, const ChannelRealization& ch,
                              std::size_t cycle, double phi, double eta, std::size_t relay = 0);

/// C_sr >= C_sd + C_rd,tx.
bool decode_constraint_stc(const NetworkTopology& topo, const ChannelRealization& ch,
                           std::size_t relay, double phi, double eta);

/// High-SNR exponent omega = M_SR / (M_SRD - M_SR), M_SR = min(K, M_r),
/// M_SRD = min(K + M_t, N). Empty when M_SRD <= M_SR (degenerate regime).
std::optional<Rational> omega_fixed(std::size_t k, std::size_t m_r, std::size_t n,
                                    std::size_t m_t);

/// nu = (Lambda_SR / Lambda_SRD)^(1 / (M_SRD - M_SR)), where each Lambda is the
/// product of the min(rows, cols) largest Gram eigenvalues. Empty when degenerate.
std::optional<double> nu_value(const NetworkTopology& topo, const ChannelRealization& ch,
                               std::size_t relay);

struct LowSnrCheck {
  bool holds = false;
  double composite_energy = 0.0;     // sum |h|^2 over the N x (K + M_t) composite
  double source_relay_energy = 0.0;  // sum |h|^2 over the (M - M_t) x K receive block
  double chi_composite = 0.0;        // composite_energy / (N (K + M_t))
  double chi_source_relay = 0.0;     // source_relay_energy / ((M - M_t) K)
};

/// Linearised low-SNR decode condition: composite_energy <= phi * source_relay_energy.
///
/// The receive block is the last M - M_t rows of H_sr (the antennas that are not
/// transmitting). Requires M > M_t and M_r >= M - M_t.
LowSnrCheck low_snr_condition(const NetworkTopology& topo, const ChannelRealization& ch,
                              std::size_t relay, double phi);

}  // namespace coopmux
