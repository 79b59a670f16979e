// SPDX-License-Identifier: Apache-2.0
#include "coopmux/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

void check_relay(const ChannelRealization& ch, std::size_t relay) {
  if (relay >= ch.h_sr.size()) {
    throw ContractError("relay index " + std::to_string(relay) + " out of range");
  }
}

ComplexMatrix transmit_block(const NetworkTopology& topo, const ChannelRealization& ch,
                             std::size_t relay) {
  return ch.h_rd[relay].column_block(0, topo.relays[relay].transmit_antennas);
}

void check_cycle(const NetworkTopology& topo, std::size_t cycle, std::size_t relay) {
  if (relay >= topo.relays.size()) throw ContractError("cyclic relaying needs a relay");
  const auto& r = topo.relays[relay];
  if (cycle == 0 || cycle * r.transmit_antennas > r.antennas) {
    throw ConfigError("cyclic relaying needs 1 <= I and I*M_t <= M (I=" + std::to_string(cycle) +
                      ", M_t=" + std::to_string(r.transmit_antennas) +
                      ", M=" + std::to_string(r.antennas) + ")");
  }
}

ComplexMatrix antenna_set(const NetworkTopology& topo, const ChannelRealization& ch,
                          std::size_t relay, std::size_t set) {
  const std::size_t mt = topo.relays[relay].transmit_antennas;
  return ch.h_rd[relay].column_block(set * mt, mt);
}

double top_eigen_product(const ComplexMatrix& h) {
  const auto eig = hermitian_eigenvalues(gram(h));
  const std::size_t keep = std::min(h.rows(), h.cols());
  double prod = 1.0;
  for (std::size_t i = eig.size() - keep; i < eig.size(); ++i) prod *= eig[i];
  return prod;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

double c_direct(const ChannelRealization& ch, double eta) { return logdet_capacity(ch.h_sd, eta); }

double c_source_relay(const ChannelRealization& ch, std::size_t relay, double phi, double eta) {
  check_relay(ch, relay);
  return logdet_capacity(ch.h_sr[relay], phi * eta);
}

double c_composite(const NetworkTopology& topo, const ChannelRealization& ch,
                   std::span<const std::size_t> decoding_set, double eta) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(decoding_set.size() + 1);
  blocks.push_back(ch.h_sd);
  for (std::size_t relay : decoding_set) {
    check_relay(ch, relay);
    blocks.push_back(transmit_block(topo, ch, relay));
  }
  return logdet_capacity(hconcat(blocks), eta);
}

double c_composite_mask(const NetworkTopology& topo, const ChannelRealization& ch,
                        std::uint32_t mask, double eta) {
  std::vector<std::size_t> set;
  for (std::size_t i = 0; i < ch.h_rd.size(); ++i)
    if (mask & (1u << i)) set.push_back(i);
  return c_composite(topo, ch, set, eta);
}

std::vector<double> cyclic_slot_capacities(const NetworkTopology& topo,
                                           const ChannelRealization& ch, std::size_t cycle,
                                           double eta, std::size_t relay) {
  check_cycle(topo, cycle, relay);
  std::vector<double> out;
  out.reserve(cycle);
  for (std::size_t i = 0; i < cycle; ++i) {
    const ComplexMatrix blocks[] = {ch.h_sd, antenna_set(topo, ch, relay, i)};
    out.push_back(logdet_capacity(hconcat(blocks), eta));
  }
  return out;
}

double c_cyclic(const NetworkTopology& topo, const ChannelRealization& ch, std::size_t cycle,
                double eta, std::size_t relay) {
  const auto slots = cyclic_slot_capacities(topo, ch, cycle, eta, relay);
  return std::accumulate(slots.begin(), slots.end(), 0.0) / static_cast<double>(cycle);
}

double c_cyclic_stacked(const NetworkTopology& topo, const ChannelRealization& ch,
                        std::size_t cycle, double eta, std::size_t relay) {
  check_cycle(topo, cycle, relay);
  std::vector<ComplexMatrix> blocks{ch.h_sd};
  for (std::size_t i = 0; i < cycle; ++i) blocks.push_back(antenna_set(topo, ch, relay, i));
  return logdet_capacity(hconcat(blocks), eta);
}

double c_half_duplex_pair(const NetworkTopology& topo, const ChannelRealization& ch,
                          std::size_t relay, double eta) {
  check_relay(ch, relay);
  return 0.5 * (logdet_capacity(ch.h_sd, eta) +
                logdet_capacity(transmit_block(topo, ch, relay), eta));
}

bool decode_constraint_fixed(const NetworkTopology& topo, const ChannelRealization& ch,
                             std::size_t relay, double phi, double eta) {
  const std::size_t set[] = {relay};
  return c_source_relay(ch, relay, phi, eta) >= c_composite(topo, ch, set, eta);
}

bool decode_constraint_cyclic(const NetworkTopology& topo, const ChannelRealization& ch,
                              std::size_t cycle, double phi, double eta, std::size_t relay) {
  const auto slots = cyclic_slot_capacities(topo, ch, cycle, eta, relay);
  const double rhs = std::accumulate(slots.begin(), slots.end(), 0.0);
  return static_cast<double>(cycle) * c_source_relay(ch, relay, phi, eta) >= rhs;
}

bool decode_constraint_stc(const NetworkTopology& topo, const ChannelRealization& ch,
                           std::size_t relay, double phi, double eta) {
  check_relay(ch, relay);
  const double rhs = logdet_capacity(ch.h_sd, eta) +
                     logdet_capacity(transmit_block(topo, ch, relay), eta);
  return c_source_relay(ch, relay, phi, eta) >= rhs;
}

std::optional<Rational> omega_fixed(std::size_t k, std::size_t m_r, std::size_t n,
                                    std::size_t m_t) {
  const auto m_sr = static_cast<std::int64_t>(std::min(k, m_r));
  const auto m_srd = static_cast<std::int64_t>(std::min(k + m_t, n));
  if (m_srd <= m_sr) return std::nullopt;
  return Rational::make(m_sr, m_srd - m_sr);
}

std::optional<double> nu_value(const NetworkTopology& topo, const ChannelRealization& ch,
                               std::size_t relay) {
  check_relay(ch, relay);
  const auto& r = topo.relays[relay];
  const std::size_t m_sr = std::min(topo.source_antennas, r.receive_antennas);
  const std::size_t m_srd = std::min(topo.source_antennas + r.transmit_antennas, topo.dest_antennas);
  if (m_srd <= m_sr) return std::nullopt;
  const ComplexMatrix blocks[] = {ch.h_sd, transmit_block(topo, ch, relay)};
  const double lambda_sr = top_eigen_product(ch.h_sr[relay]);
  const double lambda_srd = top_eigen_product(hconcat(blocks));
  if (!(lambda_srd > 0.0)) throw NumericError("nu_value: composite Gram is singular");
  return std::pow(lambda_sr / lambda_srd, 1.0 / static_cast<double>(m_srd - m_sr));
}

LowSnrCheck low_snr_condition(const NetworkTopology& topo, const ChannelRealization& ch,
                              std::size_t relay, double phi) {
  check_relay(ch, relay);
  const auto& r = topo.relays[relay];
  if (r.antennas <= r.transmit_antennas)
    throw DomainError("low_snr_condition needs M > M_t");
  const std::size_t listen = r.antennas - r.transmit_antennas;
  const ComplexMatrix& h_sr = ch.h_sr[relay];
  if (h_sr.rows() < listen)
    throw ConfigError("low_snr_condition needs M_r >= M - M_t");

  const ComplexMatrix blocks[] = {ch.h_sd, transmit_block(topo, ch, relay)};
  LowSnrCheck out;
  out.composite_energy = hconcat(blocks).frobenius_squared();
  out.source_relay_energy = h_sr.row_block(h_sr.rows() - listen, listen).frobenius_squared();
  const auto k = static_cast<double>(topo.source_antennas);
  out.chi_composite = out.composite_energy /
                      (static_cast<double>(topo.dest_antennas) * (k + static_cast<double>(r.transmit_antennas)));
  out.chi_source_relay = out.source_relay_energy / (static_cast<double>(listen) * k);
  out.holds = out.composite_energy <= phi * out.source_relay_energy;
  return out;
}

}  // namespace coopmux
