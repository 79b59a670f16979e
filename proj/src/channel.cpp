// SPDX-License-Identifier: Apache-2.0
#include "coopmux/channel.hpp"

#include <cmath>
#include <sstream>

#include "coopmux/errors.hpp"

namespace coopmux {

RelaySpec RelaySpec::make(std::size_t m, std::size_t m_t, double phi_db,
                          std::optional<std::size_t> m_r) {
  RelaySpec r;
  r.antennas = m;
  r.transmit_antennas = m_t;
  r.receive_antennas = m_r.value_or(m);
  r.path_gain_db = phi_db;
  r.validate();
  return r;
}

void RelaySpec::validate() const {
  if (antennas == 0 || transmit_antennas == 0 || receive_antennas == 0)
    throw ConfigError("relay antenna counts must be positive");
  if (transmit_antennas > antennas) throw ConfigError("relay needs M_t <= M");
  if (receive_antennas > antennas) throw ConfigError("relay needs M_r <= M");
  if (!std::isfinite(path_gain_db)) throw ConfigError("relay path gain must be finite");
}

void NetworkTopology::validate() const {
  if (source_antennas == 0 || dest_antennas == 0)
    throw ConfigError("source and destination antenna counts must be positive");
  if (source_antennas > kMaxDimension || dest_antennas > kMaxDimension)
    throw SizeError("antenna count exceeds the matrix dimension ceiling");
  for (const auto& r : relays) r.validate();
  if (path_loss_exponent && !(*path_loss_exponent > 0.0))
    throw ConfigError("path loss exponent must be positive");
}

std::string NetworkTopology::describe() const {
  std::ostringstream os;
  os << "K=" << source_antennas << " N=" << dest_antennas << " relays=[";
  for (std::size_t i = 0; i < relays.size(); ++i) {
    const auto& r = relays[i];
    if (i) os << "; ";
    os << "M=" << r.antennas << " Mt=" << r.transmit_antennas << " Mr=" << r.receive_antennas
       << " phi_db=" << r.path_gain_db;
  }
  os << "]";
  return os.str();
}

RateSpec RateSpec::with_default_gain(double r, const NetworkTopology& topology) {
  return {r, static_cast<double>(topology.source_antennas * topology.dest_antennas)};
}

double path_gain_from_distance(double distance, double exponent) {
  if (!(distance > 0.0) || distance > 1.0)
    throw DomainError("relay distance must lie in (0, 1]");
  if (!(exponent > 0.0)) throw DomainError("path loss exponent must be positive");
  return std::pow(distance, -exponent);
}

ChannelRealization sample_realization(const NetworkTopology& topology, RngStream& stream) {
  const std::size_t k = topology.source_antennas;
  const std::size_t n = topology.dest_antennas;
  ChannelRealization out{sample_gaussian_matrix(n, k, stream), {}, {}};
  out.h_sr.reserve(topology.relays.size());
  out.h_rd.reserve(topology.relays.size());
  for (const auto& relay : topology.relays) {
    out.h_sr.push_back(sample_gaussian_matrix(relay.receive_antennas, k, stream));
    out.h_rd.push_back(sample_gaussian_matrix(n, relay.antennas, stream));
  }
  return out;
}

double rate_at(const RateSpec& rate, double eta_linear) {
  return rate.multiplexing_gain * std::log2(1.0 + rate.array_gain * eta_linear);
}

double rate_at(const RateSpec& rate, const SnrPoint& snr) { return rate_at(rate, snr.linear()); }

}  // namespace coopmux
