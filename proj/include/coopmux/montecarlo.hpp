// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coopmux/channel.hpp"
#include "coopmux/stats.hpp"

namespace coopmux {

enum class Scheme {
  Direct,
  FixedAdaptive,
  FixedBound,
  Multicast,
  RelaySelection,
  MultiAdaptive,
  CyclicAdaptive,
  StcAdaptive,
};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

struct ProtocolSpec {
  Scheme scheme = Scheme::Direct;
  NetworkTopology topology;
  std::optional<std::size_t> cyclic_cycle;  // I, required iff CyclicAdaptive

  void validate() const;
};

/// Trial t of every estimator draws its channel from RngStream(seed, t), so
/// estimators sharing a seed see the same realizations (common random numbers)
/// and results do not depend on `workers`.
struct McOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: OpenMP default, 1: serial reference path
};

/// Largest relay count for which decoding subsets are enumerated.
inline constexpr std::size_t kMaxEnumeratedRelays = 8;

// ---- point estimators -----------------------------------------------------

/// Pr(log2 det(I + eta H H^H) < rate) for an rx x tx Rayleigh channel.
OutageEstimate estimate_mimo_outage(std::size_t tx, std::size_t rx, double eta, double rate,
                                    const McOptions& opts);

/// Pr(C_sr >= C_{SR,D}) for a single relay.
OutageEstimate estimate_pc_fixed(const NetworkTopology& topo, double eta, const McOptions& opts);

/// Pr(nu > eta / phi^omega). Throws ConfigError when omega is degenerate.
OutageEstimate estimate_pnu(const NetworkTopology& topo, double eta, const McOptions& opts);

/// Adaptive fixed relaying: the composite channel when C_sr >= R, else the direct link.
OutageEstimate simulate_adaptive_single(const NetworkTopology& topo, double eta, double rate,
                                        const McOptions& opts);

/// A value derived from several estimates, with a delta-method 95% interval.
struct DerivedEstimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

struct AdaptiveBound {
  DerivedEstimate bound;  // P_c P_composite + (1 - P_c) P_direct
  OutageEstimate pc;
  OutageEstimate composite;
  OutageEstimate direct;
};

AdaptiveBound bound_adaptive_single(const NetworkTopology& topo, double eta, double rate,
                                    const McOptions& opts);

/// Every relay must decode (min_i C_sr,i >= R), then the all-relay composite.
OutageEstimate simulate_multicast(const NetworkTopology& topo, double eta, double rate,
                                  const McOptions& opts);

/// Best source-relay capacity forwards if it decodes, else the direct link.
OutageEstimate simulate_relay_selection(const NetworkTopology& topo, double eta, double rate,
                                        const McOptions& opts);

/// Pr(exists i with C_sr,i >= C_{SR_i,D}).
OutageEstimate estimate_pc_ors(const NetworkTopology& topo, double eta, const McOptions& opts);

struct MultiAdaptiveEstimate {
  OutageEstimate outage;
  std::vector<OutageEstimate> decode_set_size;  // index i: Pr(|O| = i), i = 0..relays
  std::vector<double> binomial;                 // binomial P_i from the mean per-relay failure rate
};

/// Decoding set O = {i : C_sr,i >= R}; outage iff C_{SO,D} < R.
MultiAdaptiveEstimate simulate_multi_adaptive(const NetworkTopology& topo, double eta, double rate,
                                              const McOptions& opts);

struct PciEstimate {
  std::vector<OutageEstimate> empty;  // index i-1: P^empty_{c_i} = Pr(X_{i-1}), i = 1..relays
  std::vector<DerivedEstimate> pc;    // index i-1: P_{c_i}
  std::uint64_t nesting_violations = 0;  // trials with X_{i-1} but not X_i
};

/// Enumerates every decoding subset; needs at most kMaxEnumeratedRelays relays.
PciEstimate estimate_pci(const NetworkTopology& topo, double eta, const McOptions& opts);

/// Cyclic relaying with the adaptive rule (relay forwards iff C_sr >= R).
OutageEstimate simulate_cyclic_adaptive(const NetworkTopology& topo, std::size_t cycle, double eta,
                                        double rate, const McOptions& opts);
OutageEstimate estimate_pc_cyclic(const NetworkTopology& topo, std::size_t cycle, double eta,
                                  const McOptions& opts);

/// Half-duplex space-time coding at average rate R_bar. The relay decodes iff
/// C_sr >= 2 R_bar; then outage iff (C_sd + C_rd)/2 < R_bar, otherwise iff C_sd < 2 R_bar.
OutageEstimate simulate_stc_adaptive(const NetworkTopology& topo, double eta, double avg_rate,
                                     const McOptions& opts);

// ---- sweeps -----------------------------------------------------------------

struct SeriesPoint {
  double eta_db = 0.0;
  bool defined = true;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

struct Series {
  std::string name;
  std::vector<SeriesPoint> points;
};

struct SweepResult {
  ProtocolSpec spec;
  RateSpec rate;
  std::vector<double> eta_db;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string primary;  // name of the scheme's own outage series
  std::vector<Series> series;

  const Series& find(std::string_view name) const;
  bool has(std::string_view name) const;
};

/// Evaluates the scheme and its reference curves at every grid point from the
/// same per-trial realizations. Series names per scheme:
///   direct          direct
///   fixed_*         adaptive, pc, composite, direct, sr_fail, pnu, bound, plugin
///   multicast       multicast, any_sr_fail, composite_all, direct, plugin
///   relay_selection selection, pc_ors, composite, direct, all_sr_fail, bound, plugin
///   multi_adaptive  multi_adaptive, selection, decoded_<i>, composite_<i>, relay_fail_<i>,
///                   pci_empty_<i>, pc_<i>, binomial_<i>, plugin
///   cyclic_adaptive cyclic, pc_cyclic, cyclic_perfect, composite, direct, bound
///   stc_adaptive    stc, pc_stc, stc_perfect, direct_hd, bound
SweepResult run_sweep(const ProtocolSpec& spec, const RateSpec& rate,
                      std::span<const SnrPoint> grid, const McOptions& opts);

/// Evenly spaced grid from start to stop inclusive.
std::vector<SnrPoint> snr_grid(double start_db, double stop_db, double step_db);

// ---- finite-SNR diversity -----------------------------------------------------

struct DiversityPoint {
  double eta_db = 0.0;
  std::optional<double> d;  // empty where a needed probability is zero
};

/// d = -d ln p / d ln eta by central differences (one-sided at the ends).
DiversityPoint finite_snr_point(std::span<const double> eta_db, std::span<const double> p,
                                std::size_t index);
std::vector<DiversityPoint> finite_snr_diversity(std::span<const double> eta_db,
                                                 std::span<const double> p);
std::vector<DiversityPoint> finite_snr_diversity(const SweepResult& sweep, std::string_view series);

/// Combines the pc, composite and direct series of a fixed-relaying sweep into
/// the adaptive protocol's estimated finite-SNR diversity.
std::vector<DiversityPoint> estimate_adaptive_diversity(const SweepResult& sweep);

}  // namespace coopmux
