// SPDX-License-Identifier: Apache-2.0
#include "coopmux/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "coopmux/capacity.hpp"
#include "coopmux/dmt.hpp"
#include "coopmux/engine.hpp"
#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

struct GridPoint {
  double eta = 0.0;
  double rate = 0.0;
};

// Flat tally layout: [point][event].
struct EventTable {
  std::vector<std::string> names;

  std::size_t add(std::string name) {
    names.push_back(std::move(name));
    return names.size() - 1;
  }
  std::size_t index(std::string_view name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ContractError("unknown event '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names.begin());
  }
  std::size_t size() const { return names.size(); }
};

using Evaluator = std::function<void(const ChannelRealization&, std::span<const GridPoint>,
                                     std::span<std::uint64_t>)>;

struct SchemeModel {
  EventTable events;
  Evaluator eval;
  std::vector<std::string> undefined;
};

struct Tally {
  const EventTable* events;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials;

  OutageEstimate at(std::size_t point, std::string_view name) const {
    return OutageEstimate::from_counts(counts[point * events->size() + events->index(name)], trials);
  }
};

// Marks event `e` at grid point `p`.
struct Marker {
  std::span<std::uint64_t> tally;
  std::size_t stride;
  void operator()(std::size_t p, std::size_t e, bool hit) const { tally[p * stride + e] += hit ? 1u : 0u; }
};

void require_relays(const NetworkTopology& topo, std::size_t min, std::size_t max, const char* scheme) {
  const std::size_t n = topo.relay_count();
  if (n < min || n > max) {
    throw SchemeError(std::string(scheme) + " does not support " + std::to_string(n) + " relay(s)");
  }
}

Tally run_model(const NetworkTopology& topo, const SchemeModel& model,
                std::span<const GridPoint> points, const McOptions& opts) {
  if (opts.trials == 0) throw ContractError("trial count must be positive");
  topo.validate();
  const std::size_t stride = model.events.size();
  const TrialKernel kernel = [&](std::uint64_t trial, std::span<std::uint64_t> counts) {
    RngStream stream(opts.seed, trial);
    const ChannelRealization ch = sample_realization(topo, stream);
    model.eval(ch, points, counts);
  };
  return {&model.events, tally(opts.trials, stride * points.size(), kernel, opts.workers), opts.trials};
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> source_relay_caps(const NetworkTopology& topo, const ChannelRealization& ch,
                                      double eta) {
  std::vector<double> caps(topo.relay_count());
  for (std::size_t i = 0; i < caps.size(); ++i)
    caps[i] = c_source_relay(ch, i, topo.relays[i].path_gain(), eta);
  return caps;
}

std::uint32_t full_mask(std::size_t relays) {
  return relays >= 32 ? 0xFFFFFFFFu : ((1u << relays) - 1u);
}

// ---- scheme models ------------------------------------------------------------

SchemeModel direct_model(const NetworkTopology&) {
  SchemeModel m;
  const auto direct = m.events.add("direct");
  const std::size_t stride = m.events.size();
  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    for (std::size_t p = 0; p < pts.size(); ++p) mark(p, direct, c_direct(ch, pts[p].eta) < pts[p].rate);
  };
  return m;
}

SchemeModel fixed_model(const NetworkTopology& topo) {
  require_relays(topo, 1, 1, "fixed relaying");
  SchemeModel m;
  auto& ev = m.events;
  const auto adaptive = ev.add("adaptive"), pc = ev.add("pc"), composite = ev.add("composite"),
             direct = ev.add("direct"), sr_fail = ev.add("sr_fail"), pnu = ev.add("pnu");
  const std::size_t stride = ev.size();
  const auto& relay = topo.relays[0];
  const double phi = relay.path_gain();
  const auto omega =
      omega_fixed(topo.source_antennas, relay.receive_antennas, topo.dest_antennas, relay.transmit_antennas);
  if (!omega) m.undefined.push_back("pnu");
  const double phi_pow = omega ? std::pow(phi, omega->value()) : 0.0;

  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    const std::optional<double> nu = omega ? nu_value(topo, ch, 0) : std::nullopt;
    const std::size_t set[] = {0};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, rate] = pts[p];
      const double csd = c_direct(ch, eta);
      const double csr = c_source_relay(ch, 0, phi, eta);
      const double csrd = c_composite(topo, ch, set, eta);
      mark(p, adaptive, csr >= rate ? csrd < rate : csd < rate);
      mark(p, pc, csr >= csrd);
      mark(p, composite, csrd < rate);
      mark(p, direct, csd < rate);
      mark(p, sr_fail, csr < rate);
      if (nu) mark(p, pnu, *nu > eta / phi_pow);
    }
  };
  return m;
}

SchemeModel multicast_model(const NetworkTopology& topo) {
  require_relays(topo, 1, 32, "multicast");
  SchemeModel m;
  auto& ev = m.events;
  const auto multicast = ev.add("multicast"), any_fail = ev.add("any_sr_fail"),
             composite_all = ev.add("composite_all"), direct = ev.add("direct");
  const std::size_t stride = ev.size();
  const std::uint32_t all = full_mask(topo.relay_count());
  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, rate] = pts[p];
      const auto csr = source_relay_caps(topo, ch, eta);
      const bool every = std::all_of(csr.begin(), csr.end(), [&](double c) { return c >= rate; });
      const bool comp_out = c_composite_mask(topo, ch, all, eta) < rate;
      mark(p, multicast, !every || comp_out);
      mark(p, any_fail, !every);
      mark(p, composite_all, comp_out);
      mark(p, direct, c_direct(ch, eta) < rate);
    }
  };
  return m;
}

SchemeModel selection_model(const NetworkTopology& topo) {
  require_relays(topo, 1, 32, "relay selection");
  SchemeModel m;
  auto& ev = m.events;
  const auto selection = ev.add("selection"), pc_ors = ev.add("pc_ors"),
             composite = ev.add("composite"), direct = ev.add("direct"),
             all_fail = ev.add("all_sr_fail");
  const std::size_t stride = ev.size();
  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, rate] = pts[p];
      const auto csr = source_relay_caps(topo, ch, eta);
      const double csd = c_direct(ch, eta);
      std::vector<double> single(csr.size());
      bool any_dominant = false;
      for (std::size_t i = 0; i < csr.size(); ++i) {
        single[i] = c_composite_mask(topo, ch, 1u << i, eta);
        any_dominant = any_dominant || csr[i] >= single[i];
      }
      const std::size_t best = argmax(csr);
      const bool decoded = csr[best] >= rate;
      mark(p, selection, decoded ? single[best] < rate : csd < rate);
      mark(p, pc_ors, any_dominant);
      mark(p, composite, single[0] < rate);
      mark(p, direct, csd < rate);
      mark(p, all_fail, !decoded);
    }
  };
  return m;
}

SchemeModel multi_model(const NetworkTopology& topo) {
  require_relays(topo, 1, 32, "multi-relay adaptive");
  const std::size_t nr = topo.relay_count();
  const bool enumerate = nr <= kMaxEnumeratedRelays;
  SchemeModel m;
  auto& ev = m.events;
  const auto outage = ev.add("multi_adaptive"), selection = ev.add("selection");
  std::vector<std::size_t> decoded(nr + 1), composite(nr + 1), relay_fail(nr), empty(nr);
  for (std::size_t i = 0; i <= nr; ++i) decoded[i] = ev.add("decoded_" + std::to_string(i));
  for (std::size_t i = 0; i <= nr; ++i) composite[i] = ev.add("composite_" + std::to_string(i));
  for (std::size_t i = 0; i < nr; ++i) relay_fail[i] = ev.add("relay_fail_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nr; ++i) empty[i] = ev.add("pci_empty_" + std::to_string(i + 1));
  const auto nesting = ev.add("nesting_violation");
  if (!enumerate) {
    for (std::size_t i = 0; i < nr; ++i) m.undefined.push_back("pci_empty_" + std::to_string(i + 1));
  }
  const std::size_t stride = ev.size();

  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    std::vector<double> caps;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, rate] = pts[p];
      const auto csr = source_relay_caps(topo, ch, eta);
      std::uint32_t decoded_mask = 0;
      for (std::size_t i = 0; i < nr; ++i)
        if (csr[i] >= rate) decoded_mask |= 1u << i;

      auto cap = [&](std::uint32_t mask) { return c_composite_mask(topo, ch, mask, eta); };
      if (enumerate) {
        caps.assign(std::size_t{1} << nr, 0.0);
        for (std::uint32_t mask = 0; mask < caps.size(); ++mask) caps[mask] = cap(mask);
      }
      auto lookup = [&](std::uint32_t mask) { return enumerate ? caps[mask] : cap(mask); };

      mark(p, outage, lookup(decoded_mask) < rate);
      const std::size_t best = argmax(csr);
      mark(p, selection, csr[best] >= rate ? lookup(1u << best) < rate : lookup(0) < rate);
      mark(p, decoded[static_cast<std::size_t>(std::popcount(decoded_mask))], true);
      for (std::size_t i = 0; i <= nr; ++i) mark(p, composite[i], lookup(full_mask(i)) < rate);
      for (std::size_t i = 0; i < nr; ++i) mark(p, relay_fail[i], csr[i] < rate);

      if (!enumerate) continue;
      // x[s] = every subset of size s+1 has a member j with C_sr,j < C_{SO,D}.
      std::vector<bool> x(nr, true);
      for (std::uint32_t mask = 1; mask < caps.size(); ++mask) {
        bool some_fails = false;
        for (std::size_t j = 0; j < nr && !some_fails; ++j)
          if ((mask & (1u << j)) && csr[j] < caps[mask]) some_fails = true;
        if (!some_fails) x[static_cast<std::size_t>(std::popcount(mask)) - 1] = false;
      }
      bool violated = false;
      for (std::size_t i = 0; i < nr; ++i) {
        mark(p, empty[i], x[i]);
        if (i + 1 < nr && x[i] && !x[i + 1]) violated = true;
      }
      mark(p, nesting, violated);
    }
  };
  return m;
}

SchemeModel cyclic_model(const NetworkTopology& topo, std::size_t cycle) {
  require_relays(topo, 1, 1, "cyclic relaying");
  const auto& relay = topo.relays[0];
  if (cycle == 0 || cycle * relay.transmit_antennas > relay.antennas)
    throw ConfigError("cyclic relaying needs I*M_t <= M");
  SchemeModel m;
  auto& ev = m.events;
  const auto cyclic = ev.add("cyclic"), pc = ev.add("pc_cyclic"), perfect = ev.add("cyclic_perfect"),
             composite = ev.add("composite"), direct = ev.add("direct");
  const std::size_t stride = ev.size();
  const double phi = relay.path_gain();
  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    const std::size_t set[] = {0};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, rate] = pts[p];
      const double csd = c_direct(ch, eta);
      const double csr = c_source_relay(ch, 0, phi, eta);
      const auto slots = cyclic_slot_capacities(topo, ch, cycle, eta);
      double sum = 0.0;
      for (double s : slots) sum += s;
      const double ccyc = sum / static_cast<double>(cycle);
      mark(p, cyclic, csr >= rate ? ccyc < rate : csd < rate);
      mark(p, pc, static_cast<double>(cycle) * csr >= sum);
      mark(p, perfect, ccyc < rate);
      mark(p, composite, c_composite(topo, ch, set, eta) < rate);
      mark(p, direct, csd < rate);
    }
  };
  return m;
}

SchemeModel stc_model(const NetworkTopology& topo) {
  require_relays(topo, 1, 1, "space-time coding");
  SchemeModel m;
  auto& ev = m.events;
  const auto stc = ev.add("stc"), pc = ev.add("pc_stc"), perfect = ev.add("stc_perfect"),
             direct_hd = ev.add("direct_hd");
  const std::size_t stride = ev.size();
  const double phi = topo.relays[0].path_gain();
  const std::size_t mt = topo.relays[0].transmit_antennas;
  m.eval = [=](const ChannelRealization& ch, std::span<const GridPoint> pts, std::span<std::uint64_t> t) {
    const Marker mark{t, stride};
    const ComplexMatrix h_rd_tx = ch.h_rd[0].column_block(0, mt);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [eta, avg_rate] = pts[p];
      const double csd = c_direct(ch, eta);
      const double crd = logdet_capacity(h_rd_tx, eta);
      const double csr = c_source_relay(ch, 0, phi, eta);
      const double pair = 0.5 * (csd + crd);
      mark(p, stc, csr >= 2.0 * avg_rate ? pair < avg_rate : csd < 2.0 * avg_rate);
      mark(p, pc, csr >= csd + crd);
      mark(p, perfect, pair < avg_rate);
      mark(p, direct_hd, csd < 2.0 * avg_rate);
    }
  };
  return m;
}

SchemeModel model_for(const ProtocolSpec& spec) {
  switch (spec.scheme) {
    case Scheme::Direct: return direct_model(spec.topology);
    case Scheme::FixedAdaptive:
    case Scheme::FixedBound: return fixed_model(spec.topology);
    case Scheme::Multicast: return multicast_model(spec.topology);
    case Scheme::RelaySelection: return selection_model(spec.topology);
    case Scheme::MultiAdaptive: return multi_model(spec.topology);
    case Scheme::CyclicAdaptive: return cyclic_model(spec.topology, spec.cyclic_cycle.value_or(0));
    case Scheme::StcAdaptive: return stc_model(spec.topology);
  }
  throw ContractError("unknown scheme");
}

// ---- derived quantities ---------------------------------------------------------

struct Component {
  double value;
  double sigma;
};

Component component(const OutageEstimate& e) { return {e.p_hat, e.half_width() / kZ95}; }
constexpr Component kOne{1.0, 0.0};

DerivedEstimate derived(double value, double sigma) {
  return {value, std::clamp(value - kZ95 * sigma, 0.0, 1.0), std::clamp(value + kZ95 * sigma, 0.0, 1.0)};
}

// w a + (1 - w) b.
DerivedEstimate mix(Component w, Component a, Component b) {
  const double value = w.value * a.value + (1.0 - w.value) * b.value;
  const double var = std::pow((a.value - b.value) * w.sigma, 2) + std::pow(w.value * a.sigma, 2) +
                     std::pow((1.0 - w.value) * b.sigma, 2);
  return derived(value, std::sqrt(var));
}

// 1 - num/den, or 0 when den == 0.
DerivedEstimate one_minus_ratio(Component num, Component den) {
  if (den.value == 0.0) return {0.0, 0.0, 0.0};
  const double value = 1.0 - num.value / den.value;
  const double var = std::pow(num.sigma / den.value, 2) +
                     std::pow(num.value * den.sigma / (den.value * den.value), 2);
  return derived(value, std::sqrt(var));
}

std::vector<DerivedEstimate> pc_from_empty(const std::vector<OutageEstimate>& empty) {
  const std::size_t nr = empty.size();
  std::vector<DerivedEstimate> pc(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    if (i + 1 == nr) {
      pc[i] = mix(component(empty[i]), {0.0, 0.0}, kOne);
    } else {
      pc[i] = one_minus_ratio(component(empty[i]), component(empty[i + 1]));
    }
  }
  return pc;
}

std::vector<double> binomial_weights(std::size_t n, double fail) {
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double choose = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0)));
    w[i] = choose * std::pow(fail, static_cast<double>(n - i)) * std::pow(1.0 - fail, static_cast<double>(i));
  }
  return w;
}

SeriesPoint to_point(double eta_db, const OutageEstimate& e) {
  return {eta_db, true, e.p_hat, e.ci_low, e.ci_high};
}
SeriesPoint to_point(double eta_db, const DerivedEstimate& e) {
  return {eta_db, true, e.value, e.ci_low, e.ci_high};
}

GridPoint single_point(double eta, double rate) {
  if (!(eta >= 0.0)) throw DomainError("SNR must be nonnegative");
  if (!(rate >= 0.0)) throw DomainError("rate must be nonnegative");
  return {eta, rate};
}

OutageEstimate single(const NetworkTopology& topo, const SchemeModel& model, double eta, double rate,
                      const McOptions& opts, std::string_view event) {
  const GridPoint pt[] = {single_point(eta, rate)};
  return run_model(topo, model, pt, opts).at(0, event);
}

}  // namespace

// ---- public API -------------------------------------------------------------------

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Direct: return "direct";
    case Scheme::FixedAdaptive: return "fixed_adaptive";
    case Scheme::FixedBound: return "fixed_bound";
    case Scheme::Multicast: return "multicast";
    case Scheme::RelaySelection: return "relay_selection";
    case Scheme::MultiAdaptive: return "multi_adaptive";
    case Scheme::CyclicAdaptive: return "cyclic_adaptive";
    case Scheme::StcAdaptive: return "stc_adaptive";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Direct, Scheme::FixedAdaptive, Scheme::FixedBound, Scheme::Multicast,
                   Scheme::RelaySelection, Scheme::MultiAdaptive, Scheme::CyclicAdaptive,
                   Scheme::StcAdaptive})
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

void ProtocolSpec::validate() const {
  topology.validate();
  const bool cyclic = scheme == Scheme::CyclicAdaptive;
  if (cyclic != cyclic_cycle.has_value())
    throw ConfigError(cyclic ? "cyclic_adaptive requires cyclic_I"
                             : "cyclic_I is only valid for cyclic_adaptive");
  (void)model_for(*this);
}

OutageEstimate estimate_mimo_outage(std::size_t tx, std::size_t rx, double eta, double rate,
                                    const McOptions& opts) {
  if (opts.trials == 0) throw ContractError("trial count must be positive");
  const GridPoint pt = single_point(eta, rate);
  const TrialKernel kernel = [&](std::uint64_t trial, std::span<std::uint64_t> counts) {
    RngStream stream(opts.seed, trial);
    const ComplexMatrix h = sample_gaussian_matrix(rx, tx, stream);
    counts[0] += logdet_capacity(h, pt.eta) < pt.rate ? 1u : 0u;
  };
  const auto counts = tally(opts.trials, 1, kernel, opts.workers);
  return OutageEstimate::from_counts(counts[0], opts.trials);
}

OutageEstimate estimate_pc_fixed(const NetworkTopology& topo, double eta, const McOptions& opts) {
  return single(topo, fixed_model(topo), eta, 0.0, opts, "pc");
}

OutageEstimate estimate_pnu(const NetworkTopology& topo, double eta, const McOptions& opts) {
  const SchemeModel model = fixed_model(topo);
  if (!model.undefined.empty()) throw ConfigError("P_nu undefined: degenerate omega (M_SRD <= M_SR)");
  return single(topo, model, eta, 0.0, opts, "pnu");
}

OutageEstimate simulate_adaptive_single(const NetworkTopology& topo, double eta, double rate,
                                        const McOptions& opts) {
  return single(topo, fixed_model(topo), eta, rate, opts, "adaptive");
}

AdaptiveBound bound_adaptive_single(const NetworkTopology& topo, double eta, double rate,
                                    const McOptions& opts) {
  const SchemeModel model = fixed_model(topo);
  const GridPoint pt[] = {single_point(eta, rate)};
  const Tally t = run_model(topo, model, pt, opts);
  AdaptiveBound out{{}, t.at(0, "pc"), t.at(0, "composite"), t.at(0, "direct")};
  out.bound = mix(component(out.pc), component(out.composite), component(out.direct));
  return out;
}

OutageEstimate simulate_multicast(const NetworkTopology& topo, double eta, double rate,
                                  const McOptions& opts) {
  return single(topo, multicast_model(topo), eta, rate, opts, "multicast");
}

OutageEstimate simulate_relay_selection(const NetworkTopology& topo, double eta, double rate,
                                        const McOptions& opts) {
  return single(topo, selection_model(topo), eta, rate, opts, "selection");
}

OutageEstimate estimate_pc_ors(const NetworkTopology& topo, double eta, const McOptions& opts) {
  return single(topo, selection_model(topo), eta, 0.0, opts, "pc_ors");
}

MultiAdaptiveEstimate simulate_multi_adaptive(const NetworkTopology& topo, double eta, double rate,
                                              const McOptions& opts) {
  const SchemeModel model = multi_model(topo);
  const GridPoint pt[] = {single_point(eta, rate)};
  const Tally t = run_model(topo, model, pt, opts);
  const std::size_t nr = topo.relay_count();
  MultiAdaptiveEstimate out;
  out.outage = t.at(0, "multi_adaptive");
  double fail = 0.0;
  for (std::size_t i = 0; i <= nr; ++i) out.decode_set_size.push_back(t.at(0, "decoded_" + std::to_string(i)));
  for (std::size_t i = 1; i <= nr; ++i) fail += t.at(0, "relay_fail_" + std::to_string(i)).p_hat;
  out.binomial = binomial_weights(nr, fail / static_cast<double>(nr));
  return out;
}

PciEstimate estimate_pci(const NetworkTopology& topo, double eta, const McOptions& opts) {
  if (topo.relay_count() > kMaxEnumeratedRelays)
    throw ConfigError("estimate_pci enumerates subsets and supports at most 8 relays");
  const SchemeModel model = multi_model(topo);
  const GridPoint pt[] = {single_point(eta, 0.0)};
  const Tally t = run_model(topo, model, pt, opts);
  PciEstimate out;
  for (std::size_t i = 1; i <= topo.relay_count(); ++i)
    out.empty.push_back(t.at(0, "pci_empty_" + std::to_string(i)));
  out.pc = pc_from_empty(out.empty);
  out.nesting_violations = t.at(0, "nesting_violation").events;
  return out;
}

OutageEstimate simulate_cyclic_adaptive(const NetworkTopology& topo, std::size_t cycle, double eta,
                                        double rate, const McOptions& opts) {
  return single(topo, cyclic_model(topo, cycle), eta, rate, opts, "cyclic");
}

OutageEstimate estimate_pc_cyclic(const NetworkTopology& topo, std::size_t cycle, double eta,
                                  const McOptions& opts) {
  return single(topo, cyclic_model(topo, cycle), eta, 0.0, opts, "pc_cyclic");
}

OutageEstimate simulate_stc_adaptive(const NetworkTopology& topo, double eta, double avg_rate,
                                     const McOptions& opts) {
  return single(topo, stc_model(topo), eta, avg_rate, opts, "stc");
}

const Series& SweepResult::find(std::string_view name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw ContractError("sweep has no series '" + std::string(name) + "'");
}

bool SweepResult::has(std::string_view name) const {
  return std::any_of(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
}

std::vector<SnrPoint> snr_grid(double start_db, double stop_db, double step_db) {
  if (!(step_db > 0.0) || stop_db < start_db) throw DomainError("invalid SNR grid");
  std::vector<SnrPoint> grid;
  const auto n = static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) grid.push_back({start_db + static_cast<double>(i) * step_db});
  return grid;
}

SweepResult run_sweep(const ProtocolSpec& spec, const RateSpec& rate, std::span<const SnrPoint> grid,
                      const McOptions& opts) {
  spec.validate();
  if (grid.empty()) throw ContractError("empty SNR grid");
  if (!(rate.multiplexing_gain >= 0.0) || !(rate.array_gain > 0.0))
    throw DomainError("rate needs r >= 0 and g > 0");
  const SchemeModel model = model_for(spec);

  std::vector<GridPoint> points;
  SweepResult out;
  out.spec = spec;
  out.rate = rate;
  out.seed = opts.seed;
  out.trials = opts.trials;
  for (const auto& s : grid) {
    out.eta_db.push_back(s.eta_db);
    points.push_back({s.linear(), rate_at(rate, s)});
  }
  const Tally t = run_model(spec.topology, model, points, opts);
  const std::size_t np = points.size();

  auto add_counted = [&](const std::string& name) {
    Series s{name, {}};
    const bool undefined = std::find(model.undefined.begin(), model.undefined.end(), name) != model.undefined.end();
    for (std::size_t p = 0; p < np; ++p) {
      SeriesPoint sp = to_point(out.eta_db[p], t.at(p, name));
      if (undefined) sp = {out.eta_db[p], false, 0.0, 0.0, 0.0};
      s.points.push_back(sp);
    }
    out.series.push_back(std::move(s));
  };
  auto add_derived = [&](const std::string& name, auto&& fn) {
    Series s{name, {}};
    for (std::size_t p = 0; p < np; ++p) s.points.push_back(to_point(out.eta_db[p], fn(p)));
    out.series.push_back(std::move(s));
  };
  auto comp = [&](std::size_t p, std::string_view name) { return component(t.at(p, name)); };

  for (const auto& name : model.events.names)
    if (name != "nesting_violation") add_counted(name);

  const std::size_t nr = spec.topology.relay_count();
  switch (spec.scheme) {
    case Scheme::Direct: out.primary = "direct"; break;
    case Scheme::FixedAdaptive:
    case Scheme::FixedBound:
      out.primary = spec.scheme == Scheme::FixedAdaptive ? "adaptive" : "bound";
      add_derived("bound", [&](std::size_t p) { return mix(comp(p, "pc"), comp(p, "composite"), comp(p, "direct")); });
      add_derived("plugin", [&](std::size_t p) { return mix(comp(p, "sr_fail"), comp(p, "direct"), comp(p, "composite")); });
      break;
    case Scheme::Multicast:
      out.primary = "multicast";
      add_derived("plugin", [&](std::size_t p) { return mix(comp(p, "any_sr_fail"), kOne, comp(p, "composite_all")); });
      break;
    case Scheme::RelaySelection:
      out.primary = "selection";
      add_derived("bound", [&](std::size_t p) { return mix(comp(p, "pc_ors"), comp(p, "composite"), kOne); });
      add_derived("plugin", [&](std::size_t p) { return mix(comp(p, "all_sr_fail"), kOne, comp(p, "composite")); });
      break;
    case Scheme::MultiAdaptive: {
      out.primary = "multi_adaptive";
      if (nr <= kMaxEnumeratedRelays) {
        std::vector<std::vector<DerivedEstimate>> pcs(np);
        for (std::size_t p = 0; p < np; ++p) {
          std::vector<OutageEstimate> empty;
          for (std::size_t i = 1; i <= nr; ++i) empty.push_back(t.at(p, "pci_empty_" + std::to_string(i)));
          pcs[p] = pc_from_empty(empty);
        }
        for (std::size_t i = 0; i < nr; ++i)
          add_derived("pc_" + std::to_string(i + 1), [&](std::size_t p) { return pcs[p][i]; });
      }
      std::vector<std::vector<double>> binom(np);
      for (std::size_t p = 0; p < np; ++p) {
        double fail = 0.0;
        for (std::size_t i = 1; i <= nr; ++i) fail += t.at(p, "relay_fail_" + std::to_string(i)).p_hat;
        binom[p] = binomial_weights(nr, fail / static_cast<double>(nr));
      }
      for (std::size_t i = 0; i <= nr; ++i)
        add_derived("binomial_" + std::to_string(i), [&](std::size_t p) {
          return DerivedEstimate{binom[p][i], binom[p][i], binom[p][i]};
        });
      add_derived("plugin", [&](std::size_t p) {
        double v = 0.0;
        for (std::size_t i = 0; i <= nr; ++i) v += binom[p][i] * t.at(p, "composite_" + std::to_string(i)).p_hat;
        return DerivedEstimate{v, v, v};
      });
      break;
    }
    case Scheme::CyclicAdaptive:
      out.primary = "cyclic";
      add_derived("bound", [&](std::size_t p) { return mix(comp(p, "pc_cyclic"), comp(p, "cyclic_perfect"), comp(p, "direct")); });
      break;
    case Scheme::StcAdaptive:
      out.primary = "stc";
      add_derived("bound", [&](std::size_t p) { return mix(comp(p, "pc_stc"), comp(p, "stc_perfect"), comp(p, "direct_hd")); });
      break;
  }
  return out;
}

DiversityPoint finite_snr_point(std::span<const double> eta_db, std::span<const double> p,
                                std::size_t index) {
  const std::size_t n = eta_db.size();
  if (n != p.size()) throw ContractError("finite_snr_diversity: size mismatch");
  if (n < 3) throw ContractError("finite_snr_diversity needs at least 3 SNR points");
  const std::size_t lo = index == 0 ? 0 : index - 1;
  const std::size_t hi = index + 1 == n ? index : index + 1;
  DiversityPoint out{eta_db[index], std::nullopt};
  if (!(p[lo] > 0.0) || !(p[hi] > 0.0)) return out;
  // ln(eta) = eta_db * ln(10) / 10.
  const double dx = (eta_db[hi] - eta_db[lo]) * std::log(10.0) / 10.0;
  out.d = -(std::log(p[hi]) - std::log(p[lo])) / dx;
  return out;
}

std::vector<DiversityPoint> finite_snr_diversity(std::span<const double> eta_db,
                                                 std::span<const double> p) {
  std::vector<DiversityPoint> out;
  for (std::size_t i = 0; i < eta_db.size(); ++i) out.push_back(finite_snr_point(eta_db, p, i));
  return out;
}

std::vector<DiversityPoint> finite_snr_diversity(const SweepResult& sweep, std::string_view series) {
  const Series& s = sweep.find(series);
  std::vector<double> p;
  for (const auto& pt : s.points) p.push_back(pt.defined ? pt.value : 0.0);
  return finite_snr_diversity(sweep.eta_db, p);
}

std::vector<DiversityPoint> estimate_adaptive_diversity(const SweepResult& sweep) {
  const auto d_c = finite_snr_diversity(sweep, "pc");
  const auto d_big = finite_snr_diversity(sweep, "composite");
  const auto d_small = finite_snr_diversity(sweep, "direct");
  const Series& pc = sweep.find("pc");
  const Series& big = sweep.find("composite");
  const Series& small = sweep.find("direct");
  std::vector<DiversityPoint> out;
  for (std::size_t i = 0; i < sweep.eta_db.size(); ++i) {
    DiversityPoint dp{sweep.eta_db[i], std::nullopt};
    if (d_c[i].d && d_big[i].d && d_small[i].d) {
      dp.d = finite_snr_combiner(pc.points[i].value, big.points[i].value, small.points[i].value,
                                 *d_big[i].d, *d_small[i].d, *d_c[i].d);
    } else if (d_c[i].d && small.points[i].value > 0.0 && pc.points[i].value == 0.0 && d_small[i].d) {
      dp.d = d_small[i].d;
    }
    out.push_back(dp);
  }
  return out;
}

}  // namespace coopmux
