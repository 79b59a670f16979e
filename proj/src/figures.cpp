// SPDX-License-Identifier: Apache-2.0
#include "coopmux/figures.hpp"

#include <string>

#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

NetworkTopology topology(std::size_t k, std::size_t m, std::size_t n, std::size_t m_t, double phi_db,
                         std::size_t relays = 1) {
  NetworkTopology t;
  t.source_antennas = k;
  t.dest_antennas = n;
  for (std::size_t i = 0; i < relays; ++i) t.relays.push_back(RelaySpec::make(m, m_t, phi_db));
  return t;
}

std::string phi_tag(double phi_db) { return "_phi" + format_number(phi_db); }

class FigureBuilder {
 public:
  FigureBuilder(int id, const FigureOptions& opts)
      : opts_(opts), grid_(snr_grid(opts.eta_start_db, opts.eta_stop_db, opts.eta_step_db)) {
    doc_.add_meta("version", COOPMUX_VERSION);
    doc_.add_meta("figure", std::to_string(id));
    doc_.add_meta("seed", std::to_string(opts.seed));
    doc_.add_meta("trials", std::to_string(opts.trials));
  }

  SweepResult run(Scheme scheme, const NetworkTopology& topo, double r) {
    const ProtocolSpec spec{scheme, topo, std::nullopt};
    const SweepResult res = run_sweep(spec, RateSpec::with_default_gain(r, topo), grid_,
                                      {opts_.trials, opts_.seed, opts_.workers});
    add_sweep_meta(doc_, res, "run" + std::to_string(++runs_) + "_");
    return res;
  }

  void take(const SweepResult& res, const std::string& name, const std::string& as) {
    const std::size_t before = doc_.rows.size();
    append_sweep(doc_, res, {}, {name});
    for (std::size_t i = before; i < doc_.rows.size(); ++i) doc_.rows[i].series = as;
  }

  std::vector<double> phis(std::vector<double> defaults) const { return opts_.phi_db.value_or(defaults); }
  double phi(double fallback) const {
    return opts_.phi_db && !opts_.phi_db->empty() ? opts_.phi_db->front() : fallback;
  }
  double r(double fallback) const { return opts_.r.value_or(fallback); }

  CsvDocument done() { return std::move(doc_); }

 private:
  FigureOptions opts_;
  std::vector<SnrPoint> grid_;
  CsvDocument doc_;
  int runs_ = 0;
};

// P_c and P_nu need no rate; r only enters the unused outage columns.
void pc_family(FigureBuilder& b, std::size_t m, std::size_t m_t) {
  for (double phi : b.phis({10.0, 20.0, 30.0})) {
    const auto res = b.run(Scheme::FixedAdaptive, topology(2, m, 4, m_t, phi), b.r(2.0));
    b.take(res, "pc", "pc" + phi_tag(phi));
    b.take(res, "pnu", "pnu" + phi_tag(phi));
  }
}

}  // namespace

CsvDocument make_figure(int id, const FigureOptions& opts) {
  if (id < kFirstFigure || id > kLastFigure)
    throw ContractError("figure id must be in [2, 8], got " + std::to_string(id));
  FigureBuilder b(id, opts);
  switch (id) {
    case 2: pc_family(b, 2, 2); break;
    case 3: pc_family(b, 3, 1); break;
    case 4: {
      bool first = true;
      for (double phi : b.phis({20.0, 30.0})) {
        const auto res = b.run(Scheme::FixedAdaptive, topology(2, 2, 4, 2, phi), b.r(2.0));
        if (first) {
          b.take(res, "direct", "direct");
          b.take(res, "composite", "mimo_4x4");
          first = false;
        }
        b.take(res, "adaptive", "adaptive" + phi_tag(phi));
        b.take(res, "bound", "bound" + phi_tag(phi));
      }
      break;
    }
    case 5: {
      const double phi = b.phi(20.0);
      b.take(b.run(Scheme::RelaySelection, topology(2, 2, 4, 2, phi, 2), b.r(2.0)), "pc_ors", "pc_ors_2relay");
      b.take(b.run(Scheme::FixedAdaptive, topology(2, 2, 4, 2, phi), b.r(2.0)), "pc", "pc_1relay");
      break;
    }
    case 6: {
      const double phi = b.phi(20.0);
      b.take(b.run(Scheme::RelaySelection, topology(2, 2, 4, 2, phi), b.r(2.0)), "selection", "selection_1relay");
      b.take(b.run(Scheme::RelaySelection, topology(2, 2, 4, 2, phi, 2), b.r(2.0)), "selection", "selection_2relay");
      break;
    }
    case 7: {
      const auto res = b.run(Scheme::MultiAdaptive, topology(2, 3, 4, 1, b.phi(20.0), 2), b.r(2.3));
      b.take(res, "pc_1", "pc_1");
      b.take(res, "pc_2", "pc_2");
      break;
    }
    case 8: {
      const double phi = b.phi(20.0);
      b.take(b.run(Scheme::MultiAdaptive, topology(2, 3, 4, 1, phi, 2), b.r(2.3)), "multi_adaptive",
             "multi_adaptive_2relay");
      b.take(b.run(Scheme::FixedAdaptive, topology(2, 3, 4, 1, phi), b.r(2.3)), "adaptive", "adaptive_1relay");
      break;
    }
  }
  return b.done();
}

}  // namespace coopmux
