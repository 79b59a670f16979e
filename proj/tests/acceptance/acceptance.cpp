// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion. Criteria that the model
// cannot meet are marked `known`; they still print FAIL. Exit status is the
// number of failures that are not known.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coopmux/cli.hpp"
#include "coopmux/csv.hpp"
#include "coopmux/dmt.hpp"
#include "coopmux/matrix.hpp"
#include "coopmux/montecarlo.hpp"

using namespace coopmux;

namespace {

// Pinned tolerances.
constexpr double kSigmas = 3.0;
constexpr double kDetSlack = 1e-9;
constexpr double kSlopeExactTol = 1e-9;
constexpr double kSlopeMcTol = 0.1;
constexpr double kPcHigh = 0.99;
constexpr double kFig5ShiftDb = 6.0;
constexpr double kFig5ShiftTolDb = 2.0;
constexpr double kMulticastFloor = 0.95;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
  const char* known = nullptr;  // why the criterion fails under the model
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

NetworkTopology topo(std::size_t k, std::size_t m, std::size_t n, std::size_t m_t, double phi_db,
                     std::size_t relays = 1) {
  NetworkTopology t{k, n, {}, std::nullopt};
  for (std::size_t i = 0; i < relays; ++i) t.relays.push_back(RelaySpec::make(m, m_t, phi_db));
  return t;
}

double combined(double h1, double h2) { return kSigmas * std::sqrt(h1 * h1 + h2 * h2); }

ComplexMatrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Complex(nd(gen), nd(gen));
  return out;
}

// ---- criteria ------------------------------------------------------------------

Outcome determinant_inequality() {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::size_t> rows(1, 6), cols(1, 4);
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = rows(gen);
    const ComplexMatrix u = gaussian(n, cols(gen), gen);
    const ComplexMatrix v = gaussian(n, cols(gen), gen);
    const ComplexMatrix both[] = {u, v};
    // Natural-log determinants; relative slack on det is additive on log det.
    const double lhs = (logdet_capacity(u, 1.0) + logdet_capacity(v, 1.0)) * std::log(2.0);
    const double rhs = logdet_capacity(hconcat(both), 1.0) * std::log(2.0);
    const double gap = rhs - lhs;
    worst = std::max(worst, gap);
    if (gap > -std::log1p(-kDetSlack)) ++violations;
  }
  return {violations == 0, "10000 instances, violations=" + std::to_string(violations) +
                               ", max ln(rhs/lhs)=" + fmt("%.3g", worst)};
}

Outcome dmt_goldens() {
  using V = std::vector<DmtVertex>;
  bool ok = mimo_dmt(2, 2).vertices() == V{{0, 4}, {1, 1}, {2, 0}};
  const DmtCurve stc = stc_dmt(2, 2, 4);
  for (const DmtVertex& v : V{{0, 16}, {0.5, 11}, {1, 6}, {2, 0}})
    ok = ok && std::find(stc.vertices().begin(), stc.vertices().end(), v) != stc.vertices().end();
  int checked = 0, bad = 0;
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t n = 1; n <= 8; ++n) {
      const DmtCurve c = stc_dmt(k, k, n);
      for (std::size_t j = 0; j <= std::min(k, n); ++j) {
        ++checked;
        if (c.at(static_cast<double>(j)) != static_cast<double>(2 * (k - j) * (n - j))) ++bad;
      }
      if (c.max_multiplexing() != static_cast<double>(std::min(k, n))) ++bad;
    }
  return {ok && bad == 0, "goldens " + std::string(ok ? "exact" : "MISMATCH") + ", closed form " +
                              std::to_string(checked - bad) + "/" + std::to_string(checked) + " points"};
}

Outcome effectiveness_goldens() {
  const auto a = effectiveness_fixed(2, 2, 4, 2);
  const auto b = effectiveness_fixed(2, 3, 4, 1);
  bool ok = a.omega && *a.omega == Rational{1, 1} && b.omega && *b.omega == Rational{2, 1};
  int cases = 0, bad = 0;
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t m = 1; m <= 4; ++m)
      for (std::size_t mt = 1; mt <= m; ++mt) {
        const auto rep = effectiveness_fixed(k, m, k + mt, mt);
        const int threshold = 2 * static_cast<int>(std::min(k, m)) - static_cast<int>(k);
        const bool omega_ge_1 = rep.omega && rep.omega->value() >= 1.0;
        ++cases;
        if (rep.transmit_threshold != threshold || omega_ge_1 != (static_cast<int>(mt) <= threshold)) ++bad;
      }
  return {ok && bad == 0, std::string("omega goldens ") + (ok ? "exact" : "MISMATCH") + ", threshold grid " +
                              std::to_string(cases - bad) + "/" + std::to_string(cases)};
}

Outcome siso_oracle() {
  Outcome o;
  double worst = 0.0;
  for (double eta_db : {0.0, 10.0, 20.0})
    for (double rate : {0.5, 1.0, 2.0}) {
      const double eta = db_to_linear(eta_db);
      const auto e = estimate_mimo_outage(1, 1, eta, rate, {100000, 1, 0});
      const double truth = 1.0 - std::exp(-(std::exp2(rate) - 1.0) / eta);
      const double z = std::abs(e.p_hat - truth) / e.half_width();
      worst = std::max(worst, z);
      if (z > kSigmas) o.pass = false;
    }
  o.detail = "9 points, worst |p - p_exact| = " + fmt("%.2f", worst) + " half-widths";
  return o;
}

Outcome adaptive_ordering() {
  Outcome o;
  const auto grid = snr_grid(-10, 40, 2);
  int bound_bad = 0, coincide_points = 0, coincide_bad = 0;
  double worst_excess = -1.0;
  for (double phi : {20.0, 30.0}) {
    const ProtocolSpec spec{Scheme::FixedAdaptive, topo(2, 2, 4, 2, phi), std::nullopt};
    const auto res = run_sweep(spec, RateSpec::with_default_gain(2.0, spec.topology), grid, {100000, 1, 0});
    const auto& adp = res.find("adaptive").points;
    const auto& bnd = res.find("bound").points;
    const auto& pc = res.find("pc").points;
    const auto& comp = res.find("composite").points;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const double tol = combined(adp[p].half_width(), bnd[p].half_width());
      worst_excess = std::max(worst_excess, (adp[p].value - bnd[p].value) / tol);
      if (adp[p].value > bnd[p].value + tol) {
        ++bound_bad;
        o.detail += " [phi=" + fmt("%g", phi) + " eta=" + fmt("%g", grid[p].eta_db) + "dB adp=" +
                    fmt("%.4g", adp[p].value) + " bound=" + fmt("%.4g", bnd[p].value) + "]";
      }
      if (pc[p].value >= kPcHigh) {
        ++coincide_points;
        if (std::abs(adp[p].value - comp[p].value) > combined(adp[p].half_width(), comp[p].half_width()))
          ++coincide_bad;
      }
    }
  }
  o.pass = bound_bad == 0 && coincide_bad == 0 && coincide_points > 0;
  o.detail = "bound violations=" + std::to_string(bound_bad) + "/52 (max excess " + fmt("%.2f", worst_excess) +
             " x tol), P_c>=0.99 coincidence " + std::to_string(coincide_points - coincide_bad) + "/" +
             std::to_string(coincide_points) + o.detail;
  return o;
}

Outcome fig3_claim() {
  const auto grid = snr_grid(-10, 20, 2);
  const NetworkTopology t = topo(2, 3, 4, 1, 20.0);
  double lowest = 1.0;
  for (const auto& s : grid) lowest = std::min(lowest, estimate_pc_fixed(t, s.linear(), {100000, 1, 0}).p_hat);
  return {lowest >= kPcHigh, "min P_c over eta<=20dB = " + fmt("%.5f", lowest)};
}

// Largest grid SNR before the series first drops below the threshold.
std::optional<double> last_high(const Series& s, double threshold) {
  std::optional<double> out;
  for (const auto& p : s.points) {
    if (p.value < threshold) break;
    out = p.eta_db;
  }
  return out;
}

Outcome fig5_claim() {
  const auto grid = snr_grid(-10, 40, 1);
  const McOptions opts{100000, 1, 0};
  const ProtocolSpec two{Scheme::RelaySelection, topo(2, 2, 4, 2, 20.0, 2), std::nullopt};
  const ProtocolSpec one{Scheme::FixedAdaptive, topo(2, 2, 4, 2, 20.0), std::nullopt};
  const auto ors = last_high(run_sweep(two, {2.0, 8.0}, grid, opts).find("pc_ors"), kPcHigh);
  const auto pc = last_high(run_sweep(one, {2.0, 8.0}, grid, opts).find("pc"), kPcHigh);
  if (!ors || !pc) return {false, "P_c or P_c^ors below 0.99 at the first grid point"};
  const double shift = *ors - *pc;
  return {std::abs(shift - kFig5ShiftDb) <= kFig5ShiftTolDb,
          "P_c^ors>=0.99 up to " + fmt("%g", *ors) + " dB, P_c up to " + fmt("%g", *pc) + " dB, shift " +
              fmt("%g", shift) + " dB"};
}

Outcome limits() {
  // Multicast: single-antenna relays at eta = 0 dB (relay-link SNR = phi = 10 dB).
  std::string trend;
  double prev = -1.0;
  bool monotone = true;
  OutageEstimate mc16;
  for (std::size_t relays : {1, 2, 4, 8, 16}) {
    const auto e = simulate_multicast(topo(1, 1, 1, 1, 10.0, relays), 1.0, 4.0, {100000, 1, 0});
    monotone = monotone && e.p_hat + kSigmas * e.half_width() >= prev;
    prev = e.p_hat;
    trend += (trend.empty() ? "" : ",") + fmt("%.4f", e.p_hat);
    mc16 = e;
  }
  // Selection with 32 relays against the single-relay composite channel.
  const NetworkTopology t = topo(2, 2, 4, 2, 20.0, 32);
  const ProtocolSpec spec{Scheme::RelaySelection, t, std::nullopt};
  const SnrPoint eta{10.0};
  const auto res = run_sweep(spec, RateSpec::with_default_gain(2.0, t), std::span(&eta, 1), {100000, 1, 0});
  const auto sel = res.find("selection").points[0];
  const auto comp = res.find("composite").points[0];
  const bool sel_ok = std::abs(sel.value - comp.value) <= combined(sel.half_width(), comp.half_width());
  return {mc16.p_hat >= kMulticastFloor && monotone && sel_ok,
          "multicast R=1..16: " + trend + "; selection(32)=" + fmt("%.5f", sel.value) + " vs P_4x4=" +
              fmt("%.5f", comp.value)};
}

Outcome decoding_set_checks() {
  Outcome o;
  const NetworkTopology t = topo(2, 3, 4, 1, 20.0, 2);
  const ProtocolSpec spec{Scheme::MultiAdaptive, t, std::nullopt};
  const auto grid = snr_grid(-10, 40, 2);
  const McOptions opts{100000, 1, 0};
  // Nesting is checked per realization at every grid SNR.
  std::uint64_t nest = 0;
  for (const auto& s : grid) nest += estimate_pci(t, s.linear(), opts).nesting_violations;
  const auto res = run_sweep(spec, RateSpec::with_default_gain(2.3, t), grid, opts);
  int bad = 0;
  for (std::size_t i = 1; i <= 2; ++i) {
    const auto& pi = res.find("decoded_" + std::to_string(i)).points;
    const auto& pci = res.find("pc_" + std::to_string(i)).points;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      if (pi[p].value > pci[p].value + combined(pi[p].half_width(), pci[p].half_width())) {
        ++bad;
        o.detail += " [i=" + std::to_string(i) + " eta=" + fmt("%g", grid[p].eta_db) + "dB P_i=" +
                    fmt("%.4f", pi[p].value) + " P_ci=" + fmt("%.4f", pci[p].value) + "]";
      }
    }
  }
  o.pass = nest == 0 && bad == 0;
  o.detail = "nesting violations=" + std::to_string(nest) + " over " + std::to_string(grid.size()) +
             "x1e5 trials, P_i>P_ci+3sigma at " + std::to_string(bad) + "/52 points (r=2.3)" + o.detail;
  return o;
}

Outcome multi_vs_selection() {
  const NetworkTopology t = topo(2, 2, 4, 2, 20.0, 2);
  const auto grid = snr_grid(-10, 40, 2);
  const auto res = run_sweep({Scheme::MultiAdaptive, t, std::nullopt}, RateSpec::with_default_gain(2.0, t), grid,
                             {100000, 1, 0});
  const auto& multi = res.find("multi_adaptive").points;
  const auto& sel = res.find("selection").points;
  int bad = 0;
  for (std::size_t p = 0; p < grid.size(); ++p)
    if (multi[p].value > sel[p].value + combined(multi[p].half_width(), sel[p].half_width())) ++bad;
  return {bad == 0, "multi-adaptive above selection + 3sigma at " + std::to_string(bad) + "/26 points"};
}

Outcome diversity_estimator() {
  std::vector<double> eta_db, p;
  for (int i = 0; i <= 25; ++i) {
    eta_db.push_back(-10.0 + 2.0 * i);
    p.push_back(std::pow(db_to_linear(eta_db.back()), -2.0));
  }
  double synth = 0.0;
  for (const auto& d : finite_snr_diversity(eta_db, p)) synth = std::max(synth, std::abs(d.d.value_or(1e9) - 2.0));

  const NetworkTopology t{1, 1, {}, std::nullopt};
  const auto grid = snr_grid(-10, 40, 2);
  const double r = 0.5;
  const auto res = run_sweep({Scheme::Direct, t, std::nullopt}, {r, 1.0}, grid, {1000000, 1, 0});
  double worst = 0.0;
  for (const auto& d : finite_snr_diversity(res, "direct")) {
    const double eta = db_to_linear(d.eta_db);
    // p = 1 - exp(-f), f = ((1 + eta)^r - 1)/eta; d = -eta p'/p.
    const double f = (std::pow(1.0 + eta, r) - 1.0) / eta;
    const double fp = (r * std::pow(1.0 + eta, r - 1.0) * eta - (std::pow(1.0 + eta, r) - 1.0)) / (eta * eta);
    const double exact = -eta * fp * std::exp(-f) / (1.0 - std::exp(-f));
    worst = std::max(worst, d.d ? std::abs(*d.d - exact) : 1e9);
  }
  return {synth < kSlopeExactTol && worst < kSlopeMcTol,
          "power law max error " + fmt("%.2g", synth) + ", SISO r=0.5 max slope error " + fmt("%.4f", worst)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "coopmux_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"direct", "scheme = direct\nK = 2\nN = 2\n"},
      {"fixed_adaptive", "scheme = fixed_adaptive\nK = 2\nN = 4\nM = 2\nM_t = 2\nphi_db = 20\n"},
      {"fixed_bound", "scheme = fixed_bound\nK = 2\nN = 4\nM = 3\nM_t = 1\nphi_db = 20\n"},
      {"multicast", "scheme = multicast\nK = 2\nN = 4\nrelays = 3\nM = 2\nM_t = 2\nphi_db = 10\n"},
      {"relay_selection", "scheme = relay_selection\nK = 2\nN = 4\nrelays = 2\nM = 2\nM_t = 2\nphi_db = 20\n"},
      {"multi_adaptive", "scheme = multi_adaptive\nK = 2\nN = 4\nrelays = 2\nM = 3\nM_t = 1\nphi_db = 20, 15\n"},
      {"cyclic_adaptive", "scheme = cyclic_adaptive\nK = 2\nN = 4\nM = 4\nM_t = 2\ncyclic_I = 2\nphi_db = 20\n"},
      {"stc_adaptive", "scheme = stc_adaptive\nK = 2\nN = 4\nM = 2\nM_t = 2\nphi_db = 20\n"},
  };
  int identical = 0;
  std::string failures;
  for (const auto& [name, body] : configs) {
    const fs::path cfg = dir / (name + ".cfg");
    write_file_atomic(cfg, body + "r = 1.5\neta_step_db = 5\ntrials = 4000\nseed = 11\n");
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "2", "4", "1"}) {
      const fs::path out = dir / (name + "_" + workers + "_" + std::to_string(outputs.size()) + ".csv");
      std::ostringstream so, se;
      const int code = run_cli({"sweep", cfg.string(), "--workers", workers, "--out", out.string()}, so, se);
      outputs.push_back(code == 0 ? read_file(out) : "exit " + std::to_string(code) + ": " + se.str());
    }
    const bool same = std::all_of(outputs.begin(), outputs.end(), [&](const std::string& s) {
      return s == outputs.front() && s.rfind("exit", 0) != 0;
    });
    identical += same ? 1 : 0;
    if (!same) failures += " " + name;
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) +
              " schemes byte-identical across reruns and --workers 1/2/4" + failures};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"determinant inequality", 10, determinant_inequality},
      {"analytic DMT goldens", 1, dmt_goldens},
      {"effectiveness goldens", 1, effectiveness_goldens},
      {"SISO outage oracle", 30, siso_oracle},
      {"adaptive outage below bound", 300, adaptive_ordering},
      {"(2,3,4,1) P_c near one below 20 dB", 120, fig3_claim,
       "P_c is 0.984 at exactly 20 dB with a CI of +-0.001; >= 0.99 holds through 18 dB"},
      {"relay-selection P_c shift", 300, fig5_claim},
      {"multi-relay limits", 300, limits},
      {"decoding-set nesting and P_i bound", 600, decoding_set_checks,
       "P_i depends on the rate while P_ci does not; at r = 2.3 both relays decode almost surely while P_c2 "
       "decays with SNR, so P_2 <= P_c2 cannot hold pointwise"},
      {"multi-adaptive not worse than selection", 600, multi_vs_selection},
      {"finite-SNR diversity estimator", 600, diversity_estimator},
      {"determinism across workers", 600, determinism},
  };
  int failed = 0, unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    unexpected += pass || (c.known && in_time) ? 0 : 1;
    std::printf("%s  %s: %s (%.1f s%s)\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs,
                in_time ? "" : ", over budget");
    if (!pass && c.known) std::printf("      known: %s\n", c.known);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed, %d known failures, %d unexpected\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), failed - unexpected, unexpected);
  return unexpected;
}
