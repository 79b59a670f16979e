// SPDX-License-Identifier: Apache-2.0
#include "coopmux/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include "coopmux/config.hpp"
#include "coopmux/csv.hpp"
#include "coopmux/dmt.hpp"
#include "coopmux/errors.hpp"
#include "coopmux/figures.hpp"

namespace coopmux {
namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
  using Error::Error;
};

std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string canonical_name(std::string name) {
  if (name == "M_t") return "Mt";
  if (name == "M_r") return "Mr";
  return name;
}

// Fills `names` in order from bare values, or by name from name=value tokens.
std::map<std::string, std::size_t> counts(const std::vector<std::string>& tokens,
                                          const std::vector<std::string>& names,
                                          const std::vector<std::string>& optional = {}) {
  std::map<std::string, std::size_t> out;
  std::size_t next = 0;
  for (const auto& tok : tokens) {
    std::string name, value;
    if (const auto eq = tok.find('='); eq != std::string::npos) {
      name = canonical_name(tok.substr(0, eq));
      value = tok.substr(eq + 1);
      const bool known = std::find(names.begin(), names.end(), name) != names.end() ||
                         std::find(optional.begin(), optional.end(), name) != optional.end();
      if (!known) throw UsageError("unknown argument '" + name + "'");
    } else {
      while (next < names.size() && out.count(names[next])) ++next;
      if (next == names.size()) throw UsageError("too many arguments");
      name = names[next];
      value = tok;
    }
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw UsageError("'" + name + "' must be a positive integer, got '" + value + "'");
    const auto v = std::strtoull(value.c_str(), nullptr, 10);
    if (v == 0 || v > kMaxDimension) throw UsageError("'" + name + "' must be in [1, " + std::to_string(kMaxDimension) + "]");
    if (!out.emplace(name, static_cast<std::size_t>(v)).second) throw UsageError("'" + name + "' given twice");
  }
  for (const auto& n : names)
    if (!out.count(n)) throw UsageError("missing argument '" + n + "'");
  return out;
}

fs::path default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? fs::path(env) : fs::path(".");
}

int run_figure(int id, const std::string& out_dir, const FigureOptions& opts, std::ostream& out) {
  if (id < kFirstFigure || id > kLastFigure)
    throw UsageError("figure id must be in [2, 8], got " + std::to_string(id));
  const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
  const fs::path path = dir / ("figure" + std::to_string(id) + ".csv");
  write_file_atomic(path, render_csv(make_figure(id, opts)));
  out << path.string() << "\n";
  return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials, int workers,
                  std::ostream& out) {
  ExperimentConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (trials) {
    if (*trials == 0) throw UsageError("--trials must be positive");
    cfg.trials = *trials;
  }
  const SweepResult res = run_sweep(cfg.protocol(), cfg.rate(), cfg.grid(), {cfg.trials, cfg.seed, workers});
  const std::string csv = render_csv(sweep_document(res));
  fs::path target = out_path.empty() ? fs::path(cfg.output) : fs::path(out_path);
  if (target.empty() && std::getenv(kOutDirEnv)) {
    target = default_out_dir() / fs::path(config_path).stem();
    target += ".csv";
  }
  if (target.empty()) {
    out << csv;
  } else {
    write_file_atomic(target, csv);
    out << target.string() << "\n";
  }
  return kExitOk;
}

int run_dmt(const std::string& kind, const std::vector<std::string>& args, const std::string& out_path,
            std::ostream& out) {
  std::optional<DmtCurve> curve;
  if (kind == "mimo") {
    const auto c = counts(args, {"tx", "rx"});
    curve = mimo_dmt(c.at("tx"), c.at("rx"));
  } else if (kind == "stc") {
    const auto c = counts(args, {"K", "Mt", "N"});
    curve = stc_dmt(c.at("K"), c.at("Mt"), c.at("N"));
  } else if (kind == "direct_hd") {
    const auto c = counts(args, {"K", "N"});
    curve = direct_halfduplex_dmt(c.at("K"), c.at("N"));
  } else {
    throw UsageError("dmt kind must be mimo, stc or direct_hd, got '" + kind + "'");
  }
  std::string line;
  for (const auto& v : curve->vertices()) line += (line.empty() ? "(" : " (") + show(v.r) + "," + show(v.d) + ")";
  out << line << "\n";
  if (!out_path.empty()) write_file_atomic(out_path, render_dmt_csv({{kind, *curve}}));
  return kExitOk;
}

int run_effectiveness(const std::string& scheme, const std::vector<std::string>& args, std::ostream& out) {
  EffectivenessReport rep;
  const bool fixed = scheme == "fixed";
  if (fixed || scheme == "stc") {
    const auto c = counts(args, {"K", "M", "N", "Mt"}, {"Mr"});
    const std::size_t m_r = c.count("Mr") ? c.at("Mr") : c.at("M");
    if (c.at("Mt") > c.at("M") || m_r > c.at("M")) throw UsageError("relay needs M_t <= M and M_r <= M");
    rep = fixed ? effectiveness_fixed(c.at("K"), m_r, c.at("N"), c.at("Mt"))
                : effectiveness_stc(c.at("K"), m_r, c.at("N"), c.at("Mt"));
  } else if (scheme == "dblast") {
    const auto c = counts(args, {"M", "N", "Mt"}, {"Mr"});
    const std::size_t m_r = c.count("Mr") ? c.at("Mr") : c.at("M");
    if (c.at("Mt") > c.at("M") || m_r > c.at("M")) throw UsageError("relay needs M_t <= M and M_r <= M");
    rep = effectiveness_dblast(c.at("Mt"), c.at("N"), m_r);
  } else {
    throw UsageError("scheme must be fixed, stc or dblast, got '" + scheme + "'");
  }
  out << "omega=" << (rep.omega ? show(rep.omega->value()) : std::string("inf"))
      << " effective=" << (rep.effective ? "yes" : "no");
  if (fixed) out << " G<=" << show(rep.max_gain) << " Mt_max=" << rep.transmit_threshold;
  else out << " G=" << show(rep.max_gain);
  out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outage and diversity-multiplexing analysis of MIMO relay networks", "coopmux"};
  app.set_version_flag("--version", COOPMUX_VERSION);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed, trials;
  int workers = 0;
  std::string out_path;
  auto common = [&](CLI::App* sub, const char* out_help) {
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--trials", trials, "Monte Carlo trials per SNR point");
    sub->add_option("--workers", workers, "Worker threads (0: OpenMP default, 1: serial)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_path, out_help);
  };

  int figure_id = 0;
  FigureOptions fig;
  std::optional<double> fig_r;
  std::vector<double> fig_phi;
  auto* figure = app.add_subcommand("figure", "Write the CSV for one built-in figure");
  figure->add_option("id", figure_id, "Figure number, 2..8")->required();
  figure->add_option("--r", fig_r, "Multiplexing gain override");
  figure->add_option("--phi-db", fig_phi, "Path gain override(s) in dB")->delimiter(',');
  figure->add_option("--eta-start", fig.eta_start_db, "First SNR point in dB")->capture_default_str();
  figure->add_option("--eta-stop", fig.eta_stop_db, "Last SNR point in dB")->capture_default_str();
  figure->add_option("--eta-step", fig.eta_step_db, "SNR step in dB")->capture_default_str();
  common(figure, "Output directory");

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
  sweep->add_option("config", config_path, "Config file")->required();
  common(sweep, "Output CSV path");

  std::string dmt_kind;
  std::vector<std::string> dmt_args;
  auto* dmt = app.add_subcommand("dmt", "Print an analytic DMT curve");
  dmt->add_option("kind", dmt_kind, "mimo | stc | direct_hd")->required();
  dmt->add_option("counts", dmt_args, "Antenna counts");
  dmt->add_option("--out", out_path, "Optional CSV path");

  std::string eff_scheme;
  std::vector<std::string> eff_args;
  auto* eff = app.add_subcommand("effectiveness", "Print the effectiveness report of a scheme");
  eff->add_option("scheme", eff_scheme, "fixed | stc | dblast")->required();
  eff->add_option("counts", eff_args, "Antenna counts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*figure) {
      fig.seed = seed.value_or(fig.seed);
      fig.trials = trials.value_or(fig.trials);
      if (fig.trials == 0) throw UsageError("--trials must be positive");
      fig.workers = workers;
      fig.r = fig_r;
      if (!fig_phi.empty()) fig.phi_db = fig_phi;
      return run_figure(figure_id, out_path, fig, out);
    }
    if (*sweep) return run_sweep_cmd(config_path, out_path, seed, trials, workers, out);
    if (*dmt) return run_dmt(dmt_kind, dmt_args, out_path, out);
    return run_effectiveness(eff_scheme, eff_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace coopmux
