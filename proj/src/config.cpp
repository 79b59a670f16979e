// SPDX-License-Identifier: Apache-2.0
#include "coopmux/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>

#include "coopmux/csv.hpp"
#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

constexpr std::array kKeys = {"scheme",       "K",           "N",           "relays",  "M",
                              "M_t",          "M_r",         "phi_db",      "distance", "gamma",
                              "cyclic_I",     "r",           "g",           "eta_start_db",
                              "eta_stop_db",  "eta_step_db", "trials",      "seed",    "output"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
    throw ConfigError(where + "key '" + key + "': " + what);
  }

  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    std::string_view v = entries_.at(key).value;
    while (true) {
      const auto comma = v.find(',');
      out.emplace_back(trim(v.substr(0, comma)));
      if (out.back().empty()) fail(key, "empty list element");
      if (comma == std::string_view::npos) return out;
      v.remove_prefix(comma + 1);
    }
  }

  double to_double(const std::string& key, const std::string& s) const {
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x)) fail(key, "not a number: '" + s + "'");
    return x;
  }

  std::uint64_t to_unsigned(const std::string& key, const std::string& s) const {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      fail(key, "not a non-negative integer: '" + s + "'");
    errno = 0;
    const auto x = std::strtoull(s.c_str(), nullptr, 10);
    if (errno == ERANGE) fail(key, "integer out of range");
    return x;
  }

  std::string scalar(const std::string& key) const {
    const auto l = list(key);
    if (l.size() != 1) fail(key, "expects a single value");
    return l[0];
  }
  double number(const std::string& key) const { return to_double(key, scalar(key)); }
  std::uint64_t count(const std::string& key) const { return to_unsigned(key, scalar(key)); }

  // One value per relay; a single value applies to every relay.
  template <class F>
  auto per_relay(const std::string& key, std::size_t relays, F convert) const {
    const auto l = list(key);
    if (l.size() != 1 && l.size() != relays)
      fail(key, "expects 1 or " + std::to_string(relays) + " values, got " + std::to_string(l.size()));
    std::vector<decltype(convert(key, l[0]))> out;
    for (std::size_t i = 0; i < relays; ++i) out.push_back(convert(key, l[l.size() == 1 ? 0 : i]));
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace

ProtocolSpec ExperimentConfig::protocol() const { return {scheme, topology, cyclic_cycle}; }

RateSpec ExperimentConfig::rate() const {
  RateSpec rs = RateSpec::with_default_gain(r, topology);
  if (g) rs.array_gain = *g;
  return rs;
}

std::vector<SnrPoint> ExperimentConfig::grid() const {
  return snr_grid(eta_start_db, eta_stop_db, eta_step_db);
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw ConfigError(where + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "key '" + key + "' has no value");
    if (!entries.emplace(key, Entry{value, line_no}).second)
      throw ConfigError(where + "duplicate key '" + key + "'");
  }

  const Reader in(std::move(entries));
  for (const char* required : {"scheme", "K", "N"})
    if (!in.has(required)) throw ConfigError(std::string("missing required key '") + required + "'");

  ExperimentConfig cfg;
  const auto scheme = parse_scheme(in.scalar("scheme"));
  if (!scheme) in.fail("scheme", "unknown scheme '" + in.scalar("scheme") + "'");
  cfg.scheme = *scheme;
  cfg.topology.source_antennas = in.count("K");
  cfg.topology.dest_antennas = in.count("N");

  const std::size_t relays = in.has("relays") ? in.count("relays") : (cfg.scheme == Scheme::Direct ? 0 : 1);
  const auto as_size = [&](const std::string& k, const std::string& s) {
    return static_cast<std::size_t>(in.to_unsigned(k, s));
  };
  const auto as_double = [&](const std::string& k, const std::string& s) { return in.to_double(k, s); };
  const bool has_phi = in.has("phi_db"), has_dist = in.has("distance");
  if (relays == 0) {
    for (const char* k : {"M", "M_t", "M_r", "phi_db", "distance", "gamma"})
      if (in.has(k)) in.fail(k, "given but relays = 0");
  } else {
    for (const char* k : {"M", "M_t"})
      if (!in.has(k)) throw ConfigError(std::string("missing required key '") + k + "'");
    if (has_phi == has_dist) throw ConfigError("give exactly one of 'phi_db' or 'distance'");
    if (has_dist && !in.has("gamma")) throw ConfigError("'distance' needs 'gamma'");
    if (!has_dist && in.has("gamma")) in.fail("gamma", "only valid with 'distance'");
    const auto m = in.per_relay("M", relays, as_size);
    const auto mt = in.per_relay("M_t", relays, as_size);
    std::vector<std::size_t> mr = in.has("M_r") ? in.per_relay("M_r", relays, as_size) : m;
    std::vector<double> phi;
    if (has_phi) {
      phi = in.per_relay("phi_db", relays, as_double);
    } else {
      const double gamma = in.number("gamma");
      cfg.topology.path_loss_exponent = gamma;
      for (double d : in.per_relay("distance", relays, as_double)) {
        try {
          phi.push_back(linear_to_db(path_gain_from_distance(d, gamma)));
        } catch (const DomainError& e) {
          in.fail("distance", e.what());
        }
      }
    }
    for (std::size_t i = 0; i < relays; ++i) cfg.topology.relays.push_back({m[i], mt[i], mr[i], phi[i]});
  }

  if (in.has("cyclic_I")) cfg.cyclic_cycle = in.count("cyclic_I");
  if (in.has("r")) cfg.r = in.number("r");
  if (in.has("g")) cfg.g = in.number("g");
  if (in.has("eta_start_db")) cfg.eta_start_db = in.number("eta_start_db");
  if (in.has("eta_stop_db")) cfg.eta_stop_db = in.number("eta_stop_db");
  if (in.has("eta_step_db")) cfg.eta_step_db = in.number("eta_step_db");
  if (in.has("trials")) cfg.trials = in.count("trials");
  if (in.has("seed")) cfg.seed = in.count("seed");
  if (in.has("output")) cfg.output = in.scalar("output");

  if (cfg.r < 0.0) in.fail("r", "must be >= 0");
  if (cfg.g && !(*cfg.g > 0.0)) in.fail("g", "must be > 0");
  if (cfg.trials == 0) in.fail("trials", "must be positive");
  if (!(cfg.eta_step_db > 0.0) || cfg.eta_stop_db < cfg.eta_start_db)
    throw ConfigError("SNR grid needs eta_step_db > 0 and eta_stop_db >= eta_start_db");
  try {
    cfg.protocol().validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

}  // namespace coopmux
