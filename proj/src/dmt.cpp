// SPDX-License-Identifier: Apache-2.0
#include "coopmux/dmt.hpp"

#include <algorithm>
#include <sstream>

#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

double product_term(long a, long n, long x) { return static_cast<double>((a - x) * (n - x)); }

void check_positive(std::size_t v, const char* what) {
  if (v == 0) throw ContractError(std::string(what) + " must be positive");
}

}  // namespace

DmtCurve::DmtCurve(std::vector<DmtVertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ContractError("DMT curve needs at least one vertex");
  if (vertices_.front().r != 0.0) throw ContractError("DMT curve must start at r = 0");
  if (vertices_.back().d != 0.0) throw ContractError("DMT curve must end at d = 0");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (!(vertices_[i].r > vertices_[i - 1].r)) throw ContractError("DMT r must increase");
    if (vertices_[i].d > vertices_[i - 1].d) throw ContractError("DMT d must not increase");
  }
}

double DmtCurve::at(double r) const {
  if (r <= 0.0) return vertices_.front().d;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (r <= vertices_[i].r) {
      const auto& a = vertices_[i - 1];
      const auto& b = vertices_[i];
      return a.d + (b.d - a.d) * (r - a.r) / (b.r - a.r);
    }
  }
  return 0.0;
}

DmtCurve mimo_dmt(std::size_t tx, std::size_t rx) {
  check_positive(tx, "tx");
  check_positive(rx, "rx");
  std::vector<DmtVertex> v;
  for (std::size_t k = 0; k <= std::min(tx, rx); ++k)
    v.push_back({static_cast<double>(k), static_cast<double>((tx - k) * (rx - k))});
  return DmtCurve(std::move(v));
}

DmtCurve stc_dmt(std::size_t k, std::size_t m_t, std::size_t n) {
  check_positive(k, "K");
  check_positive(m_t, "M_t");
  check_positive(n, "N");
  const long K = static_cast<long>(k), M = static_cast<long>(m_t), N = static_cast<long>(n);
  const long alpha_max = std::min(K, N);
  const long beta_max = std::min(M, N);
  long alpha = 0, beta = 0;
  std::vector<DmtVertex> v{{0.0, product_term(K, N, 0) + product_term(M, N, 0)}};
  for (long i = 1; i <= alpha_max + beta_max; ++i) {
    const double drop_alpha = product_term(K, N, alpha) - product_term(K, N, alpha + 1);
    const double drop_beta = product_term(M, N, beta) - product_term(M, N, beta + 1);
    // A side that has released all of its dimensions cannot be picked again.
    const bool take_alpha = alpha < alpha_max && (beta >= beta_max || drop_alpha >= drop_beta);
    if (take_alpha) {
      ++alpha;
    } else {
      ++beta;
    }
    v.push_back({0.5 * static_cast<double>(i), product_term(K, N, alpha) + product_term(M, N, beta)});
  }
  return DmtCurve(std::move(v));
}

DmtCurve direct_halfduplex_dmt(std::size_t k, std::size_t n) {
  check_positive(k, "K");
  check_positive(n, "N");
  const std::size_t m = std::min(k, n);
  std::vector<DmtVertex> v;
  for (std::size_t j = 0; 2 * j <= m; ++j) {
    v.push_back({static_cast<double>(j), static_cast<double>((k - 2 * j) * (n - 2 * j))});
  }
  const double r_end = 0.5 * static_cast<double>(m);
  if (v.back().r < r_end) v.push_back({r_end, 0.0});
  return DmtCurve(std::move(v));
}

EffectivenessReport effectiveness_fixed(std::size_t k, std::size_t m_r, std::size_t n,
                                        std::size_t m_t) {
  check_positive(k, "K");
  check_positive(m_r, "M");
  check_positive(n, "N");
  check_positive(m_t, "M_t");
  EffectivenessReport rep;
  rep.omega = omega_fixed(k, m_r, n, m_t);
  rep.gain_over_direct = std::min(k + m_t, n) > std::min(k, n);
  rep.effective = rep.gain_over_direct && rep.omega && rep.omega->num >= rep.omega->den;
  const double kd = static_cast<double>(k);
  rep.max_gain = std::min({2.0, 2.0 * static_cast<double>(m_r) / kd, static_cast<double>(n) / kd});
  rep.transmit_threshold = 2 * static_cast<int>(std::min(k, m_r)) - static_cast<int>(k);
  return rep;
}

EffectivenessReport effectiveness_stc(std::size_t k, std::size_t m_r, std::size_t n,
                                      std::size_t m_t) {
  check_positive(k, "K");
  check_positive(m_r, "M");
  check_positive(n, "N");
  check_positive(m_t, "M_t");
  EffectivenessReport rep;
  const auto m_sr = static_cast<std::int64_t>(std::min(k, m_r));
  const auto dof = static_cast<std::int64_t>(std::min(k, n) + std::min(m_t, n));
  if (dof > m_sr) rep.omega = Rational::make(m_sr, dof - m_sr);
  const std::size_t direct = std::min(k, n);
  rep.gain_over_direct = static_cast<std::size_t>(dof) > 2 * direct;
  rep.effective = rep.gain_over_direct && rep.omega && rep.omega->num >= rep.omega->den;
  rep.max_gain = static_cast<double>(dof) / (2.0 * static_cast<double>(direct));
  rep.transmit_threshold = 2 * static_cast<int>(m_sr) - static_cast<int>(k);
  return rep;
}

EffectivenessReport effectiveness_dblast(std::size_t m_t, std::size_t n, std::size_t m_r) {
  check_positive(m_t, "M_t");
  check_positive(n, "N");
  check_positive(m_r, "M");
  EffectivenessReport rep;
  const auto m_srd = static_cast<std::int64_t>(std::min<std::size_t>(1 + m_t, n));
  if (m_srd > 1) rep.omega = Rational::make(1, m_srd - 1);
  rep.gain_over_direct = m_srd > 1;
  rep.effective = rep.gain_over_direct && rep.omega && rep.omega->num >= rep.omega->den;
  rep.max_gain = static_cast<double>(m_srd);
  rep.transmit_threshold = 1;
  return rep;
}

std::optional<double> finite_snr_combiner(double p_c, double p_big, double p_small, double d_big,
                                          double d_small, double d_c) {
  for (double p : {p_c, p_big, p_small})
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("finite_snr_combiner: probability outside [0,1]");
  const double w1 = p_c * p_big;
  const double w2 = (1.0 - p_c) * p_small;
  const double total = w1 + w2;
  if (!(total > 0.0)) return std::nullopt;
  const double eps = p_small / total - 1.0;
  return (w1 * d_big + w2 * d_small) / total - eps * d_c;
}

std::string Codeword::label() const {
  std::ostringstream os;
  os << 'x' << message << '^' << (origin == Origin::Source ? 'S' : 'R');
  if (part > 0) os << '(' << part << ')';
  return os.str();
}

std::string Schedule::render() const {
  std::ostringstream os;
  for (std::size_t row = 0; row < transmitters.size(); ++row) {
    os << transmitters[row];
    for (const auto& cell : slots[row]) os << '\t' << (cell ? cell->label() : std::string("-"));
    os << '\n';
  }
  return os.str();
}

Schedule dblast_schedule(std::size_t messages, std::size_t m_t) {
  check_positive(messages, "L");
  check_positive(m_t, "M_t");
  const std::size_t frame = messages + m_t;
  Schedule s;
  s.transmitters.push_back("S");
  for (std::size_t j = 1; j <= m_t; ++j) s.transmitters.push_back("R(" + std::to_string(j) + ")");
  s.slots.assign(m_t + 1, std::vector<std::optional<Codeword>>(frame));
  for (std::size_t i = 1; i <= messages; ++i) {
    s.slots[0][i - 1] = Codeword{static_cast<int>(i), Codeword::Origin::Source, 0};
    for (std::size_t j = 1; j <= m_t; ++j) {
      s.slots[j][i + j - 1] = Codeword{static_cast<int>(i), Codeword::Origin::Relay, static_cast<int>(j)};
    }
  }
  return s;
}

Schedule cyclic_schedule(std::size_t messages, std::size_t cycle) {
  check_positive(messages, "L");
  check_positive(cycle, "I");
  const std::size_t frame = (messages + 1) * cycle;
  Schedule s;
  s.transmitters.push_back("S");
  for (std::size_t i = 1; i <= cycle; ++i) s.transmitters.push_back("A_" + std::to_string(i));
  s.slots.assign(cycle + 1, std::vector<std::optional<Codeword>>(frame));
  for (std::size_t l = 1; l <= messages; ++l) {
    for (std::size_t i = 1; i <= cycle; ++i) {
      const int msg = static_cast<int>(l), part = static_cast<int>(i);
      s.slots[0][(l - 1) * cycle + i - 1] = Codeword{msg, Codeword::Origin::Source, part};
      s.slots[i][l * cycle + i - 1] = Codeword{msg, Codeword::Origin::Relay, part};
    }
  }
  return s;
}

}  // namespace coopmux
