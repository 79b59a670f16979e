// SPDX-License-Identifier: Apache-2.0
#include "coopmux/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_number(std::string_view field, std::size_t line_no) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  const std::string s(field);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(x)) {
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return x;
}

}  // namespace

void CsvDocument::add_meta(std::string key, std::string value) {
  meta.emplace_back(std::move(key), std::move(value));
}

std::vector<CsvRow> CsvDocument::series(std::string_view name) const {
  std::vector<CsvRow> out;
  for (const auto& r : rows)
    if (r.series == name) out.push_back(r);
  return out;
}

std::vector<std::string> CsvDocument::series_names() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (std::find(out.begin(), out.end(), r.series) == out.end()) out.push_back(r.series);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_csv(const CsvDocument& doc) {
  std::string out;
  for (const auto& [k, v] : doc.meta) {
    if (k.find_first_of(":\n") != std::string::npos || v.find('\n') != std::string::npos)
      throw ContractError("csv metadata may not contain newlines or ':' in keys");
    out += "# " + k + ": " + v + "\n";
  }
  out += kCsvHeader;
  out += '\n';
  for (const auto& r : doc.rows) {
    if (r.series.find_first_of(",\n") != std::string::npos)
      throw ContractError("csv series name may not contain ',' or newlines");
    out += r.series + ',' + format_number(r.eta_db) + ',' + format_number(r.value) + ',' +
           format_number(r.ci_low) + ',' + format_number(r.ci_high) + '\n';
  }
  return out;
}

CsvDocument parse_csv(std::string_view text) {
  CsvDocument doc;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      throw ConfigError("csv line " + std::to_string(line_no + 1) + ": missing final newline");
    }
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto where = "csv line " + std::to_string(line_no) + ": ";
    if (!header && line.starts_with("# ")) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string_view::npos) throw ConfigError(where + "comment needs '# key: value'");
      doc.add_meta(std::string(line.substr(2, colon - 2)), std::string(line.substr(colon + 2)));
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw ConfigError(where + "expected header '" + std::string(kCsvHeader) + "'");
      header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 5) {
      throw ConfigError(where + "expected 5 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ConfigError(where + "empty series name");
    doc.rows.push_back({std::string(fields[0]), parse_number(fields[1], line_no),
                        parse_number(fields[2], line_no), parse_number(fields[3], line_no),
                        parse_number(fields[4], line_no)});
  }
  if (!header) throw ConfigError("csv has no header row");
  return doc;
}

void append_sweep(CsvDocument& doc, const SweepResult& sweep, std::string_view suffix,
                  const std::vector<std::string>& only) {
  auto copy = [&](const Series& s) {
    for (const auto& p : s.points) {
      CsvRow row{s.name + std::string(suffix), p.eta_db, p.value, p.ci_low, p.ci_high};
      if (!p.defined) row.value = row.ci_low = row.ci_high = std::numeric_limits<double>::quiet_NaN();
      doc.rows.push_back(std::move(row));
    }
  };
  if (only.empty()) {
    for (const auto& s : sweep.series) copy(s);
  } else {
    for (const auto& name : only) copy(sweep.find(name));
  }
}

void add_sweep_meta(CsvDocument& doc, const SweepResult& sweep, std::string_view prefix) {
  const std::string p(prefix);
  doc.add_meta(p + "scheme", std::string(scheme_name(sweep.spec.scheme)));
  doc.add_meta(p + "topology", sweep.spec.topology.describe());
  if (sweep.spec.cyclic_cycle) doc.add_meta(p + "cyclic_I", std::to_string(*sweep.spec.cyclic_cycle));
  doc.add_meta(p + "rate", "r=" + format_number(sweep.rate.multiplexing_gain) +
                               " g=" + format_number(sweep.rate.array_gain));
  const auto& eta = sweep.eta_db;
  doc.add_meta(p + "eta_db", format_number(eta.front()) + ".." + format_number(eta.back()) + " (" +
                                 std::to_string(eta.size()) + " points)");
}

CsvDocument sweep_document(const SweepResult& sweep) {
  CsvDocument doc;
  doc.add_meta("version", COOPMUX_VERSION);
  add_sweep_meta(doc, sweep);
  doc.add_meta("primary", sweep.primary);
  doc.add_meta("seed", std::to_string(sweep.seed));
  doc.add_meta("trials", std::to_string(sweep.trials));
  append_sweep(doc, sweep);
  return doc;
}

std::string render_dmt_csv(const std::vector<std::pair<std::string, DmtCurve>>& curves) {
  std::string out = "# version: " COOPMUX_VERSION "\nseries,r,d\n";
  for (const auto& [name, curve] : curves)
    for (const auto& v : curve.vertices()) out += name + ',' + format_number(v.r) + ',' + format_number(v.d) + '\n';
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir.string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      fs::remove(tmp, ec);
      throw ConfigError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot replace " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace coopmux
