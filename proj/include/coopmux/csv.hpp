// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopmux/dmt.hpp"
#include "coopmux/montecarlo.hpp"

namespace coopmux {

/// One row of `series,eta_db,value,ci_low,ci_high`. Undefined rows hold nan.
struct CsvRow {
  std::string series;
  double eta_db = 0.0;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Outage CSV: `# key: value` comment lines, the header row, then data rows.
struct CsvDocument {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<CsvRow> rows;

  void add_meta(std::string key, std::string value);
  /// Rows of one series in file order.
  std::vector<CsvRow> series(std::string_view name) const;
  std::vector<std::string> series_names() const;
};

inline constexpr std::string_view kCsvHeader = "series,eta_db,value,ci_low,ci_high";

/// %.17g, with "nan" for NaN.
std::string format_number(double x);

std::string render_csv(const CsvDocument& doc);

/// Inverse of render_csv. Throws ConfigError naming the offending line.
CsvDocument parse_csv(std::string_view text);

/// Appends every series of `sweep`, renamed `<name><suffix>`. When `only` is
/// non-empty just those series are copied.
void append_sweep(CsvDocument& doc, const SweepResult& sweep, std::string_view suffix = {},
                  const std::vector<std::string>& only = {});

/// Metadata block describing a sweep: version, scheme, topology, rate, grid, seed, trials.
void add_sweep_meta(CsvDocument& doc, const SweepResult& sweep, std::string_view prefix = {});

/// Document holding all series of one sweep.
CsvDocument sweep_document(const SweepResult& sweep);

/// `series,r,d` rows for analytic curves.
std::string render_dmt_csv(const std::vector<std::pair<std::string, DmtCurve>>& curves);

/// Writes through a temporary file in the same directory and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace coopmux
