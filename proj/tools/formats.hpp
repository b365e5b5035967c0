// SPDX-License-Identifier: Apache-2.0
//
// Table and report formats written by the command-line tool.
//
// CSV files start with '#'-prefixed metadata lines, then a header row.
// Reals are written in the shortest decimal form that parses back to the
// same double, so files round-trip bit-exactly.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qwalk/qwalk.h"

namespace qwalk::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

/// Shortest round-trip decimal rendering; "nan", "inf", "-inf" otherwise.
std::string format_real(double x);

struct Metadata {
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string timestamp;  // empty: omitted

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
};

/// JSON value for a real; null for nan/inf, which JSON cannot carry.
Json json_real(double x);

/// Current UTC time as ISO 8601.
std::string utc_timestamp();

void write_metadata_lines(std::ostream& os, const Metadata& meta);
Json metadata_json(const Metadata& meta);

/// One row of `m,prob,amp_R_re,amp_R_im,amp_L_re,amp_L_im`.
struct DistributionRow {
  std::int64_t m = 0;
  double prob = 0.0;
  double amp_r_re = 0.0;
  double amp_r_im = 0.0;
  double amp_l_re = 0.0;
  double amp_l_im = 0.0;
};

std::vector<DistributionRow> distribution_rows(const qw_wavefunction* psi);

void write_distribution(std::ostream& os, Format format, const Metadata& meta,
                        const std::vector<DistributionRow>& rows);

/// Parses a CSV written by write_distribution. Throws std::runtime_error on
/// malformed input.
std::vector<DistributionRow> read_distribution_csv(std::istream& is);

/// Divides every prob by the column sum.
std::vector<DistributionRow> renormalized(std::vector<DistributionRow> rows);

struct OriginRow {
  std::int64_t t = 0;
  double p0 = 0.0;
};

void write_origin(std::ostream& os, Format format, const Metadata& meta,
                  const std::vector<OriginRow>& rows);

/// Writes a flat report: JSON object with a "metadata" member, or
/// `key,value` CSV lines (arrays joined with ';', null as empty).
void write_report(std::ostream& os, Format format, const Metadata& meta, const Json& report);

void write_threshold_table(std::ostream& os, Format format, const Metadata& meta,
                           const std::vector<qw_threshold_row>& rows);

void write_region_grid(std::ostream& os, Format format, const Metadata& meta,
                       const std::vector<qw_grid_point>& grid);

}  // namespace qwalk::cli
