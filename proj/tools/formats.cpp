// SPDX-License-Identifier: Apache-2.0

#include "formats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qwalk::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_metadata_lines(std::ostream& os, const Metadata& meta) {
  os << "# qwalk " << meta.command;
  for (const auto& [k, v] : meta.fields) os << ' ' << k << '=' << v;
  os << '\n';
  if (!meta.timestamp.empty()) os << "# generated " << meta.timestamp << '\n';
}

Json metadata_json(const Metadata& meta) {
  Json j;
  j["command"] = meta.command;
  for (const auto& [k, v] : meta.fields) j[k] = v;
  if (!meta.timestamp.empty()) j["generated"] = meta.timestamp;
  return j;
}

std::vector<DistributionRow> distribution_rows(const qw_wavefunction* psi) {
  std::vector<DistributionRow> rows;
  const std::size_t n = qw_wavefunction_size(psi);
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    qw_amplitude_row r{};
    if (qw_wavefunction_row(psi, i, &r) != QW_OK) throw std::runtime_error(qw_last_error());
    rows.push_back({r.m, r.prob, r.amp_r_re, r.amp_r_im, r.amp_l_re, r.amp_l_im});
  }
  return rows;
}

Json json_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void write_distribution(std::ostream& os, Format format, const Metadata& meta,
                        const std::vector<DistributionRow>& rows) {
  if (format == Format::Csv) {
    write_metadata_lines(os, meta);
    os << "m,prob,amp_R_re,amp_R_im,amp_L_re,amp_L_im\n";
    for (const DistributionRow& r : rows) {
      os << r.m << ',' << format_real(r.prob) << ',' << format_real(r.amp_r_re) << ','
         << format_real(r.amp_r_im) << ',' << format_real(r.amp_l_re) << ','
         << format_real(r.amp_l_im) << '\n';
    }
    return;
  }
  Json doc;
  doc["metadata"] = metadata_json(meta);
  Json arr = Json::array();
  for (const DistributionRow& r : rows) {
    arr.push_back({{"m", r.m},
                   {"prob", r.prob},
                   {"amp_R_re", r.amp_r_re},
                   {"amp_R_im", r.amp_r_im},
                   {"amp_L_re", r.amp_l_re},
                   {"amp_L_im", r.amp_l_im}});
  }
  doc["rows"] = std::move(arr);
  os << doc.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("malformed real '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<DistributionRow> read_distribution_csv(std::istream& is) {
  std::vector<DistributionRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "m,prob,amp_R_re,amp_R_im,amp_L_re,amp_L_im") {
        throw std::runtime_error("unexpected distribution header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 6) throw std::runtime_error("expected 6 columns in '" + line + "'");
    DistributionRow r;
    std::size_t used = 0;
    r.m = std::stoll(cells[0], &used);
    if (used != cells[0].size()) throw std::runtime_error("malformed position '" + cells[0] + "'");
    r.prob = parse_real(cells[1]);
    r.amp_r_re = parse_real(cells[2]);
    r.amp_r_im = parse_real(cells[3]);
    r.amp_l_re = parse_real(cells[4]);
    r.amp_l_im = parse_real(cells[5]);
    rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("missing distribution header");
  return rows;
}

std::vector<DistributionRow> renormalized(std::vector<DistributionRow> rows) {
  double total = 0.0;
  for (const DistributionRow& r : rows) total += r.prob;
  if (total > 0.0) {
    for (DistributionRow& r : rows) r.prob /= total;
  }
  return rows;
}

void write_origin(std::ostream& os, Format format, const Metadata& meta,
                  const std::vector<OriginRow>& rows) {
  if (format == Format::Csv) {
    write_metadata_lines(os, meta);
    os << "t,P0\n";
    for (const OriginRow& r : rows) os << r.t << ',' << format_real(r.p0) << '\n';
    return;
  }
  Json doc;
  doc["metadata"] = metadata_json(meta);
  Json arr = Json::array();
  for (const OriginRow& r : rows) arr.push_back({{"t", r.t}, {"P0", r.p0}});
  doc["rows"] = std::move(arr);
  os << doc.dump(2) << '\n';
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ';';
      out += csv_cell(v[i]);
    }
    return out;
  }
  return v.dump();
}

void flatten(const std::string& prefix, const Json& v, std::ostream& os) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), os);
    }
    return;
  }
  os << prefix << ',' << csv_cell(v) << '\n';
}

}  // namespace

void write_report(std::ostream& os, Format format, const Metadata& meta, const Json& report) {
  if (format == Format::Csv) {
    write_metadata_lines(os, meta);
    os << "key,value\n";
    flatten("", report, os);
    return;
  }
  Json doc;
  doc["metadata"] = metadata_json(meta);
  for (auto it = report.begin(); it != report.end(); ++it) doc[it.key()] = it.value();
  os << doc.dump(2) << '\n';
}

void write_threshold_table(std::ostream& os, Format format, const Metadata& meta,
                           const std::vector<qw_threshold_row>& rows) {
  if (format == Format::Csv) {
    write_metadata_lines(os, meta);
    os << "r,rho_R,rho_0\n";
    for (const qw_threshold_row& r : rows) {
      os << r.r << ',' << format_real(r.rho_r) << ',' << format_real(r.rho_0) << '\n';
    }
    return;
  }
  Json doc;
  doc["metadata"] = metadata_json(meta);
  Json arr = Json::array();
  for (const qw_threshold_row& r : rows) {
    arr.push_back({{"r", r.r}, {"rho_R", json_real(r.rho_r)}, {"rho_0", json_real(r.rho_0)}});
  }
  doc["rows"] = std::move(arr);
  os << doc.dump(2) << '\n';
}

void write_region_grid(std::ostream& os, Format format, const Metadata& meta,
                       const std::vector<qw_grid_point>& grid) {
  if (format == Format::Csv) {
    write_metadata_lines(os, meta);
    os << "r,rho,region\n";
    for (const qw_grid_point& g : grid) {
      os << g.r << ',' << format_real(g.rho) << ',' << qw_region_name(g.region) << '\n';
    }
    return;
  }
  Json doc;
  doc["metadata"] = metadata_json(meta);
  Json arr = Json::array();
  for (const qw_grid_point& g : grid) {
    arr.push_back({{"r", g.r}, {"rho", g.rho}, {"region", qw_region_name(g.region)}});
  }
  doc["rows"] = std::move(arr);
  os << doc.dump(2) << '\n';
}

}  // namespace qwalk::cli
