// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expression.hpp"
#include "formats.hpp"
#include "qwalk/qwalk.h"

namespace qwalk::cli {

namespace {

// Failure carrying the exit code it maps to.
struct CommandError {
  int code;
  std::string message;
};

[[noreturn]] void throw_status(qw_status status) {
  const int code = status == QW_ERR_DOMAIN ? kExitDomain
                   : status == QW_ERR_IO   ? kExitIo
                                           : kExitInvariant;
  throw CommandError{code, qw_last_error()};
}

void check(qw_status status) {
  if (status != QW_OK) throw_status(status);
}

template <typename T, auto Free>
using Handle = std::unique_ptr<T, std::integral_constant<decltype(Free), Free>>;

using WaveHandle = Handle<qw_wavefunction, &qw_wavefunction_free>;
using SeriesHandle = Handle<qw_origin_series, &qw_origin_series_free>;
using DiagramHandle = Handle<qw_phase_diagram, &qw_phase_diagram_free>;

// Raw flag text; parsed after CLI11 so expression errors map to exit code 2.
struct RunConfig {
  std::string r = "1";
  std::string rho = "1/2";
  std::string a = "1";
  std::string phi = "0";
  std::string t = "100";
  std::string t_max = "1000";
  std::string p;
  std::string seed;
  std::string trials = "1000000";
  std::string threads = "0";
  std::string r_max = "10";
  std::string rho_steps = "99";
  std::string out = "-";
  std::string grid_out;
  std::string format;
  std::string tol_prob;
  std::string tol_alg;
  bool no_timestamp = false;
  bool t_given = false;
};

double real_flag(const std::string& text, const char* flag) {
  try {
    return parse_number(text).value;
  } catch (const ExpressionError& e) {
    throw CommandError{kExitDomain, std::string(flag) + ": " + e.what()};
  }
}

std::int64_t int_flag(const std::string& text, const char* flag) {
  try {
    return parse_integer(text, flag);
  } catch (const ExpressionError& e) {
    throw CommandError{kExitDomain, e.what()};
  }
}

int small_int_flag(const std::string& text, const char* flag) {
  const std::int64_t v = int_flag(text, flag);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw CommandError{kExitDomain, std::string(flag) + " out of range"};
  }
  return static_cast<int>(v);
}

Format format_of(const RunConfig& cfg, Format fallback) {
  if (cfg.format.empty()) return fallback;
  if (cfg.format == "csv") return Format::Csv;
  if (cfg.format == "json") return Format::Json;
  throw CommandError{kExitDomain, "--format must be csv or json, got '" + cfg.format + "'"};
}

qw_walk_params walk_params(const RunConfig& cfg) {
  return {small_int_flag(cfg.r, "--r"), real_flag(cfg.rho, "--rho")};
}

qw_coin_state coin_state(const RunConfig& cfg) {
  return {real_flag(cfg.a, "--a"), real_flag(cfg.phi, "--phi")};
}

qw_tolerances tolerances(const RunConfig& cfg) {
  qw_tolerances tol = qw_default_tolerances();
  if (!cfg.tol_prob.empty()) tol.probability = real_flag(cfg.tol_prob, "--tol-prob");
  if (!cfg.tol_alg.empty()) tol.algebraic = real_flag(cfg.tol_alg, "--tol-alg");
  if (!(tol.probability > 0.0) || !(tol.algebraic > 0.0)) {
    throw CommandError{kExitDomain, "tolerances must be positive"};
  }
  return tol;
}

Metadata metadata(const std::string& command, const RunConfig& cfg) {
  Metadata meta;
  meta.command = command;
  if (!cfg.no_timestamp) meta.timestamp = utc_timestamp();
  return meta;
}

void add_walk_metadata(Metadata& meta, const qw_walk_params& p) {
  meta.add("r", std::to_string(p.r));
  meta.add("rho", format_real(p.rho));
}

void add_state_metadata(Metadata& meta, const qw_coin_state& s) {
  meta.add("a", format_real(s.a));
  meta.add("phi", format_real(s.phi));
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw CommandError{kExitIo, "cannot open '" + path + "' for writing"};
  file << text;
  file.flush();
  if (!file) throw CommandError{kExitIo, "failed writing '" + path + "'"};
}

std::string simulate(const RunConfig& cfg) {
  const qw_walk_params params = walk_params(cfg);
  const qw_coin_state state = coin_state(cfg);
  const qw_tolerances tol = tolerances(cfg);
  const std::int64_t t = int_flag(cfg.t, "--t");
  const Format format = format_of(cfg, Format::Csv);

  qw_wavefunction* raw = nullptr;
  check(qw_evolve(&params, &state, t, &raw));
  const WaveHandle psi(raw);
  check(qw_wavefunction_check(psi.get(), &params, &tol));

  Metadata meta = metadata("simulate", cfg);
  add_walk_metadata(meta, params);
  add_state_metadata(meta, state);
  meta.add("t", std::to_string(t));
  std::ostringstream os;
  write_distribution(os, format, meta, distribution_rows(psi.get()));
  return os.str();
}

std::string classify(const RunConfig& cfg) {
  const qw_walk_params params = walk_params(cfg);
  const qw_tolerances tol = tolerances(cfg);
  qw_classification c{};
  check(qw_classify(&params, &tol, &c));

  Json saddles = Json::array();
  for (std::size_t i = 0; i < c.saddle_count; ++i) saddles.push_back(c.saddles[i]);
  Json rep;
  rep["r"] = c.r;
  rep["rho"] = c.rho;
  rep["rho_R"] = c.rho_r;
  rep["recurrent"] = c.recurrent != 0;
  rep["v_L"] = c.v_left;
  rep["v_R"] = c.v_right;
  rep["rho_0"] = c.rho_0;
  rep["genuine_biased"] = c.genuine_biased != 0;
  rep["region"] = qw_region_name(c.region);
  rep["saddle_exists"] = c.saddle_exists != 0;
  rep["saddle_points"] = std::move(saddles);
  rep["saddle_degenerate"] = c.saddle_degenerate != 0;
  rep["boundary_flag"] = c.boundary != 0;

  Metadata meta = metadata("classify", cfg);
  add_walk_metadata(meta, params);
  std::ostringstream os;
  write_report(os, format_of(cfg, Format::Json), meta, rep);
  return os.str();
}

std::string origin(const RunConfig& cfg) {
  const qw_walk_params params = walk_params(cfg);
  const qw_coin_state state = coin_state(cfg);
  const std::int64_t t_max = int_flag(cfg.t_max, "--t-max");
  if (t_max < 1) throw CommandError{kExitDomain, "--t-max must be at least 1"};

  qw_origin_series* raw = nullptr;
  check(qw_origin_series_compute(&params, &state, t_max, &raw));
  const SeriesHandle series(raw);
  std::vector<OriginRow> rows;
  for (std::size_t i = 0; i < qw_origin_series_size(series.get()); ++i) {
    OriginRow row;
    int occupied = 0;
    check(qw_origin_series_entry(series.get(), i, &row.t, &row.p0, &occupied));
    if (occupied) rows.push_back(row);
  }

  Metadata meta = metadata("origin", cfg);
  add_walk_metadata(meta, params);
  add_state_metadata(meta, state);
  meta.add("t_max", std::to_string(t_max));
  std::ostringstream os;
  write_origin(os, format_of(cfg, Format::Csv), meta, rows);
  return os.str();
}

Json fit_json(const qw_line_fit& f) {
  Json j;
  j["slope"] = json_real(f.slope);
  j["intercept"] = json_real(f.intercept);
  j["r_squared"] = json_real(f.r_squared);
  j["points"] = f.points;
  return j;
}

std::string polya(const RunConfig& cfg) {
  const qw_walk_params params = walk_params(cfg);
  const qw_coin_state state = coin_state(cfg);
  const std::int64_t t_max = int_flag(cfg.t_max, "--t-max");
  qw_polya_report p{};
  check(qw_polya(&params, &state, t_max, &p));

  Json rep;
  rep["t_max"] = p.t_max;
  rep["estimate"] = p.estimate;
  rep["partial_product"] = p.partial_product;
  rep["fit_window"] = Json::array({std::max<std::int64_t>(1, t_max / 10), t_max});
  rep["loglog_fit"] = fit_json(p.loglog);
  rep["loglinear_fit"] = fit_json(p.loglinear);
  rep["recurrent"] = p.recurrent != 0;
  rep["boundary_flag"] = p.boundary != 0;

  Metadata meta = metadata("polya", cfg);
  add_walk_metadata(meta, params);
  add_state_metadata(meta, state);
  std::ostringstream os;
  write_report(os, format_of(cfg, Format::Json), meta, rep);
  return os.str();
}

std::string mean(const RunConfig& cfg) {
  const qw_walk_params params = walk_params(cfg);
  const qw_coin_state state = coin_state(cfg);
  std::int64_t t = 0;
  if (cfg.t_given) {
    t = int_flag(cfg.t, "--t");
    if (t < 1) throw CommandError{kExitDomain, "--t must be at least 1 for the empirical mean"};
  }
  qw_mean_report m{};
  check(qw_mean(&params, &state, t, &m));

  Json rep;
  rep["closed_form"] = m.closed_form;
  rep["integral"] = m.integral;
  rep["difference"] = m.difference;
  rep["analytic_limit"] = m.analytic_limit != 0;
  if (m.has_empirical) {
    rep["empirical_t"] = m.empirical_t;
    rep["empirical_mean_over_t"] = m.empirical;
  }

  Metadata meta = metadata("mean", cfg);
  add_walk_metadata(meta, params);
  add_state_metadata(meta, state);
  std::ostringstream os;
  write_report(os, format_of(cfg, Format::Json), meta, rep);
  return os.str();
}

std::string phase_diagram(const RunConfig& cfg, std::string* grid_text) {
  const int r_max = small_int_flag(cfg.r_max, "--r-max");
  const int rho_steps = small_int_flag(cfg.rho_steps, "--rho-steps");
  const bool with_grid = !cfg.grid_out.empty();
  const Format format = format_of(cfg, Format::Csv);

  qw_phase_diagram* raw = nullptr;
  check(qw_phase_diagram_compute(r_max, rho_steps, with_grid ? 1 : 0, &raw));
  const DiagramHandle table(raw);

  std::vector<qw_threshold_row> rows(qw_phase_diagram_rows(table.get()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check(qw_phase_diagram_row(table.get(), i, &rows[i]));
  }
  Metadata meta = metadata("phase-diagram", cfg);
  meta.add("r_max", std::to_string(r_max));
  meta.add("rho_steps", std::to_string(rho_steps));
  std::ostringstream os;
  write_threshold_table(os, format, meta, rows);

  if (with_grid) {
    std::vector<qw_grid_point> grid(qw_phase_diagram_grid_size(table.get()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      check(qw_phase_diagram_grid_point(table.get(), i, &grid[i]));
    }
    std::ostringstream gs;
    write_region_grid(gs, format, meta, grid);
    *grid_text = gs.str();
  }
  return os.str();
}

std::string classical(const RunConfig& cfg) {
  if (cfg.p.empty()) throw CommandError{kExitDomain, "classical requires --p"};
  qw_classical_params params{};
  params.r = small_int_flag(cfg.r, "--r");
  ParsedNumber p;
  try {
    p = parse_number(cfg.p);
  } catch (const ExpressionError& e) {
    throw CommandError{kExitDomain, std::string("--p: ") + e.what()};
  }
  params.p = p.value;
  if (p.numerator && p.denominator && *p.denominator > 0) {
    params.p_num = *p.numerator;
    params.p_den = *p.denominator;
  }
  const std::int64_t t = int_flag(cfg.t, "--t");
  const bool run_mc = !cfg.seed.empty();
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  if (run_mc) {
    const std::int64_t s = int_flag(cfg.seed, "--seed");
    if (s < 0) throw CommandError{kExitDomain, "--seed must be non-negative"};
    seed = static_cast<std::uint64_t>(s);
    trials = int_flag(cfg.trials, "--trials");
    if (trials < 1) throw CommandError{kExitDomain, "--trials must be at least 1"};
  }
  const std::int64_t threads = int_flag(cfg.threads, "--threads");
  if (threads < 0 || threads > 4096) throw CommandError{kExitDomain, "--threads out of range"};

  qw_classical_report c{};
  check(qw_classical(&params, t, trials, seed, static_cast<unsigned>(threads), &c));

  Json rep;
  rep["t"] = c.t;
  rep["P0"] = c.p0;
  rep["q"] = c.q;
  rep["stirling"] = c.has_stirling ? Json(c.stirling) : Json(nullptr);
  rep["recurrent"] = c.recurrent != 0;
  rep["mean"] = c.mean;
  if (c.has_monte_carlo) {
    Json mc;
    mc["generator"] = qw_classical_generator();
    mc["seed"] = c.seed;
    mc["trials"] = c.trials;
    mc["mean_estimate"] = c.mc_mean;
    mc["mean_stderr"] = c.mc_mean_stderr;
    mc["origin_frequency"] = c.mc_origin_frequency;
    mc["origin_stderr"] = c.mc_origin_stderr;
    rep["monte_carlo"] = std::move(mc);
  }

  Metadata meta = metadata("classical", cfg);
  meta.add("r", std::to_string(params.r));
  meta.add("p", params.p_den > 0 ? std::to_string(params.p_num) + "/" + std::to_string(params.p_den)
                                  : format_real(params.p));
  meta.add("t", std::to_string(t));
  if (run_mc) {
    meta.add("seed", std::to_string(seed));
    meta.add("trials", std::to_string(trials));
    meta.add("generator", qw_classical_generator());
  }
  std::ostringstream os;
  write_report(os, format_of(cfg, Format::Json), meta, rep);
  return os.str();
}

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "Output path, '-' for stdout");
  cmd->add_option("--format", cfg.format, "csv or json");
  cmd->add_flag("--no-timestamp", cfg.no_timestamp, "Omit the generation timestamp");
}

void add_walk_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--r", cfg.r, "Right-step length r >= 1");
  cmd->add_option("--rho", cfg.rho, "Coin parameter in [0, 1]; accepts 1/sqrt2, pi/4, ...");
}

void add_state_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--a", cfg.a, "Initial |R> weight a in [0, 1]");
  cmd->add_option("--phi", cfg.phi, "Initial relative phase in [0, 2 pi)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Biased discrete-time quantum walks on a line", "qwalk"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Evolve a walk and write the distribution");
  add_walk_flags(sim, cfg);
  add_state_flags(sim, cfg);
  sim->add_option("--t", cfg.t, "Number of steps");
  sim->add_option("--tol-prob", cfg.tol_prob, "Norm tolerance");
  sim->add_option("--tol-alg", cfg.tol_alg, "Algebraic tolerance");
  add_output_flags(sim, cfg);

  auto* cls = app.add_subcommand("classify", "Recurrence and genuine-bias report");
  add_walk_flags(cls, cfg);
  cls->add_option("--tol-alg", cfg.tol_alg, "Boundary tolerance");
  add_output_flags(cls, cfg);

  auto* org = app.add_subcommand("origin", "Probability at the origin per occupied step");
  add_walk_flags(org, cfg);
  add_state_flags(org, cfg);
  org->add_option("--t-max", cfg.t_max, "Last step");
  add_output_flags(org, cfg);

  auto* pol = app.add_subcommand("polya", "Partial Polya product and decay fits");
  add_walk_flags(pol, cfg);
  add_state_flags(pol, cfg);
  pol->add_option("--t-max", cfg.t_max, "Last step");
  add_output_flags(pol, cfg);

  auto* mn = app.add_subcommand("mean", "Asymptotic position mean per step");
  add_walk_flags(mn, cfg);
  add_state_flags(mn, cfg);
  auto* mean_t = mn->add_option("--t", cfg.t, "Also simulate to t and report <x>/t");
  add_output_flags(mn, cfg);

  auto* pd = app.add_subcommand("phase-diagram", "Threshold curves and region grid");
  pd->add_option("--r-max", cfg.r_max, "Largest r");
  pd->add_option("--rho-steps", cfg.rho_steps, "Interior rho grid points");
  pd->add_option("--grid-out", cfg.grid_out, "Also write the region grid here");
  add_output_flags(pd, cfg);

  auto* clc = app.add_subcommand("classical", "Classical biased random walk baseline");
  clc->add_option("--r", cfg.r, "Right-step length r >= 1");
  clc->add_option("--p", cfg.p, "Right-step probability; n/d keeps it exact");
  clc->add_option("--t", cfg.t, "Number of steps");
  clc->add_option("--seed", cfg.seed, "Run Monte Carlo with this seed");
  clc->add_option("--trials", cfg.trials, "Monte Carlo trials");
  clc->add_option("--threads", cfg.threads, "Monte Carlo threads, 0 = all cores");
  add_output_flags(clc, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qwalk: " << e.what() << '\n';
    return kExitDomain;
  }
  cfg.t_given = mean_t->count() > 0;

  try {
    if (sim->parsed()) {
      emit(cfg.out, simulate(cfg), out);
    } else if (cls->parsed()) {
      emit(cfg.out, classify(cfg), out);
    } else if (org->parsed()) {
      emit(cfg.out, origin(cfg), out);
    } else if (pol->parsed()) {
      emit(cfg.out, polya(cfg), out);
    } else if (mn->parsed()) {
      emit(cfg.out, mean(cfg), out);
    } else if (pd->parsed()) {
      std::string grid;
      const std::string table = phase_diagram(cfg, &grid);
      emit(cfg.out, table, out);
      if (!cfg.grid_out.empty()) emit(cfg.grid_out, grid, out);
    } else if (clc->parsed()) {
      emit(cfg.out, classical(cfg), out);
    }
  } catch (const CommandError& e) {
    err << "qwalk: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "qwalk: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace qwalk::cli
