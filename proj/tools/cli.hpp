// Copyright 2026 The floquet-ising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// floquet-ising command line. run() is the whole program; main() only
// forwards argv, so tests drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "floquet_ising/floquet_ising.hpp"

namespace floquet_ising::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDegenerate = 2;

struct RunConfig {
  std::string command;
  double gamma0 = 20.0;
  std::optional<double> period;
  std::optional<double> p;
  std::size_t cycles = 0;  // 0: command default
  std::size_t samples_per_cycle = 0;
  std::size_t modes = KGrid::kDefaultModes;
  int sites = 8;
  std::string output;
  std::string format;  // empty: command default
  std::string metric = "q";
  std::optional<double> p_from, p_to, p_step;
  std::optional<double> gamma_from, gamma_to, gamma_step;
  std::size_t simulate_cycles = 0;
  std::string window = "hann";
  std::string input;
  std::size_t peaks = 2;
};

// A rectangular numeric result plus the line that summarizes it.
struct Result {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::ordered_json report;  // used instead of the table when non-null
  std::string summary;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline DriveParams drive(const RunConfig& c) {
  if (c.period && c.p) throw UsageError("give either --period or --p, not both");
  if (!c.period && !c.p) throw UsageError("one of --period or --p is required");
  return c.period ? DriveParams(c.gamma0, *c.period) : DriveParams::from_p(c.gamma0, *c.p);
}

inline KGrid grid(const RunConfig& c) { return KGrid::midpoint(c.modes); }

inline std::string fmt(double x) { return io::format_double(x); }

inline Result run_dispersion(const RunConfig& c) {
  const DriveParams d = drive(c);
  const QuasienergySpectrum q = quasienergy_spectrum(d, grid(c));
  Result r;
  r.columns = {"k", "omega_k"};
  for (std::size_t i = 0; i < q.k.size(); ++i) r.rows.push_back({q.k[i], q.omega[i]});
  std::size_t interior = 0;
  for (const auto& sp : q.stationary_points) interior += sp.kind != StationaryPoint::Kind::endpoint;
  r.summary = "modes=" + std::to_string(q.k.size()) + " spread=" + fmt(q.spread) +
              " interior_stationary_points=" + std::to_string(interior);
  return r;
}

inline Result run_simulate(const RunConfig& c) {
  const DriveParams d = drive(c);
  const std::size_t cycles = c.cycles ? c.cycles : 100;
  const std::size_t spc = c.samples_per_cycle ? c.samples_per_cycle : 20;
  const TimeSeries s = time_series(d, cycles, spc, grid(c));
  Result r;
  r.columns = {"t", "mz"};
  for (std::size_t i = 0; i < s.size(); ++i) r.rows.push_back({s.time(i), s.values[i]});
  r.summary = "rows=" + std::to_string(s.size()) + " mean_mz=" + fmt(long_time_average(s)) +
              " last_mz=" + fmt(s.values.back());
  return r;
}

inline Result run_closed_form(const RunConfig& c) {
  const DriveParams d = drive(c);
  const KGrid g = grid(c);
  const SolitaryFrequency w = omega_q(d);
  const Asymptote a = asymptote(d, g);
  Result r;
  r.report = nlohmann::ordered_json{
      {"gamma0", d.gamma0()},
      {"period", d.period()},
      {"p", d.p()},
      {"modes", c.modes},
      {"mz0", magnetization(d, 0.0, g)},
      {"q", a.m0},
      {"omega_q", w.angular},
      {"omega_q_per_cycle", w.per_cycle},
      {"t_q", std::isfinite(w.period()) ? nlohmann::ordered_json(w.period()) : nlohmann::ordered_json(nullptr)},
      {"asymptote_amplitude", a.amp},
      {"delta_half_pi", a.delta_half_pi},
      {"phase_shift", a.phase_shift},
      {"curvature", a.c2},
      {"curvature_richardson_gap", a.c2_richardson_gap},
  };
  r.columns = {"gamma0", "period", "p", "q", "omega_q", "t_q", "mz0", "asymptote_amplitude", "curvature"};
  r.rows.push_back({d.gamma0(), d.period(), d.p(), a.m0, w.angular, w.period(), magnetization(d, 0.0, g), a.amp,
                    a.c2});
  r.summary = "q=" + fmt(a.m0) + " omega_q=" + fmt(w.angular) + " t_q=" + fmt(w.period());
  return r;
}

inline Result run_scan(const RunConfig& c) {
  ScanSpec spec;
  spec.metric = parse_metric(c.metric);
  spec.grid = grid(c);
  spec.mz_cycles = c.cycles ? c.cycles : 100;
  spec.simulate_cycles = c.simulate_cycles;
  const bool p_axis = c.p_from || c.p_to || c.p_step;
  const bool g_axis = c.gamma_from || c.gamma_to || c.gamma_step;
  if (p_axis == g_axis) throw UsageError("scan needs exactly one of the --p-* or --gamma-* ranges");
  if (c.p) throw UsageError("--p is the scanned axis; fix --gamma0 or --period instead");
  std::string axis_name;
  if (p_axis) {
    if (!c.p_from || !c.p_to || !c.p_step) throw UsageError("--p-from, --p-to and --p-step go together");
    spec.values = linear_grid(*c.p_from, *c.p_to, *c.p_step);
    if (c.period) {
      spec.axis = ScanAxis::p_at_fixed_period;
      spec.fixed = *c.period;
    } else {
      spec.axis = ScanAxis::p_at_fixed_gamma0;
      spec.fixed = c.gamma0;
    }
    axis_name = "p";
  } else {
    if (!c.gamma_from || !c.gamma_to || !c.gamma_step) {
      throw UsageError("--gamma-from, --gamma-to and --gamma-step go together");
    }
    if (!c.period) throw UsageError("a --gamma-* scan needs --period");
    spec.values = linear_grid(*c.gamma_from, *c.gamma_to, *c.gamma_step);
    spec.axis = ScanAxis::gamma0_at_fixed_period;
    spec.fixed = *c.period;
    axis_name = "gamma0";
  }
  if (spec.values.size() < 2) throw UsageError("scan range must contain at least two points");

  const auto rows = scan(spec);
  const std::string metric(metric_name(spec.metric));
  Result r;
  r.columns = {axis_name, metric};
  if (spec.simulate_cycles > 0) r.columns.push_back(metric + "_simulated");
  std::size_t failed = 0;
  for (const auto& row : rows) {
    failed += !row.ok;
    const double v = row.ok ? row.value : std::numeric_limits<double>::quiet_NaN();
    if (spec.simulate_cycles > 0) {
      r.rows.push_back({row.parameter, v, row.simulated});
    } else {
      r.rows.push_back({row.parameter, v});
    }
  }
  std::string maxima;
  for (std::size_t i : local_maxima(rows)) maxima += (maxima.empty() ? "" : ";") + fmt(rows[i].parameter);
  r.summary = "points=" + std::to_string(rows.size()) + " failed=" + std::to_string(failed) + " local_maxima_at=" +
              (maxima.empty() ? "none" : maxima);
  return r;
}

inline Result run_spectrum(const RunConfig& c) {
  TimeSeries s;
  if (!c.input.empty()) {
    if (c.period || c.p) throw UsageError("--input replaces the drive flags");
    std::ifstream in(c.input);
    if (!in) throw UsageError("cannot read '" + c.input + "'");
    s = io::read_series_csv(in);
  } else {
    const DriveParams d = drive(c);
    s = time_series(d, c.cycles ? c.cycles : 4000, c.samples_per_cycle ? c.samples_per_cycle : 20, grid(c));
  }
  const Spectrum sp = dft_spectrum(s, parse_window(c.window));
  Result r;
  r.columns = {"frequency", "magnitude"};
  for (std::size_t i = 0; i < sp.frequencies.size(); ++i) r.rows.push_back({sp.frequencies[i], sp.magnitudes[i]});
  std::string peaks;
  for (const Peak& pk : peak_frequencies(sp, c.peaks)) peaks += (peaks.empty() ? "" : ";") + fmt(pk.frequency);
  r.summary = "samples=" + std::to_string(s.size()) + " window=" + std::string(window_name(sp.window)) +
              " bin_width=" + fmt(sp.bin_width()) + " peaks=" + (peaks.empty() ? "none" : peaks);
  return r;
}

inline Result run_oracle_compare(const RunConfig& c) {
  const DriveParams d = drive(c);
  const std::size_t cycles = c.cycles ? c.cycles : 100;
  const std::size_t spc = c.samples_per_cycle ? c.samples_per_cycle : 1;
  const oracle::ComparisonReport rep = oracle::compare(d, c.sites, cycles, spc);
  Result r;
  r.report = nlohmann::ordered_json{
      {"gamma0", rep.gamma0},
      {"period", rep.period},
      {"sites", rep.n_sites},
      {"cycles", rep.n_cycles},
      {"samples_per_cycle", rep.samples_per_cycle},
      {"max_abs_deviation", rep.max_abs_deviation},
      {"threshold", rep.threshold},
      {"pass", rep.pass},
  };
  r.columns = {"t", "mz_free_fermion", "mz_dense"};
  for (std::size_t i = 0; i < rep.dense.size(); ++i) {
    r.rows.push_back({rep.dense.time(i), rep.free_fermion.values[i], rep.dense.values[i]});
  }
  r.summary = "max_abs_deviation=" + fmt(rep.max_abs_deviation) + " pass=" + (rep.pass ? "true" : "false");
  return r;
}

inline std::string default_format(const std::string& command) {
  return command == "closed-form" || command == "oracle-compare" ? "json" : "csv";
}

inline void write_result(std::ostream& os, const Result& r, const std::string& format) {
  if (format == "json") {
    if (!r.report.is_null()) {
      os << r.report.dump(2) << '\n';
      return;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t j = 0; j < row.size(); ++j) {
        obj[r.columns[j]] = std::isfinite(row[j]) ? nlohmann::ordered_json(row[j]) : nlohmann::ordered_json(nullptr);
      }
      rows.push_back(std::move(obj));
    }
    os << rows.dump(2) << '\n';
    return;
  }
  for (std::size_t j = 0; j < r.columns.size(); ++j) os << (j ? "," : "") << r.columns[j];
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << fmt(row[j]);
    os << '\n';
  }
}

inline Result dispatch(const RunConfig& c) {
  if (c.command == "dispersion") return run_dispersion(c);
  if (c.command == "simulate") return run_simulate(c);
  if (c.command == "closed-form") return run_closed_form(c);
  if (c.command == "scan") return run_scan(c);
  if (c.command == "spectrum") return run_spectrum(c);
  if (c.command == "oracle-compare") return run_oracle_compare(c);
  throw UsageError("unknown command '" + c.command + "'");
}

/// Executes one invocation. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Transverse-field Ising chain under a square-wave drive", "floquet-ising"};
  app.require_subcommand(1);

  auto positive = CLI::PositiveNumber;
  auto add_drive = [&](CLI::App* sub) {
    sub->add_option("--gamma0", c.gamma0, "field amplitude")->check(positive);
    auto* period = sub->add_option("--period", c.period, "drive period T")->check(positive);
    auto* p = sub->add_option("--p", c.p, "gamma0 T / pi")->check(positive);
    period->excludes(p);
  };
  auto add_modes = [&](CLI::App* sub) {
    sub->add_option("--modes", c.modes, "momentum modes in (0, pi)")->check(CLI::Range(std::size_t{8}, std::size_t{1} << 24));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", c.output, "write the table here instead of stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_cycles = [&](CLI::App* sub, bool samples) {
    sub->add_option("--cycles", c.cycles, "drive cycles")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    if (samples) {
      sub->add_option("--samples-per-cycle", c.samples_per_cycle, "samples per cycle")
          ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    }
  };

  auto* dispersion = app.add_subcommand("dispersion", "per-mode quasi-energies, k,omega_k");
  add_drive(dispersion);
  add_modes(dispersion);
  add_output(dispersion);

  auto* simulate = app.add_subcommand("simulate", "magnetization time series, t,mz");
  add_drive(simulate);
  add_modes(simulate);
  add_cycles(simulate, true);
  add_output(simulate);

  auto* closed = app.add_subcommand("closed-form", "freezing factor, solitary frequency and asymptote");
  add_drive(closed);
  add_modes(closed);
  add_output(closed);

  auto* scan_cmd = app.add_subcommand("scan", "metric over a parameter range");
  add_drive(scan_cmd);
  add_modes(scan_cmd);
  add_output(scan_cmd);
  scan_cmd->add_option("--metric", c.metric, "q, omega_q, t_q or mz")->check(CLI::IsMember({"q", "omega_q", "t_q", "mz"}));
  scan_cmd->add_option("--cycles", c.cycles, "cycle count for the mz metric")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  scan_cmd->add_option("--p-from", c.p_from);
  scan_cmd->add_option("--p-to", c.p_to);
  scan_cmd->add_option("--p-step", c.p_step)->check(positive);
  scan_cmd->add_option("--gamma-from", c.gamma_from)->check(positive);
  scan_cmd->add_option("--gamma-to", c.gamma_to)->check(positive);
  scan_cmd->add_option("--gamma-step", c.gamma_step)->check(positive);
  scan_cmd->add_option("--simulate-cycles", c.simulate_cycles, "also estimate the metric from a simulated run");

  auto* spectrum = app.add_subcommand("spectrum", "DFT magnitude, frequency,magnitude");
  add_drive(spectrum);
  add_modes(spectrum);
  add_cycles(spectrum, true);
  add_output(spectrum);
  spectrum->add_option("--window", c.window, "hann or rectangular")->check(CLI::IsMember({"hann", "rectangular"}));
  spectrum->add_option("--input", c.input, "t,mz CSV to transform instead of simulating");
  spectrum->add_option("--peaks", c.peaks, "peaks to report")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));

  auto* compare = app.add_subcommand("oracle-compare", "free-fermion vs dense evolution on a small chain");
  add_drive(compare);
  add_cycles(compare, true);
  add_output(compare);
  compare->add_option("--sites", c.sites, "even chain length, at most 12")->check(CLI::Range(2, oracle::kMaxSites));

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "oracle-compare" && c.sites % 2 != 0) {
    err << "error: --sites must be even\n";
    return kExitUsage;
  }
  const std::string format = c.format.empty() ? default_format(c.command) : c.format;

  try {
    const Result r = dispatch(c);
    if (c.output.empty()) {
      write_result(out, r, format);
      err << r.summary << '\n';
    } else {
      std::ofstream file(c.output, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot write '" << c.output << "'\n";
        return kExitUsage;
      }
      write_result(file, r, format);
      file.close();
      if (!file) {
        err << "error: failed writing '" << c.output << "'\n";
        return kExitUsage;
      }
      out << r.summary << '\n';
    }
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace floquet_ising::cli
