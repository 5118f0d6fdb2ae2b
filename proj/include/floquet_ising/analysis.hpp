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

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "floquet_ising/closed_form.hpp"
#include "floquet_ising/errors.hpp"
#include "floquet_ising/kgrid.hpp"
#include "floquet_ising/parallel.hpp"
#include "floquet_ising/propagator.hpp"
#include "floquet_ising/time_series.hpp"

namespace floquet_ising {

enum class Window { rectangular, hann };

inline std::string_view window_name(Window w) { return w == Window::hann ? "hann" : "rectangular"; }

inline Window parse_window(std::string_view name) {
  if (name == "hann") return Window::hann;
  if (name == "rectangular" || name == "rect") return Window::rectangular;
  throw std::invalid_argument("unknown window '" + std::string(name) + "'");
}

/// One-sided magnitude spectrum on an angular-frequency axis,
/// frequencies[j] = 2 pi j / (n_samples dt) for j = 0 .. n_samples / 2.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> magnitudes;
  Window window = Window::hann;
  std::size_t n_samples = 0;
  double dt = 1.0;

  double bin_width() const { return 2.0 * pi / (static_cast<double>(n_samples) * dt); }

  /// (1/n) sum over the full two-sided spectrum of |X_j|^2.
  double parseval_energy() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < magnitudes.size(); ++j) {
      const bool self_conjugate = j == 0 || (n_samples % 2 == 0 && j == n_samples / 2);
      acc += (self_conjugate ? 1.0 : 2.0) * magnitudes[j] * magnitudes[j];
    }
    return acc / static_cast<double>(n_samples);
  }
};

inline constexpr std::size_t kMinSpectrumSamples = 64;

/// Mean-subtracted, tapered samples that the transform actually sees.
inline std::vector<double> prepared_samples(const TimeSeries& series, Window window) {
  const std::size_t n = series.size();
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == Window::hann) w = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(n)));
    x[i] = w * (series.values[i] - mean);
  }
  return x;
}

inline Spectrum dft_spectrum(const TimeSeries& series, Window window = Window::hann) {
  series.validate();
  if (series.size() < kMinSpectrumSamples) {
    throw std::invalid_argument("spectrum needs at least " + std::to_string(kMinSpectrumSamples) + " samples");
  }
  const std::vector<double> x = prepared_samples(series, window);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, x);

  Spectrum s;
  s.window = window;
  s.n_samples = x.size();
  s.dt = series.dt;
  const std::size_t bins = x.size() / 2 + 1;
  s.frequencies.resize(bins);
  s.magnitudes.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    s.frequencies[j] = static_cast<double>(j) * s.bin_width();
    s.magnitudes[j] = std::abs(out[j]);
  }
  return s;
}

struct Peak {
  double frequency = 0.0;
  double magnitude = 0.0;
};

/// Up to `count` interior local maxima, strongest first (ties: lower
/// frequency first), each refined by a parabola through the peak bin and
/// its two neighbours.
inline std::vector<Peak> peak_frequencies(const Spectrum& spectrum, std::size_t count) {
  if (count < 1) throw std::invalid_argument("peak count must be >= 1");
  const auto& m = spectrum.magnitudes;
  struct Candidate {
    std::size_t bin;
    double mag;
  };
  std::vector<Candidate> found;
  for (std::size_t j = 1; j + 1 < m.size(); ++j) {
    if (m[j] > m[j - 1] && m[j] >= m[j + 1]) found.push_back({j, m[j]});
  }
  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    if (a.mag != b.mag) return a.mag > b.mag;
    return a.bin < b.bin;
  });
  if (found.size() > count) found.resize(count);

  std::vector<Peak> peaks;
  peaks.reserve(found.size());
  for (const auto& c : found) {
    const double left = m[c.bin - 1], mid = m[c.bin], right = m[c.bin + 1];
    const double denom = left - 2.0 * mid + right;
    double offset = 0.0;
    if (denom != 0.0) offset = std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
    peaks.push_back({(static_cast<double>(c.bin) + offset) * spectrum.bin_width(),
                     mid - 0.25 * (left - right) * offset});
  }
  return peaks;
}

/// Mean of the samples after discarding the leading burn_in_fraction.
inline double long_time_average(const TimeSeries& series, double burn_in_fraction = 0.0) {
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw std::invalid_argument("burn-in fraction must lie in [0, 1)");
  }
  const auto skip = static_cast<std::size_t>(burn_in_fraction * static_cast<double>(series.size()));
  if (skip >= series.size()) throw std::invalid_argument("no samples left after burn-in");
  double acc = 0.0;
  for (std::size_t i = skip; i < series.size(); ++i) acc += series.values[i];
  return acc / static_cast<double>(series.size() - skip);
}

struct EnvelopeFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  std::size_t extrema = 0;
};

inline constexpr std::size_t kMinEnvelopeSamples = 500;
inline constexpr std::size_t kMinEnvelopeExtrema = 10;
inline constexpr double kDefaultEnvelopeBurnIn = 200.0;

/// Power-law decay of the oscillation about the mean in a stroboscopic
/// series: least-squares slope of log|extremum - mean| against log n over the
/// local extrema with n >= burn_in_cycles, n = t / dt.
inline EnvelopeFit envelope_exponent(const TimeSeries& series, double burn_in_cycles = kDefaultEnvelopeBurnIn) {
  series.validate();
  if (!series.stroboscopic) throw std::invalid_argument("envelope fit needs a stroboscopic series");
  if (series.size() < kMinEnvelopeSamples) {
    throw std::invalid_argument("envelope fit needs at least " + std::to_string(kMinEnvelopeSamples) + " samples");
  }
  std::vector<double> n, v;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double cycle = series.time(i) / series.dt;
    if (cycle >= burn_in_cycles && cycle > 0.0) {
      n.push_back(cycle);
      v.push_back(series.values[i]);
    }
  }
  if (n.size() < 3) throw std::invalid_argument("no samples left after burn-in");
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());

  std::vector<double> xs, ys;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d = v[i] - mean;
    const bool peak = v[i] > v[i - 1] && v[i] >= v[i + 1];
    const bool trough = v[i] < v[i - 1] && v[i] <= v[i + 1];
    if ((peak || trough) && d != 0.0) {
      xs.push_back(std::log(n[i]));
      ys.push_back(std::log(std::abs(d)));
    }
  }
  if (xs.size() < kMinEnvelopeExtrema) {
    throw DegenerateError("only " + std::to_string(xs.size()) + " extrema found (need " +
                          std::to_string(kMinEnvelopeExtrema) + "); the series does not oscillate");
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DegenerateError("extrema span a single cycle count");
  EnvelopeFit fit;
  fit.exponent = sxy / sxx;
  fit.amplitude = std::exp(my - fit.exponent * mx);
  fit.extrema = xs.size();
  return fit;
}

// ---------------------------------------------------------------------------
// Parameter scans.

enum class ScanAxis {
  p_at_fixed_gamma0,       // vary T through p, gamma0 fixed
  p_at_fixed_period,       // vary gamma0 through p, T fixed
  gamma0_at_fixed_period,  // vary gamma0 directly, T fixed
};

enum class ScanMetric { q, omega_q, t_q, mz };

inline ScanMetric parse_metric(std::string_view name) {
  if (name == "q") return ScanMetric::q;
  if (name == "omega_q") return ScanMetric::omega_q;
  if (name == "t_q") return ScanMetric::t_q;
  if (name == "mz") return ScanMetric::mz;
  throw std::invalid_argument("unknown scan metric '" + std::string(name) + "'");
}

inline std::string_view metric_name(ScanMetric m) {
  switch (m) {
    case ScanMetric::q: return "q";
    case ScanMetric::omega_q: return "omega_q";
    case ScanMetric::t_q: return "t_q";
    case ScanMetric::mz: return "mz";
  }
  return "?";
}

/// from, from + step, ... up to `to` (inclusive, with a half-step slack).
inline std::vector<double> linear_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(to >= from)) throw std::invalid_argument("grid end precedes its start");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 0.5)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + static_cast<double>(i) * step;
  return out;
}

struct ScanSpec {
  ScanAxis axis = ScanAxis::p_at_fixed_gamma0;
  double fixed = 20.0;  // gamma0 or period, depending on the axis
  std::vector<double> values;
  ScanMetric metric = ScanMetric::q;
  KGrid grid = KGrid::midpoint();
  std::size_t mz_cycles = 100;        // cycle count for ScanMetric::mz
  std::size_t simulate_cycles = 0;    // > 0 adds the simulated estimate
};

struct ScanRow {
  double parameter = 0.0;
  double value = std::numeric_limits<double>::quiet_NaN();
  double simulated = std::numeric_limits<double>::quiet_NaN();
  bool ok = true;
  std::string error;
};

inline DriveParams scan_point(const ScanSpec& spec, double x) {
  switch (spec.axis) {
    case ScanAxis::p_at_fixed_gamma0: return DriveParams::from_p(spec.fixed, x);
    case ScanAxis::p_at_fixed_period: return DriveParams(x * pi / spec.fixed, spec.fixed);
    case ScanAxis::gamma0_at_fixed_period: return DriveParams(x, spec.fixed);
  }
  throw std::logic_error("unhandled scan axis");
}

/// Slow frequency of a stroboscopic series: the strongest spectral peak,
/// in radians per unit time. Frequencies are folded into [0, pi / T].
inline double measured_slow_frequency(const TimeSeries& strobe) {
  const auto peaks = peak_frequencies(dft_spectrum(strobe, Window::hann), 1);
  if (peaks.empty()) throw DegenerateError("no spectral peak in the simulated series");
  return peaks.front().frequency;
}

inline ScanRow evaluate_scan_point(const ScanSpec& spec, double x) {
  ScanRow row;
  row.parameter = x;
  try {
    const DriveParams params = scan_point(spec, x);
    switch (spec.metric) {
      case ScanMetric::q: row.value = q_factor(params, spec.grid); break;
      case ScanMetric::omega_q: row.value = omega_q(params).angular; break;
      case ScanMetric::t_q: row.value = omega_q(params).period(); break;
      case ScanMetric::mz: row.value = stroboscopic_mz(params, spec.mz_cycles, spec.grid); break;
    }
    if (spec.simulate_cycles > 0) {
      if (spec.metric == ScanMetric::mz) {
        row.simulated = magnetization(params, static_cast<double>(spec.mz_cycles) * params.period(), spec.grid);
      } else {
        const TimeSeries strobe = time_series(params, spec.simulate_cycles, 1, spec.grid);
        switch (spec.metric) {
          case ScanMetric::q: row.simulated = long_time_average(strobe); break;
          case ScanMetric::omega_q: row.simulated = measured_slow_frequency(strobe); break;
          case ScanMetric::t_q: row.simulated = 2.0 * pi / measured_slow_frequency(strobe); break;
          case ScanMetric::mz: break;
        }
      }
    }
    if (!std::isfinite(row.value)) {
      row.ok = false;
      row.error = "non-finite value";
    }
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

/// Evaluates the metric at every grid value. A failing point is marked and
/// the scan carries on; rows keep the order of spec.values.
inline std::vector<ScanRow> scan(const ScanSpec& spec) {
  if (spec.values.size() < 2) throw std::invalid_argument("scan grid needs at least two points");
  std::vector<ScanRow> rows(spec.values.size());
  parallel_for(rows.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = evaluate_scan_point(spec, spec.values[i]);
  });
  return rows;
}

/// Indices of strict interior local maxima of a scanned column.
inline std::vector<std::size_t> local_maxima(const std::vector<ScanRow>& rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    if (!rows[i - 1].ok || !rows[i].ok || !rows[i + 1].ok) continue;
    if (rows[i].value > rows[i - 1].value && rows[i].value > rows[i + 1].value) out.push_back(i);
  }
  return out;
}

}  // namespace floquet_ising
