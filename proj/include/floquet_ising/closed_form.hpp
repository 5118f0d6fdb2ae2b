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

// Analytic stroboscopic response. Starting from the +G0 ground state,
//
//   M_k(nT) = A_k + R_k cos(2 n omega_k + delta_k),
//   A_k     = cos^2(theta1) + g_k f_k,
//   f_k     = sin(2 theta1) sin(mu1) cos(omega_k) + sin(2 theta2) sin(mu2),
//   g_k     = sin(2 phi) sin(mu2) / (2 sin^2 omega_k),
//
// and R_k cos(delta_k) = -g_k f_k, R_k sin(delta_k) = g_k sin(2 theta1)
// sin(mu1) sin(omega_k), which pins M_k(0) = cos^2(theta1).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_ising/errors.hpp"
#include "floquet_ising/kgrid.hpp"
#include "floquet_ising/mode_algebra.hpp"
#include "floquet_ising/parallel.hpp"
#include "floquet_ising/propagator.hpp"

namespace floquet_ising {

struct ModeEnvelope {
  double a_k = 0.0;
  double r_k = 0.0;
  double delta_k = 0.0;  // (-pi, pi]
  double omega_k = 0.0;  // [0, pi]
  double f_k = 0.0;
  double g_k = 0.0;  // 0 when sin(omega_k) < kDegenerateSinOmega
};

/// Envelope from a (possibly synthetic) mode geometry.
///
/// The products g f and g sin(omega) are formed from the unit vector
/// (Im u11, S) / sin(omega), S = sin(mu2) sin(2 phi), which is bounded even
/// as sin(omega) -> 0 where g alone diverges.
inline ModeEnvelope mode_envelope(const ModeGeometry& geom) {
  const double s1 = std::sin(geom.mu1), c1 = std::cos(geom.mu1);
  const double s2 = std::sin(geom.mu2), c2 = std::cos(geom.mu2);
  const double sin2phi = std::sin(2.0 * geom.phi), cos2phi = std::cos(2.0 * geom.phi);
  const double sin2t1 = std::sin(2.0 * geom.theta1), cos2t1 = std::cos(2.0 * geom.theta1);
  const double sin2t2 = std::sin(2.0 * geom.theta2);

  const double im_u11 = s1 * c2 + c1 * s2 * cos2phi;
  const double coupling = s2 * sin2phi;  // |U12| up to sign
  const double cos_w = c1 * c2 - s1 * s2 * cos2phi;
  const double sin_w = std::hypot(im_u11, coupling);

  ModeEnvelope e;
  e.omega_k = std::atan2(sin_w, cos_w);
  e.f_k = sin2t1 * s1 * cos_w + sin2t2 * s2;

  const double cos_t1 = std::cos(geom.theta1);
  double gf = 0.0;
  double g_sin = 0.0;  // g_k * sin(omega_k)
  if (sin_w > 0.0) {
    const double y_hat = im_u11 / sin_w;
    const double s_hat = coupling / sin_w;
    // f = -S cos(2 theta1) + Im(u11) sin(2 theta1) cos(mu1)
    gf = 0.5 * s_hat * (-s_hat * cos2t1 + y_hat * sin2t1 * c1);
    g_sin = 0.5 * s_hat;
  }
  if (sin_w >= kDegenerateSinOmega) e.g_k = coupling / (2.0 * sin_w * sin_w);

  const double rc = -gf;                   // R cos(delta)
  const double rs = g_sin * sin2t1 * s1;   // R sin(delta)
  e.a_k = cos_t1 * cos_t1 + gf;
  e.r_k = std::hypot(rc, rs);
  e.delta_k = (e.r_k > 0.0) ? std::atan2(rs, rc) : 0.0;
  if (e.delta_k == -pi) e.delta_k = pi;
  return e;
}

inline ModeEnvelope mode_envelope(const DriveParams& params, double k) {
  return mode_envelope(mode_geometry(params, k));
}

inline double stroboscopic_mk(const ModeEnvelope& e, std::uint64_t n) {
  return e.a_k + e.r_k * std::cos(2.0 * static_cast<double>(n) * e.omega_k + e.delta_k);
}

inline double stroboscopic_mk(const DriveParams& params, double k, std::uint64_t n) {
  return stroboscopic_mk(mode_envelope(params, k), n);
}

/// Closed-form stroboscopic M_z(nT) on a momentum grid.
inline double stroboscopic_mz(const DriveParams& params, std::uint64_t n, const KGrid& grid) {
  grid.require_quadrature_resolution();
  std::vector<double> terms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    terms[i] = grid.weights()[i] * stroboscopic_mk(params, grid.nodes()[i], n);
  }
  return -1.0 + pairwise_sum(terms);
}

/// Infinite-time average of the stroboscopic M_z: -1 + (2/pi) int A_k dk.
inline double q_factor(const DriveParams& params, const KGrid& grid) {
  grid.require_quadrature_resolution();
  std::vector<double> terms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    terms[i] = grid.weights()[i] * mode_envelope(params, grid.nodes()[i]).a_k;
  }
  return -1.0 + pairwise_sum(terms);
}

struct SolitaryFrequency {
  double per_cycle = 0.0;  // radians per drive cycle
  double angular = 0.0;    // radians per unit time

  /// 2 pi / angular; infinite when the oscillation freezes out.
  double period() const { return angular > 0.0 ? 2.0 * pi / angular : INFINITY; }
};

/// omega_Q = 2 acos{1 - cos^2(phi) [1 - cos(mu1 + mu2)]} at k = pi/2, via the
/// equivalent 4 asin|cos(phi) sin((mu1 + mu2)/2)|, which does not lose
/// precision as omega_Q -> 0.
inline SolitaryFrequency omega_q(const DriveParams& params) {
  const ModeGeometry g = mode_geometry(params, pi / 2);
  const double x = std::abs(std::cos(g.phi) * std::sin(0.5 * (g.mu1 + g.mu2)));
  SolitaryFrequency w;
  w.per_cycle = 4.0 * std::asin(std::min(1.0, x));
  w.angular = w.per_cycle / params.period();
  return w;
}

/// omega_k from the robust atan2 form.
inline double omega_k(const DriveParams& params, double k) {
  return mode_envelope(params, k).omega_k;
}

/// Five-point second derivative of omega_k at k with step h.
inline double omega_curvature(const DriveParams& params, double k, double h) {
  const double f0 = omega_k(params, k);
  const double f1 = omega_k(params, k + h) + omega_k(params, k - h);
  const double f2 = omega_k(params, k + 2 * h) + omega_k(params, k - 2 * h);
  return (-f2 + 16.0 * f1 - 30.0 * f0) / (12.0 * h * h);
}

/// Stationary-phase asymptote of the stroboscopic response around k = pi/2:
///
///   M_z(n) ~ m0 + amp / sqrt(n) * cos(n omega_Q + delta_half_pi + phase_shift),
///
/// with amp = (2/pi) R_{pi/2} sqrt(pi / |C|) and phase_shift = sign(C) pi/4
/// from the Fresnel integral of the quadratic phase n C (k - pi/2)^2.
struct Asymptote {
  double m0 = 0.0;
  double amp = 0.0;
  double omega_q_cycle = 0.0;
  double omega_q_angular = 0.0;
  double delta_half_pi = 0.0;
  double phase_shift = 0.0;
  double c2 = 0.0;
  double c2_richardson_gap = 0.0;  // |C(h) - C(h/2)|

  double evaluate(double n) const {
    return m0 + amp / std::sqrt(n) * std::cos(n * omega_q_cycle + delta_half_pi + phase_shift);
  }
};

inline constexpr double kCurvatureStep = 1e-4;
inline constexpr double kDegenerateCurvature = 1e-8;

inline Asymptote asymptote(const DriveParams& params, const KGrid& grid) {
  Asymptote a;
  a.c2 = omega_curvature(params, pi / 2, kCurvatureStep);
  a.c2_richardson_gap = std::abs(a.c2 - omega_curvature(params, pi / 2, 0.5 * kCurvatureStep));
  if (std::abs(a.c2) < kDegenerateCurvature) {
    throw DegenerateError("curvature of omega_k at k = pi/2 vanishes (|C| = " + std::to_string(std::abs(a.c2)) +
                          "); stationary-phase asymptote undefined");
  }
  const ModeEnvelope mid = mode_envelope(params, pi / 2);
  const SolitaryFrequency w = omega_q(params);
  a.m0 = q_factor(params, grid);
  a.amp = (2.0 / pi) * mid.r_k * std::sqrt(pi / std::abs(a.c2));
  a.omega_q_cycle = w.per_cycle;
  a.omega_q_angular = w.angular;
  a.delta_half_pi = mid.delta_k;
  a.phase_shift = (a.c2 > 0.0 ? 1.0 : -1.0) * pi / 4;
  return a;
}

struct StationaryPoint {
  enum class Kind { minimum, maximum, endpoint };
  double k = 0.0;
  double omega = 0.0;
  Kind kind = Kind::minimum;
};

struct QuasienergySpectrum {
  std::vector<double> k;
  std::vector<double> omega;  // per-cycle quasi-energy; eigenphases of U_k are +-omega
  double period = 1.0;
  double spread = 0.0;        // max omega - min omega
  std::vector<StationaryPoint> stationary_points;

  double quasienergy(std::size_t i) const { return omega[i] / period; }
};

/// Per-mode Floquet quasi-energies, plus grid-level stationary points of
/// omega_k (interior extrema and the two ends) as diagnostics.
inline QuasienergySpectrum quasienergy_spectrum(const DriveParams& params, std::span<const double> k_grid) {
  QuasienergySpectrum q;
  q.period = params.period();
  q.k.assign(k_grid.begin(), k_grid.end());
  q.omega.resize(k_grid.size());
  for (std::size_t i = 0; i < k_grid.size(); ++i) q.omega[i] = omega_k(params, k_grid[i]);
  if (q.omega.empty()) return q;

  double lo = q.omega[0], hi = q.omega[0];
  for (double w : q.omega) {
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  q.spread = hi - lo;

  using Kind = StationaryPoint::Kind;
  q.stationary_points.push_back({q.k.front(), q.omega.front(), Kind::endpoint});
  for (std::size_t i = 1; i + 1 < q.omega.size(); ++i) {
    const double prev = q.omega[i - 1], cur = q.omega[i], next = q.omega[i + 1];
    if (cur < prev && cur <= next) q.stationary_points.push_back({q.k[i], cur, Kind::minimum});
    if (cur > prev && cur >= next) q.stationary_points.push_back({q.k[i], cur, Kind::maximum});
  }
  if (q.omega.size() > 1) q.stationary_points.push_back({q.k.back(), q.omega.back(), Kind::endpoint});
  return q;
}

inline QuasienergySpectrum quasienergy_spectrum(const DriveParams& params, const KGrid& grid) {
  return quasienergy_spectrum(params, grid.nodes());
}

}  // namespace floquet_ising
