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

// Static single-mode data of the transverse-field Ising chain under a
// square-wave field +G0 / -G0. Units: J = 1, hbar = 1, spins are Pauli
// matrices (eigenvalues +-1).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace floquet_ising {

inline constexpr double pi = std::numbers::pi;

/// Square-wave drive: field +gamma0 on [nT, (n+1/2)T), -gamma0 on
/// [(n+1/2)T, (n+1)T).
class DriveParams {
 public:
  DriveParams(double gamma0, double period) : gamma0_(gamma0), period_(period) {
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
      throw std::invalid_argument("gamma0 must be positive and finite, got " + std::to_string(gamma0));
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw std::invalid_argument("period must be positive and finite, got " + std::to_string(period));
    }
  }

  /// Builds the drive from the dimensionless p = gamma0 * T / pi.
  static DriveParams from_p(double gamma0, double p) {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
    return DriveParams(gamma0, p * pi / gamma0);
  }

  double gamma0() const { return gamma0_; }
  double period() const { return period_; }
  double half_period() const { return 0.5 * period_; }
  double p() const { return gamma0_ * period_ / pi; }

 private:
  double gamma0_;
  double period_;
};

/// Single-particle energy lambda(G, k) = 2 sqrt(G^2 + 1 + 2 G cos k).
/// Evaluated as 2 |(G + cos k, sin k)| so the radicand never cancels.
inline double dispersion(double gamma, double k) {
  return 2.0 * std::hypot(gamma + std::cos(k), std::sin(k));
}

/// Principal-branch Bogoliubov angle, tan(theta) = -sin k / (G + cos k + r)
/// with r = sqrt(G^2 + 1 + 2 G cos k). Always in (-pi/2, 0] since the
/// denominator is non-negative.
///
/// When G + cos k < 0 the denominator suffers cancellation; there the
/// equivalent form (G + cos k - r) / sin k is used instead. Its k -> 0 limit
/// is -pi/2.
inline double bogoliubov_angle(double gamma, double k) {
  const double c = gamma + std::cos(k);
  const double s = std::sin(k);
  const double r = std::hypot(c, s);
  if (c >= 0.0) {
    return std::atan(-s / (c + r));
  }
  if (s == 0.0) return -pi / 2;
  return std::atan((c - r) / s);
}

struct ModeGeometry {
  double k = 0.0;
  double lambda_plus = 0.0;   // lambda(+G0, k)
  double lambda_minus = 0.0;  // lambda(-G0, k)
  double theta1 = 0.0;        // angle at +G0
  double theta2 = 0.0;        // angle at -G0
  double phi = 0.0;           // theta1 - theta2
  double mu1 = 0.0;           // (T/2) lambda_plus
  double mu2 = 0.0;           // (T/2) lambda_minus
};

inline ModeGeometry mode_geometry(const DriveParams& params, double k) {
  ModeGeometry g;
  g.k = k;
  g.lambda_plus = dispersion(params.gamma0(), k);
  g.lambda_minus = dispersion(-params.gamma0(), k);
  g.theta1 = bogoliubov_angle(params.gamma0(), k);
  g.theta2 = bogoliubov_angle(-params.gamma0(), k);
  g.phi = g.theta1 - g.theta2;
  g.mu1 = params.half_period() * g.lambda_plus;
  g.mu2 = params.half_period() * g.lambda_minus;
  return g;
}

/// Leading terms of the strong-field expansion.
///
/// The rotation angle is returned in the sign convention of the expansion,
/// -pi/2 + sin k / G0. The exact principal-branch phi equals its negative
/// modulo pi, which is the theta -> -theta relabelling that leaves every
/// observable unchanged.
struct LargeGammaExpansion {
  double phi = 0.0;
  double mu2 = 0.0;
  double u12_magnitude = 0.0;
};

inline LargeGammaExpansion large_gamma_expansion(const DriveParams& params, double k) {
  const double g0 = params.gamma0();
  const double g0t = g0 * params.period();
  LargeGammaExpansion e;
  e.phi = -pi / 2 + std::sin(k) / g0;
  e.mu2 = g0t * (1.0 - std::cos(k) / g0);
  e.u12_magnitude = std::abs(std::sin(g0t)) * 2.0 * std::sin(k) / g0;
  return e;
}

}  // namespace floquet_ising
