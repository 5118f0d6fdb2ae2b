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

#include "floquet_ising/closed_form.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"

namespace floquet_ising {
namespace {

using testing::uniform;

// Direct propagation, independent of the envelope algebra.
double propagated_mk(const DriveParams& d, double k, std::uint64_t n) {
  const ModePropagator mode(d, k);
  return mode_magnetization(mode.after_cycles(kGroundState, n), mode.geometry().theta1);
}

// Brute-force U^n (1, 0) read out on theta1, for synthetic geometries.
double brute_mk(const ModeGeometry& g, int n) {
  const Mat2 u = cycle_map(g).u;
  Eigen::Vector2cd x(1.0, 0.0);
  for (int i = 0; i < n; ++i) x = u * x;
  return std::norm(x[0] * std::cos(g.theta1) + x[1] * std::sin(g.theta1));
}

double argmax_q(double gamma0, double p_center, double half_width, double step) {
  double best = -INFINITY, best_p = p_center;
  for (double p = p_center - half_width; p <= p_center + half_width + 1e-12; p += step) {
    const double q = q_factor(DriveParams::from_p(gamma0, p), KGrid::midpoint(1024));
    if (q > best) {
      best = q;
      best_p = p;
    }
  }
  return best_p;
}

TEST(ModeEnvelope, OffResonanceExample) {
  const ModeEnvelope e = mode_envelope(DriveParams(20.0, 0.1), pi / 2);
  EXPECT_NEAR(e.omega_k, cycle_map(mode_geometry(DriveParams(20.0, 0.1), pi / 2)).omega, 1e-13);
  EXPECT_NEAR(e.omega_k, 0.0907447, 2e-6);
}

TEST(ModeEnvelope, BoundsAndCouplingOnRandomModes) {
  for (int i = 0; i < 1000; ++i) {
    const DriveParams d(uniform(0.2, 60.0), uniform(0.005, 3.0));
    const double k = uniform(1e-3, pi - 1e-3);
    const ModeEnvelope e = mode_envelope(d, k);
    EXPECT_GE(e.r_k, 0.0);
    EXPECT_GE(e.a_k - e.r_k, -1e-9);
    EXPECT_LE(e.a_k + e.r_k, 1.0 + 1e-9);
    EXPECT_GT(e.delta_k, -pi);
    EXPECT_LE(e.delta_k, pi);
    EXPECT_GE(e.omega_k, 0.0);
    EXPECT_LE(e.omega_k, pi);
    const CycleMap m = cycle_map(mode_geometry(d, k));
    if (m.sin_omega > 1e-3) {
      const double s = std::sin(e.omega_k);
      EXPECT_NEAR(std::abs(e.g_k) * 2.0 * s * s, std::abs(m.u(0, 1)), 1e-10);
    }
  }
}

TEST(ModeEnvelope, DecoupledModeIsConstant) {
  ModeGeometry g;
  g.theta1 = -0.3;
  g.theta2 = -0.3;
  g.phi = 0.0;
  g.mu1 = 0.8;
  g.mu2 = 1.1;
  const ModeEnvelope e = mode_envelope(g);
  EXPECT_EQ(e.g_k, 0.0);
  EXPECT_EQ(e.r_k, 0.0);
  EXPECT_NEAR(e.a_k, std::pow(std::cos(-0.3), 2), 1e-15);
  EXPECT_NEAR(e.omega_k, 1.9, 1e-14);
}

TEST(ModeEnvelope, GaugeInvariance) {
  for (int i = 0; i < 200; ++i) {
    const ModeGeometry g = mode_geometry(DriveParams(uniform(1.0, 40.0), uniform(0.01, 1.0)), uniform(0.01, pi - 0.01));
    ModeGeometry shifted = g;
    shifted.theta2 += pi;
    shifted.phi -= pi;
    ModeGeometry mirrored = g;
    mirrored.theta1 = -g.theta1;
    mirrored.theta2 = -g.theta2;
    mirrored.phi = -g.phi;
    const ModeEnvelope e = mode_envelope(g);
    for (const ModeGeometry& h : {shifted, mirrored}) {
      const ModeEnvelope f = mode_envelope(h);
      EXPECT_NEAR(f.a_k, e.a_k, 1e-12);
      EXPECT_NEAR(f.r_k, e.r_k, 1e-12);
      EXPECT_NEAR(f.omega_k, e.omega_k, 1e-12);
      for (int n : {0, 1, 5, 40}) {
        EXPECT_NEAR(stroboscopic_mk(f, n), stroboscopic_mk(e, n), 1e-12);
        EXPECT_NEAR(brute_mk(h, n), brute_mk(g, n), 1e-12);
      }
    }
  }
}

TEST(ModeEnvelope, FlatAtFreezingPeak) {
  for (double g0 : {20.0, 40.0, 80.0}) {
    const DriveParams d = DriveParams::from_p(g0, 1.0);
    const KGrid grid = KGrid::midpoint(256);
    double worst = 0.0;
    for (double k : grid.nodes()) worst = std::max(worst, mode_envelope(d, k).r_k);
    EXPECT_LE(worst, 2.0 / g0) << g0;
  }
}

TEST(StroboscopicMk, InitialValueIsGroundStateOccupation) {
  for (int i = 0; i < 500; ++i) {
    const DriveParams d(uniform(0.2, 60.0), uniform(0.005, 3.0));
    const double k = uniform(1e-3, pi - 1e-3);
    EXPECT_NEAR(stroboscopic_mk(d, k, 0), std::pow(std::cos(mode_geometry(d, k).theta1), 2), 1e-10);
  }
}

TEST(StroboscopicMk, MatchesPropagatorExample) {
  const DriveParams d(20.0, 0.1);
  EXPECT_NEAR(stroboscopic_mk(d, 1.0, 137), propagated_mk(d, 1.0, 137), 1e-10);
}

TEST(StroboscopicMk, MatchesPropagatorOnRandomCases) {
  for (int i = 0; i < 200; ++i) {
    const DriveParams d(uniform(1.0, 40.0), uniform(0.01, 1.0));
    const double k = uniform(0.0, pi);
    const auto n = static_cast<std::uint64_t>(uniform(0.0, 1000.0));
    EXPECT_NEAR(stroboscopic_mk(d, k, n), propagated_mk(d, k, n), 1e-10) << d.gamma0() << " " << d.period() << " " << k;
  }
}

TEST(StroboscopicMk, FrozenAtFreezingPeak) {
  const DriveParams d(20.0, pi / 20.0);
  const double c2 = std::pow(std::cos(mode_geometry(d, 1.0).theta1), 2);
  EXPECT_NEAR(stroboscopic_mk(d, 1.0, 1000), c2, 2.0 / 20.0);
}

TEST(StroboscopicMk, SyntheticDegenerateModes) {
  for (double total : {2 * pi, 2 * pi + 1e-10, pi}) {
    ModeGeometry g;
    g.theta1 = -0.2;
    g.theta2 = -1.3;
    g.phi = 1.1;
    g.mu1 = 0.5 * total;
    g.mu2 = 0.5 * total;
    for (int n : {0, 1, 2, 9}) EXPECT_NEAR(stroboscopic_mk(mode_envelope(g), n), brute_mk(g, n), 1e-9);
  }
}

TEST(QFactor, FreezingPeakAndOffPeak) {
  const KGrid grid = KGrid::midpoint();
  const double peak = q_factor(DriveParams(20.0, pi / 20.0), grid);
  const double m0 = magnetization(DriveParams(20.0, pi / 20.0), 0.0, grid);
  EXPECT_GT(peak, 0.95);
  EXPECT_NEAR(peak, m0, 1.0 / 20.0);
  EXPECT_LT(q_factor(DriveParams(20.0, 0.1), grid), peak);
}

TEST(QFactor, ScanMaximaAtIntegerP) {
  const KGrid grid = KGrid::midpoint(1024);
  std::vector<double> p, q;
  for (int i = 0; i <= 300; ++i) {
    p.push_back(0.5 + 0.01 * i);
    q.push_back(q_factor(DriveParams::from_p(20.0, p.back()), grid));
  }
  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (q[i] > q[i - 1] && q[i] >= q[i + 1]) maxima.push_back(p[i]);
  }
  ASSERT_EQ(maxima.size(), 3u);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(maxima[j], j + 1.0, 0.02);
}

TEST(QFactor, PeaksSharpenWithField) {
  for (double p0 : {1.0, 2.0}) {
    double prev = INFINITY;
    for (double g0 : {10.0, 20.0, 40.0}) {
      const double err = std::abs(argmax_q(g0, p0, 0.03, 1e-4) - p0);
      EXPECT_LT(err, prev) << g0;
      EXPECT_LT(err, 1.0 / g0);
      prev = err;
    }
  }
}

TEST(QFactor, MatchesLongRunAverage) {
  const KGrid grid = KGrid::midpoint(1024);
  for (const DriveParams& d : {DriveParams(20.0, 0.1), DriveParams(3.0, 0.5), DriveParams(20.0, pi / 20.0)}) {
    const TimeSeries s = time_series(d, 10000, 1, grid);
    double mean = 0.0;
    for (double v : s.values) mean += v;
    mean /= static_cast<double>(s.size());
    double r_max = 0.0;
    for (double k : grid.nodes()) r_max = std::max(r_max, mode_envelope(d, k).r_k);
    EXPECT_NEAR(mean, q_factor(d, grid), 5.0 * r_max / std::sqrt(1e4));
  }
}

TEST(OmegaQ, HandEvaluation) {
  const SolitaryFrequency w = omega_q(DriveParams(20.0, 0.1));
  EXPECT_NEAR(w.angular, 1.8149, 1e-3);
  EXPECT_NEAR(w.per_cycle, 0.18149, 1e-4);
  EXPECT_DOUBLE_EQ(w.angular, w.per_cycle / 0.1);
  const double c = std::cos(0.2 * std::sqrt(401.0));
  const double phi = testing::textbook_theta(20.0, pi / 2) - testing::textbook_theta(-20.0, pi / 2);
  EXPECT_NEAR(w.per_cycle, 2.0 * std::acos(1.0 - std::pow(std::cos(phi), 2) * (1.0 - c)), 1e-9);
}

TEST(OmegaQ, NearReferenceEstimates) {
  const double w = omega_q(DriveParams(20.0, 0.1)).angular;
  EXPECT_NEAR(w, 1.815, 1e-3);
  EXPECT_NEAR(w, 1.822, 1e-2);
}

TEST(OmegaQ, TwiceTheCentralModeFrequency) {
  for (int i = 0; i < 200; ++i) {
    const DriveParams d(uniform(1.0, 40.0), uniform(0.01, 1.0));
    EXPECT_NEAR(omega_q(d).per_cycle, 2.0 * omega_k(d, pi / 2), 1e-12);
  }
}

TEST(OmegaQ, VanishesAtIntegerPForStrongField) {
  for (double p : {1.0, 2.0, 3.0}) {
    for (double g0 : {50.0, 200.0, 800.0}) {
      EXPECT_LE(omega_q(DriveParams::from_p(g0, p)).per_cycle, 4.0 / g0) << p << " " << g0;
    }
  }
  EXPECT_EQ(omega_q(DriveParams::from_p(20.0, 1.0)).period(), 2.0 * pi / omega_q(DriveParams::from_p(20.0, 1.0)).angular);
}

TEST(Curvature, StationaryAtHalfPiAndMirrorSymmetric) {
  for (int i = 0; i < 200; ++i) {
    const DriveParams d(uniform(1.0, 40.0), uniform(0.01, 1.0));
    const double h = kCurvatureStep;
    EXPECT_LE(std::abs(omega_k(d, pi / 2 + h) - omega_k(d, pi / 2 - h)) / (2 * h), 1e-8);
    // Mirrored stencil: k -> pi - k swaps the +h and -h samples.
    const double f0 = omega_k(d, pi / 2);
    const double f1 = omega_k(d, pi - (pi / 2 + h)) + omega_k(d, pi - (pi / 2 - h));
    const double f2 = omega_k(d, pi - (pi / 2 + 2 * h)) + omega_k(d, pi - (pi / 2 - 2 * h));
    const double mirrored = (-f2 + 16.0 * f1 - 30.0 * f0) / (12.0 * h * h);
    EXPECT_NEAR(omega_curvature(d, pi / 2, h), mirrored, 1e-6 * (1.0 + std::abs(mirrored)));
  }
}

TEST(Asymptote, Fields) {
  const DriveParams d(20.0, 0.1);
  const KGrid grid = KGrid::midpoint();
  const Asymptote a = asymptote(d, grid);
  EXPECT_NEAR(a.m0, q_factor(d, grid), 1e-12);
  EXPECT_NEAR(a.omega_q_cycle, 2.0 * omega_k(d, pi / 2), 1e-12);
  EXPECT_NEAR(a.omega_q_angular, a.omega_q_cycle / 0.1, 1e-12);
  EXPECT_NE(a.c2, 0.0);
  EXPECT_LT(a.c2_richardson_gap, 1e-4 * std::abs(a.c2));
  EXPECT_GT(a.amp, 0.0);
}

TEST(Asymptote, TracksPropagatedResponse) {
  const DriveParams d(20.0, 0.1);
  const KGrid grid = KGrid::midpoint();
  const Asymptote a = asymptote(d, grid);
  const TimeSeries s = time_series(d, 4001, 1, grid);
  const double bound = 3.0 * a.amp / std::sqrt(500.0);
  double prev = INFINITY;
  for (auto [lo, hi] : {std::pair{500, 1000}, std::pair{1000, 2000}, std::pair{2000, 4001}}) {
    double worst = 0.0;
    for (int n = lo; n < hi; ++n) worst = std::max(worst, std::abs(a.evaluate(n) - s.values[static_cast<std::size_t>(n)]));
    EXPECT_LE(worst, bound);
    EXPECT_LT(worst, prev);
    prev = worst;
  }
}

TEST(Asymptote, RejectsFlatDispersion) {
  EXPECT_THROW(asymptote(DriveParams(1.0, 1e-9), KGrid::midpoint(64)), DegenerateError);
}

TEST(QuasienergySpectrum, CollapsesAtFreezingPeak) {
  const KGrid grid = KGrid::midpoint(256);
  const QuasienergySpectrum q20 = quasienergy_spectrum(DriveParams::from_p(20.0, 1.0), grid);
  const QuasienergySpectrum q40 = quasienergy_spectrum(DriveParams::from_p(40.0, 1.0), grid);
  EXPECT_LE(q20.spread, 2.0 * pi / 20.0 + 1e-3);
  EXPECT_NEAR(q40.spread / q20.spread, 0.5, 0.01);
  const QuasienergySpectrum off = quasienergy_spectrum(DriveParams(20.0, 0.1), grid);
  EXPECT_GT(off.spread / off.period, 0.5);
  EXPECT_EQ(q20.k.size(), 256u);
  EXPECT_DOUBLE_EQ(q20.quasienergy(3), q20.omega[3] / q20.period);
}

TEST(QuasienergySpectrum, ReportsStationaryPoints) {
  const QuasienergySpectrum q = quasienergy_spectrum(DriveParams(20.0, 0.1), KGrid::midpoint(256));
  ASSERT_GE(q.stationary_points.size(), 3u);
  EXPECT_EQ(q.stationary_points.front().kind, StationaryPoint::Kind::endpoint);
  EXPECT_EQ(q.stationary_points.back().kind, StationaryPoint::Kind::endpoint);
  bool central = false;
  for (const auto& sp : q.stationary_points) {
    if (sp.kind != StationaryPoint::Kind::endpoint && std::abs(sp.k - pi / 2) < 0.02) central = true;
  }
  EXPECT_TRUE(central);
}

}  // namespace
}  // namespace floquet_ising
