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

#include "floquet_ising/mode_algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

namespace floquet_ising {
namespace {

using testing::textbook_theta;
using testing::uniform;
using testing::wrap_half_pi;

TEST(DriveParams, DerivesPFromGammaAndPeriod) {
  const DriveParams d(20.0, 0.1);
  EXPECT_EQ(d.p(), 20.0 * 0.1 / pi);
  const DriveParams e = DriveParams::from_p(20.0, 1.0);
  EXPECT_NEAR(e.period(), pi / 20.0, 1e-16);
  EXPECT_NEAR(e.p(), 1.0, 1e-15);
}

TEST(DriveParams, RejectsNonPositive) {
  EXPECT_THROW(DriveParams(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(DriveParams(1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(DriveParams(NAN, 1.0), std::invalid_argument);
  EXPECT_THROW(DriveParams::from_p(20.0, 0.0), std::invalid_argument);
}

TEST(Dispersion, Examples) {
  EXPECT_DOUBLE_EQ(dispersion(0.0, 0.3), 2.0);
  EXPECT_DOUBLE_EQ(dispersion(0.0, 2.9), 2.0);
  EXPECT_DOUBLE_EQ(dispersion(1.0, 0.0), 4.0);
  EXPECT_NEAR(dispersion(20.0, pi / 2), 2.0 * std::sqrt(401.0), 1e-13);
  EXPECT_NEAR(dispersion(20.0, pi / 2), 40.049969, 1e-6);
}

TEST(Dispersion, MatchesRadicalFormAndIsBoundedBelow) {
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(-50.0, 50.0), k = uniform(1e-6, pi - 1e-6);
    const double direct = 2.0 * std::sqrt(g * g + 1.0 + 2.0 * g * std::cos(k));
    EXPECT_NEAR(dispersion(g, k), direct, 1e-12 * direct + 1e-12);
    EXPECT_GE(dispersion(g, k), 2.0 * std::sin(k) * (1.0 - 1e-15));
  }
}

TEST(Dispersion, ReflectionSymmetry) {
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(-40.0, 40.0), k = uniform(0.0, pi);
    EXPECT_NEAR(dispersion(g, pi - k), dispersion(-g, k), 1e-12);
  }
}

TEST(BogoliubovAngle, Examples) {
  EXPECT_NEAR(bogoliubov_angle(5.0, 1e-12), 0.0, 1e-12);
  EXPECT_NEAR(bogoliubov_angle(0.0, pi / 2), -pi / 4, 1e-15);
  EXPECT_NEAR(bogoliubov_angle(20.0, pi / 2), std::atan(-1.0 / (20.0 + std::sqrt(401.0))), 1e-15);
  EXPECT_NEAR(bogoliubov_angle(20.0, pi / 2), -0.0249792, 1e-7);
}

TEST(BogoliubovAngle, HalfAngleAtZeroField) {
  for (int i = 0; i < 200; ++i) {
    const double k = uniform(1e-3, pi - 1e-3);
    EXPECT_NEAR(bogoliubov_angle(0.0, k), -k / 2, 1e-14);
  }
}

TEST(BogoliubovAngle, AgreesWithTextbookFormWhereWellConditioned) {
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(-30.0, 30.0), k = uniform(0.05, pi - 0.05);
    EXPECT_NEAR(bogoliubov_angle(g, k), textbook_theta(g, k), 1e-10);
  }
}

TEST(BogoliubovAngle, SolvesTheEigenproblem) {
  // The ground vector (cos t, -sin t) on (|1>, |0>) with the i absorbed has
  // -(G + cos k) cos t + sin k sin t = -r cos t.
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(-30.0, 30.0), k = uniform(1e-4, pi - 1e-4);
    const double t = bogoliubov_angle(g, k);
    const double r = dispersion(g, k) / 2;
    EXPECT_NEAR(-(g + std::cos(k)) * std::cos(t) + std::sin(k) * std::sin(t), -r * std::cos(t), 1e-11 * (1.0 + r));
  }
}

TEST(BogoliubovAngle, RangeAndContinuityNearSingularPoint) {
  const double g0 = 20.0;
  double prev = bogoliubov_angle(-g0, 1e-9);
  EXPECT_NEAR(prev, -pi / 2, 1e-9);
  for (int i = 1; i <= 20000; ++i) {
    const double k = 1e-9 + (pi - 2e-9) * i / 20000.0;
    const double t = bogoliubov_angle(-g0, k);
    ASSERT_TRUE(std::isfinite(t));
    EXPECT_LE(t, 0.0);
    EXPECT_GT(t, -pi / 2 - 1e-15);
    EXPECT_LT(std::abs(t - prev), 1e-3);
    prev = t;
  }
  EXPECT_EQ(bogoliubov_angle(-g0, 0.0), -pi / 2);
}

TEST(ModeGeometry, OffResonanceExample) {
  const ModeGeometry g = mode_geometry(DriveParams(20.0, 0.1), pi / 2);
  EXPECT_NEAR(g.mu1, 0.05 * 2.0 * std::sqrt(401.0), 1e-14);
  EXPECT_NEAR(g.mu2, g.mu1, 1e-13);
  EXPECT_NEAR(g.mu1, 2.0024984, 1e-7);
  const double theta2 = std::atan(-1.0 / (-20.0 + std::sqrt(401.0)));
  EXPECT_NEAR(g.phi, std::atan(-1.0 / (20.0 + std::sqrt(401.0))) - theta2, 1e-12);
  EXPECT_NEAR(g.phi, 1.5208379, 1e-7);
}

TEST(ModeGeometry, FreezingPointAndSymmetricField) {
  const ModeGeometry g = mode_geometry(DriveParams(20.0, pi / 20.0), pi / 2);
  EXPECT_NEAR(g.mu1, pi * std::sqrt(401.0) / 20.0, 1e-13);
  EXPECT_NEAR(g.mu2, g.mu1, 1e-13);

  const ModeGeometry h = mode_geometry(DriveParams(1.0, 1.0), pi / 2);
  EXPECT_NEAR(h.lambda_plus, 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(h.lambda_minus, 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(h.mu1, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(h.mu2, std::sqrt(2.0), 1e-14);
}

TEST(ModeGeometry, InvariantsOnRandomModes) {
  for (int i = 0; i < 500; ++i) {
    const DriveParams d(uniform(0.1, 50.0), uniform(0.01, 2.0));
    const double k = uniform(1e-6, pi - 1e-6);
    const ModeGeometry g = mode_geometry(d, k);
    EXPECT_NEAR(g.lambda_plus, 2.0 * std::sqrt(d.gamma0() * d.gamma0() + 1 + 2 * d.gamma0() * std::cos(k)),
                1e-12 * g.lambda_plus);
    EXPECT_EQ(g.mu1, 0.5 * d.period() * g.lambda_plus);
    EXPECT_EQ(g.mu2, 0.5 * d.period() * g.lambda_minus);
    EXPECT_EQ(g.phi, g.theta1 - g.theta2);
    EXPECT_TRUE(std::isfinite(g.theta1) && std::isfinite(g.theta2));
  }
}

TEST(LargeGammaExpansion, Examples) {
  EXPECT_NEAR(large_gamma_expansion(DriveParams(20.0, pi / 20.0), pi / 2).u12_magnitude, 0.0, 1e-16);
  const auto e = large_gamma_expansion(DriveParams(20.0, 0.1), pi / 2);
  EXPECT_NEAR(e.phi, -pi / 2 + 0.05, 1e-15);
  EXPECT_NEAR(e.phi, -1.5208, 1e-4);
  const auto f = large_gamma_expansion(DriveParams(100.0, 0.01), pi / 4);
  EXPECT_NEAR(f.u12_magnitude, std::sin(1.0) * 2.0 * (std::sqrt(2.0) / 2.0) / 100.0, 1e-15);
  EXPECT_NEAR(f.u12_magnitude, 0.0119, 1e-4);
}

TEST(LargeGammaExpansion, PhiConvergesAsInverseCube) {
  // The expansion uses the opposite sign convention for theta; the exact
  // principal-branch phi equals minus the expansion modulo pi.
  double prev = 0.0;
  for (double g0 : {50.0, 100.0, 200.0}) {
    const DriveParams d(g0, 0.1);
    double worst = 0.0;
    for (int i = 1; i < 64; ++i) {
      const double k = pi * i / 64.0;
      const double err = std::abs(wrap_half_pi(mode_geometry(d, k).phi + large_gamma_expansion(d, k).phi));
      worst = std::max(worst, err);
    }
    EXPECT_LE(worst * g0 * g0 * g0, 1.0) << "g0 = " << g0;
    if (prev > 0.0) {
      EXPECT_NEAR(prev / worst, 8.0, 0.5);
    }
    prev = worst;
  }
}

TEST(LargeGammaExpansion, Mu2ConvergesAsInverseFirstPower) {
  double prev = 0.0;
  for (double g0 : {50.0, 100.0, 200.0}) {
    const double period = 0.3;
    const DriveParams d(g0, period);
    double worst = 0.0;
    for (int i = 1; i < 64; ++i) {
      const double k = pi * i / 64.0;
      worst = std::max(worst, std::abs(mode_geometry(d, k).mu2 - large_gamma_expansion(d, k).mu2));
    }
    EXPECT_LE(worst, 0.5 * period / g0);
    if (prev > 0.0) {
      EXPECT_NEAR(prev / worst, 2.0, 0.05);
    }
    prev = worst;
  }
}

}  // namespace
}  // namespace floquet_ising
