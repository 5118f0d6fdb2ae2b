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

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_ising/mode_algebra.hpp"

namespace floquet_ising {

/// Momentum grid on (0, pi) with weights normalised so that a per-site
/// quantity is  -1 + sum_i weights[i] * M(k_i).
///
/// finite_chain(N) is the exact even-parity sector of an N-site periodic chain:
/// antiperiodic fermion momenta k = (2j+1) pi / N, j < N/2, each weighted 4/N.
/// midpoint(m) is the same rule with m nodes, read as a quadrature of
/// (2/pi) int_0^pi dk. gauss_legendre(m) maps the m-point rule onto (0, pi).
class KGrid {
 public:
  enum class Kind { finite_chain, midpoint, gauss_legendre };

  static constexpr std::size_t kMinQuadratureNodes = 8;
  static constexpr std::size_t kDefaultModes = 4096;

  static KGrid finite_chain(std::size_t n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0) {
      throw std::invalid_argument("chain length must be even and >= 2, got " + std::to_string(n_sites));
    }
    KGrid g(Kind::finite_chain);
    fill_midpoint(g, n_sites / 2);
    return g;
  }

  static KGrid midpoint(std::size_t modes = kDefaultModes) {
    check_nodes(modes);
    KGrid g(Kind::midpoint);
    fill_midpoint(g, modes);
    return g;
  }

  static KGrid gauss_legendre(std::size_t nodes) {
    check_nodes(nodes);
    KGrid g(Kind::gauss_legendre);
    g.nodes_.resize(nodes);
    g.weights_.resize(nodes);
    // Newton iteration on P_n from the Chebyshev initial guess; nodes are
    // symmetric so only half are solved.
    const std::size_t half = (nodes + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
      double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(nodes) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (std::size_t j = 2; j <= nodes; ++j) {
          const double jd = static_cast<double>(j);
          const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(nodes) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      // (0, pi) <- [-1, 1]: k = pi (1 + x) / 2; (2/pi) dk = dx.
      g.nodes_[i] = 0.5 * pi * (1.0 - x);
      g.nodes_[nodes - 1 - i] = 0.5 * pi * (1.0 + x);
      g.weights_[i] = w;
      g.weights_[nodes - 1 - i] = w;
    }
    return g;
  }

  Kind kind() const { return kind_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Rejects continuum quadratures that are too coarse. Finite chains are
  /// exact for their own size and are always accepted.
  void require_quadrature_resolution() const {
    if (kind_ != Kind::finite_chain && size() < kMinQuadratureNodes) check_nodes(size());
  }

 private:
  explicit KGrid(Kind kind) : kind_(kind) {}

  static void check_nodes(std::size_t n) {
    if (n < kMinQuadratureNodes) {
      throw std::invalid_argument("quadrature needs at least " + std::to_string(kMinQuadratureNodes) +
                                  " nodes, got " + std::to_string(n));
    }
  }

  static void fill_midpoint(KGrid& g, std::size_t modes) {
    const double n_sites = 2.0 * static_cast<double>(modes);
    g.nodes_.resize(modes);
    g.weights_.assign(modes, 4.0 / n_sites);
    for (std::size_t j = 0; j < modes; ++j) {
      g.nodes_[j] = (2.0 * static_cast<double>(j) + 1.0) * pi / n_sites;
    }
  }

  Kind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace floquet_ising
