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

// Brute-force reference: the full 2^N state vector of the periodic chain
//
//   H = - sum_j X_j X_{j+1} - G sum_j Z_j,   X, Z Pauli,
//
// propagated exactly through each constant-field half cycle by the
// eigendecompositions of H(+G0) and H(-G0).
//
// Basis index bit j set means site j points down (Z_j = -1).

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_ising/errors.hpp"
#include "floquet_ising/kgrid.hpp"
#include "floquet_ising/mode_algebra.hpp"
#include "floquet_ising/propagator.hpp"
#include "floquet_ising/time_series.hpp"

namespace floquet_ising::oracle {

inline constexpr int kMaxSites = 12;

struct DenseState {
  Eigen::VectorXcd amplitudes;
  int n_sites = 0;
};

inline void check_sites(int n_sites) {
  if (n_sites < 2 || n_sites > kMaxSites || n_sites % 2 != 0) {
    throw std::invalid_argument("dense oracle needs an even chain length in [2, " + std::to_string(kMaxSites) +
                                "], got " + std::to_string(n_sites));
  }
}

/// Real symmetric (hence Hermitian) Hamiltonian with periodic boundary.
inline Eigen::MatrixXd build_hamiltonian(int n_sites, double gamma) {
  check_sites(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const auto ib = static_cast<Eigen::Index>(b);
    const int down = std::popcount(b);
    h(ib, ib) = -gamma * static_cast<double>(n_sites - 2 * down);
    for (int j = 0; j < n_sites; ++j) {
      const std::size_t flipped = b ^ (std::size_t{1} << j) ^ (std::size_t{1} << ((j + 1) % n_sites));
      h(static_cast<Eigen::Index>(flipped), ib) -= 1.0;
    }
  }
  return h;
}

inline double norm(const DenseState& s) { return s.amplitudes.norm(); }

/// (1/N) sum_j <Z_j>.
inline double magnetization(const DenseState& s) {
  double acc = 0.0;
  for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b) {
    const int down = std::popcount(static_cast<std::size_t>(b));
    acc += std::norm(s.amplitudes[b]) * static_cast<double>(s.n_sites - 2 * down);
  }
  return acc / static_cast<double>(s.n_sites);
}

/// <prod_j Z_j>.
inline double parity(const DenseState& s) {
  double acc = 0.0;
  for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b) {
    const int down = std::popcount(static_cast<std::size_t>(b));
    acc += (down % 2 == 0 ? 1.0 : -1.0) * std::norm(s.amplitudes[b]);
  }
  return acc;
}

inline double energy(const DenseState& s, const Eigen::MatrixXd& h) {
  const Eigen::VectorXd re = s.amplitudes.real(), im = s.amplitudes.imag();
  return re.dot(h * re) + im.dot(h * im);
}

inline constexpr double kGroundGapTolerance = 1e-10;

inline DenseState ground_state(int n_sites, double gamma0) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(build_hamiltonian(n_sites, gamma0));
  const auto& e = eig.eigenvalues();
  if (e.size() > 1 && e[1] - e[0] < kGroundGapTolerance) {
    throw DegenerateError("ground level is degenerate (gap " + std::to_string(e[1] - e[0]) + ")");
  }
  DenseState s;
  s.n_sites = n_sites;
  s.amplitudes = eig.eigenvectors().col(0).cast<std::complex<double>>();
  s.amplitudes.normalize();
  if (parity(s) < 1.0 - 1e-10) throw DegenerateError("ground state is not in the even-parity sector");
  return s;
}

enum class DriveProtocol {
  square_wave,     // +G0 then -G0 in each cycle
  constant_field,  // +G0 throughout
};

/// Exact propagation through the two constant-field pieces of a cycle.
class PiecewiseEvolver {
 public:
  PiecewiseEvolver(int n_sites, const DriveParams& params, DriveProtocol protocol = DriveProtocol::square_wave)
      : n_sites_(n_sites), params_(params) {
    check_sites(n_sites);
    plus_.compute(build_hamiltonian(n_sites, params.gamma0()));
    if (protocol == DriveProtocol::square_wave) {
      minus_.compute(build_hamiltonian(n_sites, -params.gamma0()));
    } else {
      minus_ = plus_;
    }
  }

  int n_sites() const { return n_sites_; }
  const DriveParams& params() const { return params_; }

  /// psi <- exp(-i H tau) psi for the field of the given half. Negative tau
  /// runs time backwards.
  void apply(Eigen::VectorXcd& psi, bool second_half, double tau) const {
    const auto& eig = second_half ? minus_ : plus_;
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const Eigen::VectorXd re = psi.real(), im = psi.imag();
    const Eigen::VectorXd c_re = v.transpose() * re;
    const Eigen::VectorXd c_im = v.transpose() * im;
    Eigen::VectorXd d_re(c_re.size()), d_im(c_re.size());
    for (Eigen::Index i = 0; i < c_re.size(); ++i) {
      const std::complex<double> c = std::complex<double>(c_re[i], c_im[i]) *
                                     std::polar(1.0, -eig.eigenvalues()[i] * tau);
      d_re[i] = c.real();
      d_im[i] = c.imag();
    }
    psi.real() = v * d_re;
    psi.imag() = v * d_im;
  }

  /// One full cycle.
  void apply_cycle(Eigen::VectorXcd& psi) const {
    apply(psi, false, params_.half_period());
    apply(psi, true, params_.half_period());
  }

 private:
  int n_sites_;
  DriveParams params_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> plus_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> minus_;
};

/// M_z sampled at t = i T / samples_per_cycle, same grid as time_series().
inline TimeSeries evolve_piecewise(const PiecewiseEvolver& evolver, const DenseState& state, std::size_t n_cycles,
                                   std::size_t samples_per_cycle) {
  if (n_cycles < 1 || samples_per_cycle < 1) throw std::invalid_argument("need at least one cycle and one sample");
  if (state.n_sites != evolver.n_sites()) throw std::invalid_argument("state and evolver differ in chain length");
  const double period = evolver.params().period();

  TimeSeries out;
  out.dt = period / static_cast<double>(samples_per_cycle);
  out.stroboscopic = samples_per_cycle == 1;
  out.values.reserve(n_cycles * samples_per_cycle);

  DenseState cur = state;
  DenseState probe = state;
  for (std::size_t n = 0; n < n_cycles; ++n) {
    Eigen::VectorXcd mid = cur.amplitudes;
    evolver.apply(mid, false, 0.5 * period);
    for (std::size_t s = 0; s < samples_per_cycle; ++s) {
      const CyclePhase ph = sample_phase(s, samples_per_cycle, period);
      probe.amplitudes = ph.second_half ? mid : cur.amplitudes;
      if (ph.tau != 0.0) evolver.apply(probe.amplitudes, ph.second_half, ph.tau);
      out.values.push_back(magnetization(probe));
    }
    cur.amplitudes = mid;
    evolver.apply(cur.amplitudes, true, 0.5 * period);
  }
  return out;
}

inline TimeSeries evolve_piecewise(const DenseState& state, const DriveParams& params, std::size_t n_cycles,
                                   std::size_t samples_per_cycle,
                                   DriveProtocol protocol = DriveProtocol::square_wave) {
  return evolve_piecewise(PiecewiseEvolver(state.n_sites, params, protocol), state, n_cycles, samples_per_cycle);
}

inline constexpr double kCompareThreshold = 1e-8;

struct ComparisonReport {
  double gamma0 = 0.0;
  double period = 0.0;
  int n_sites = 0;
  std::size_t n_cycles = 0;
  std::size_t samples_per_cycle = 1;
  double max_abs_deviation = 0.0;
  double threshold = kCompareThreshold;
  bool pass = false;
  TimeSeries free_fermion;
  TimeSeries dense;
};

/// Free-fermion M_z on the chain's own momentum grid against the dense
/// evolution, from the +G0 ground state.
inline ComparisonReport compare(const DriveParams& params, int n_sites, std::size_t n_cycles,
                                std::size_t samples_per_cycle = 1) {
  check_sites(n_sites);
  ComparisonReport r;
  r.gamma0 = params.gamma0();
  r.period = params.period();
  r.n_sites = n_sites;
  r.n_cycles = n_cycles;
  r.samples_per_cycle = samples_per_cycle;
  r.free_fermion = time_series(params, n_cycles, samples_per_cycle, KGrid::finite_chain(static_cast<std::size_t>(n_sites)));
  r.dense = evolve_piecewise(ground_state(n_sites, params.gamma0()), params, n_cycles, samples_per_cycle);
  for (std::size_t i = 0; i < r.dense.size(); ++i) {
    r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(r.dense.values[i] - r.free_fermion.values[i]));
  }
  r.pass = r.max_abs_deviation <= r.threshold;
  return r;
}

}  // namespace floquet_ising::oracle
