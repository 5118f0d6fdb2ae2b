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

// Exact per-mode evolution under the square-wave drive.
//
// Amplitudes (x_minus, x_plus) live on the instantaneous eigenbasis
// {|(G,k)->, |(G,k)+>} of the half-cycle currently in force. A full cycle maps
// the +G0 amplitudes by
//
//   U = R(phi) P(mu2) R(-phi) P(mu1),   P(mu) = diag(e^{i mu}, e^{-i mu}),
//
// with R the real rotation by phi. U is in SU(2), so its eigenphases are
// +-omega with cos(omega) = Re tr(U) / 2, and U^n = a_n 1 + b_n U with
// b_n = sin(n omega) / sin(omega), a_n = -b_{n-1}.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "floquet_ising/kgrid.hpp"
#include "floquet_ising/mode_algebra.hpp"
#include "floquet_ising/parallel.hpp"
#include "floquet_ising/time_series.hpp"

namespace floquet_ising {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// Below this sin(omega) the Chebyshev ratio is replaced by its limit.
inline constexpr double kDegenerateSinOmega = 1e-8;

struct Amplitudes {
  cplx x_minus{1.0, 0.0};
  cplx x_plus{0.0, 0.0};

  double norm_sq() const { return std::norm(x_minus) + std::norm(x_plus); }
};

/// Ground state of the +G0 mode Hamiltonian.
inline constexpr Amplitudes kGroundState{};

struct CycleMap {
  Mat2 u = Mat2::Identity();
  double trace_half = 1.0;  // cos(omega)
  double sin_omega = 0.0;
  double omega = 0.0;       // in [0, pi]
};

inline Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

inline Mat2 phase_matrix(double mu) {
  Mat2 p = Mat2::Zero();
  p(0, 0) = std::polar(1.0, mu);
  p(1, 1) = std::polar(1.0, -mu);
  return p;
}

inline CycleMap cycle_map(const ModeGeometry& g) {
  CycleMap m;
  m.u = rotation(g.phi) * phase_matrix(g.mu2) * rotation(-g.phi) * phase_matrix(g.mu1);
  m.trace_half = 0.5 * (m.u(0, 0) + m.u(1, 1)).real();
  // For U in SU(2), sin^2(omega) = (Im u11)^2 + |u12|^2; this stays accurate
  // where acos(trace_half) would lose half the digits.
  const double im_diag = 0.5 * (m.u(0, 0).imag() - m.u(1, 1).imag());
  const double off = 0.5 * (std::norm(m.u(0, 1)) + std::norm(m.u(1, 0)));
  m.sin_omega = std::sqrt(im_diag * im_diag + off);
  m.omega = std::atan2(m.sin_omega, m.trace_half);
  return m;
}

/// cos(omega) in closed form from the mode geometry, independent of U.
inline double cos_omega_closed_form(const ModeGeometry& g) {
  const double c = std::cos(g.phi), s = std::sin(g.phi);
  return std::cos(g.mu1 + g.mu2) * c * c + std::cos(g.mu1 - g.mu2) * s * s;
}

struct ChebyshevCoefficients {
  double a = 1.0;
  double b = 0.0;
};

/// b_n = U_{n-1}(cos omega) = sin(n omega) / sin(omega), continued to
/// +-n at the degenerate points omega = 0, pi.
inline double chebyshev_b(const CycleMap& m, std::uint64_t n) {
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  if (m.sin_omega < kDegenerateSinOmega) {
    if (m.trace_half > 0.0) return nd;
    return (n % 2 == 1) ? nd : -nd;
  }
  return std::sin(nd * m.omega) / m.sin_omega;
}

inline ChebyshevCoefficients chebyshev_coefficients(const CycleMap& m, std::uint64_t n) {
  if (n == 0) return {1.0, 0.0};
  return {-chebyshev_b(m, n - 1), chebyshev_b(m, n)};
}

/// U^n via the Chebyshev identity. Evaluated in the split form
/// cos(n omega) 1 + b_n (U - cos(omega) 1), which equals a_n 1 + b_n U and
/// keeps the unitarity error at rounding level for any n.
inline Mat2 cheb_power(const CycleMap& m, std::uint64_t n) {
  if (n == 0) return Mat2::Identity();
  const double b = chebyshev_b(m, n);
  const double cn = std::cos(static_cast<double>(n) * m.omega);
  Mat2 out = b * m.u;
  out(0, 0) += cn - b * m.trace_half;
  out(1, 1) += cn - b * m.trace_half;
  return out;
}

/// Position inside a drive cycle: which half, and time tau since that half
/// began.
struct CyclePhase {
  bool second_half = false;
  double tau = 0.0;
};

/// Everything needed to evolve one momentum mode, computed once.
class ModePropagator {
 public:
  ModePropagator(const DriveParams& params, double k)
      : period_(params.period()), geom_(mode_geometry(params, k)), map_(cycle_map(geom_)) {
    cos_t1_ = std::cos(geom_.theta1);
    sin_t1_ = std::sin(geom_.theta1);
    cos_t2_ = std::cos(geom_.theta2);
    sin_t2_ = std::sin(geom_.theta2);
    cos_phi_ = std::cos(geom_.phi);
    sin_phi_ = std::sin(geom_.phi);
    e_mu1_ = std::polar(1.0, geom_.mu1);
  }

  const ModeGeometry& geometry() const { return geom_; }
  const CycleMap& map() const { return map_; }
  double period() const { return period_; }

  /// U^n x.
  Amplitudes after_cycles(const Amplitudes& x, std::uint64_t n) const {
    if (n == 0) return x;
    const double b = chebyshev_b(map_, n);
    const double cn = std::cos(static_cast<double>(n) * map_.omega);
    const auto& u = map_.u;
    const cplx d0 = u(0, 0) - map_.trace_half;
    const cplx d1 = u(1, 1) - map_.trace_half;
    return {cn * x.x_minus + b * (d0 * x.x_minus + u(0, 1) * x.x_plus),
            cn * x.x_plus + b * (u(1, 0) * x.x_minus + d1 * x.x_plus)};
  }

  /// e^{i lambda tau} for the half-cycle in force.
  cplx phase_factor(const CyclePhase& ph) const {
    const double lambda = ph.second_half ? geom_.lambda_minus : geom_.lambda_plus;
    return std::polar(1.0, lambda * ph.tau);
  }

  /// Amplitudes a time ph into the cycle, given amplitudes at its start.
  /// `phase` must equal phase_factor(ph).
  Amplitudes within_cycle(const Amplitudes& x, const CyclePhase& ph, cplx phase) const {
    if (!ph.second_half) {
      return {phase * x.x_minus, std::conj(phase) * x.x_plus};
    }
    // Full first half, then change of basis +G0 -> -G0.
    const cplx m = e_mu1_ * x.x_minus;
    const cplx p = std::conj(e_mu1_) * x.x_plus;
    const cplx w_minus = cos_phi_ * m + sin_phi_ * p;
    const cplx w_plus = -sin_phi_ * m + cos_phi_ * p;
    return {phase * w_minus, std::conj(phase) * w_plus};
  }

  /// Occupation of the |1>_k pair in the instantaneous basis.
  double occupation(const Amplitudes& x, bool second_half) const {
    const double c = second_half ? cos_t2_ : cos_t1_;
    const double s = second_half ? sin_t2_ : sin_t1_;
    return std::norm(x.x_minus * c + x.x_plus * s);
  }

  Amplitudes evolve(const Amplitudes& initial, std::uint64_t cycles, const CyclePhase& ph) const {
    return within_cycle(after_cycles(initial, cycles), ph, phase_factor(ph));
  }

 private:
  double period_;
  ModeGeometry geom_;
  CycleMap map_;
  double cos_t1_, sin_t1_, cos_t2_, sin_t2_, cos_phi_, sin_phi_;
  cplx e_mu1_;
};

/// Splits t >= 0 into whole cycles and a position inside the current cycle.
struct CycleTime {
  std::uint64_t cycles = 0;
  CyclePhase phase;
};

inline CycleTime split_time(double t, double period) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and non-negative");
  CycleTime ct;
  double n = std::floor(t / period);
  double r = t - n * period;
  if (r < 0.0) {
    n -= 1.0;
    r += period;
  } else if (r >= period) {
    n += 1.0;
    r -= period;
  }
  ct.cycles = static_cast<std::uint64_t>(n);
  if (r < 0.5 * period) {
    ct.phase = {false, r};
  } else {
    ct.phase = {true, r - 0.5 * period};
  }
  return ct;
}

/// Sample s of a cycle split into `samples_per_cycle` equal steps.
inline CyclePhase sample_phase(std::size_t s, std::size_t samples_per_cycle, double period) {
  const auto s2 = 2 * s;
  const double step = period / (2.0 * static_cast<double>(samples_per_cycle));
  if (s2 < samples_per_cycle) return {false, static_cast<double>(s2) * step};
  return {true, static_cast<double>(s2 - samples_per_cycle) * step};
}

/// Amplitudes at time t. `initial` is expressed on the +G0 eigenbasis at
/// t = 0; the result is on the eigenbasis of the half-cycle in force at t.
inline Amplitudes evolve(const DriveParams& params, double k, const Amplitudes& initial, double t) {
  const CycleTime ct = split_time(t, params.period());
  return ModePropagator(params, k).evolve(initial, ct.cycles, ct.phase);
}

/// True when t falls in the -G0 half of its cycle.
inline bool in_second_half(const DriveParams& params, double t) {
  return split_time(t, params.period()).phase.second_half;
}

/// M_k = |x_- cos(theta_j) + x_+ sin(theta_j)|^2.
inline double mode_magnetization(const Amplitudes& amps, double theta_j) {
  return std::norm(amps.x_minus * std::cos(theta_j) + amps.x_plus * std::sin(theta_j));
}

/// Transverse magnetisation per site at time t, starting from the +G0
/// ground state.
inline double magnetization(const DriveParams& params, double t, const KGrid& grid) {
  grid.require_quadrature_resolution();
  const CycleTime ct = split_time(t, params.period());
  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ModePropagator mode(params, nodes[i]);
    const Amplitudes x = mode.evolve(kGroundState, ct.cycles, ct.phase);
    terms[i] = weights[i] * mode.occupation(x, ct.phase.second_half);
  }
  return -1.0 + pairwise_sum(terms);
}

/// M_z sampled at t = i T / samples_per_cycle for i < n_cycles * samples_per_cycle.
inline TimeSeries time_series(const DriveParams& params, std::size_t n_cycles, std::size_t samples_per_cycle,
                              const KGrid& grid) {
  if (n_cycles < 1) throw std::invalid_argument("n_cycles must be >= 1");
  if (samples_per_cycle < 1) throw std::invalid_argument("samples_per_cycle must be >= 1");
  grid.require_quadrature_resolution();

  const auto nodes = grid.nodes();
  const auto weights = grid.weights();
  const std::size_t modes = nodes.size();

  std::vector<ModePropagator> props;
  props.reserve(modes);
  for (double k : nodes) props.emplace_back(params, k);

  std::vector<CyclePhase> phases(samples_per_cycle);
  std::vector<cplx> phase_table(samples_per_cycle * modes);
  for (std::size_t s = 0; s < samples_per_cycle; ++s) {
    phases[s] = sample_phase(s, samples_per_cycle, params.period());
    for (std::size_t i = 0; i < modes; ++i) phase_table[s * modes + i] = props[i].phase_factor(phases[s]);
  }

  TimeSeries out;
  out.t0 = 0.0;
  out.dt = params.period() / static_cast<double>(samples_per_cycle);
  out.stroboscopic = samples_per_cycle == 1;
  out.values.resize(n_cycles * samples_per_cycle);

  parallel_for(n_cycles, [&](std::size_t begin, std::size_t end) {
    std::vector<double> terms(samples_per_cycle * modes);
    for (std::size_t n = begin; n < end; ++n) {
      for (std::size_t i = 0; i < modes; ++i) {
        const Amplitudes xn = props[i].after_cycles(kGroundState, n);
        for (std::size_t s = 0; s < samples_per_cycle; ++s) {
          const Amplitudes x = props[i].within_cycle(xn, phases[s], phase_table[s * modes + i]);
          terms[s * modes + i] = weights[i] * props[i].occupation(x, phases[s].second_half);
        }
      }
      for (std::size_t s = 0; s < samples_per_cycle; ++s) {
        out.values[n * samples_per_cycle + s] =
            -1.0 + pairwise_sum(std::span<const double>(terms).subspan(s * modes, modes));
      }
    }
  });
  return out;
}

}  // namespace floquet_ising
