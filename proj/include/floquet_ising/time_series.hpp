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

namespace floquet_ising {

/// Uniformly sampled real signal, t_i = t0 + i * dt.
struct TimeSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;
  bool stroboscopic = false;  // dt equals the drive period

  std::size_t size() const { return values.size(); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }

  /// Builds a series from explicit sample times, rejecting non-uniform
  /// spacing (relative tolerance 1e-9 of dt).
  static TimeSeries from_samples(std::span<const double> times, std::span<const double> values,
                                 bool stroboscopic = false) {
    if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
    if (times.size() < 2) throw std::invalid_argument("need at least two samples to infer spacing");
    TimeSeries s;
    s.t0 = times.front();
    s.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(s.dt > 0.0)) throw std::invalid_argument("sample times must be increasing");
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i] - s.time(i)) > 1e-9 * s.dt) {
        throw std::invalid_argument("non-uniform sampling at index " + std::to_string(i));
      }
    }
    s.values.assign(values.begin(), values.end());
    s.stroboscopic = stroboscopic;
    s.validate();
    return s;
  }

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("sample spacing must be positive");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
    }
  }
};

}  // namespace floquet_ising
