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

// CSV tables. Every file is a single header line of column names followed
// by rows of numbers printed with 17 significant digits, so values survive
// a write/read cycle bit for bit.

#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet_ising/time_series.hpp"

namespace floquet_ising::io {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_header(std::ostream& os, std::initializer_list<const char*> columns) {
  bool first = true;
  for (const char* c : columns) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

inline void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

/// `t,mz` table.
inline void write_series_csv(std::ostream& os, const TimeSeries& s) {
  write_header(os, {"t", "mz"});
  for (std::size_t i = 0; i < s.size(); ++i) write_row(os, {s.time(i), s.values[i]});
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV input");
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (!col.empty() && col.back() == '\r') col.pop_back();
      t.columns.push_back(col);
    }
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != t.columns.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(t.columns.size()) + " columns");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Reads a `t,mz` table back into a uniformly sampled series.
inline TimeSeries read_series_csv(std::istream& is, bool stroboscopic = false) {
  const Table t = read_csv(is);
  if (t.columns != std::vector<std::string>{"t", "mz"}) {
    throw std::invalid_argument("expected header 't,mz'");
  }
  std::vector<double> times, values;
  times.reserve(t.rows.size());
  values.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    times.push_back(r[0]);
    values.push_back(r[1]);
  }
  return TimeSeries::from_samples(times, values, stroboscopic);
}

}  // namespace floquet_ising::io
