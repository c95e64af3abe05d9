// Copyright 2026 The annealab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "annealab/chimera.hpp"

namespace annealab {

/// Transverse and longitudinal energy scales in GHz (hbar = 1).
struct ScheduleValue {
  double A = 0.0;
  double B = 0.0;
};

/// Tabulated annealing schedule A(s), B(s) on s in [0, 1], with optional
/// per-qubit transverse columns keyed by VertexId.
class AnnealSchedule {
 public:
  AnnealSchedule() = default;

  /// Validates the table: s strictly increasing from 0 to 1, all values
  /// finite and >= 0. Non-monotone A or B only produce warnings.
  AnnealSchedule(std::vector<double> s, std::vector<double> A, std::vector<double> B,
                 std::map<VertexId, std::vector<double>> per_qubit_A = {});

  ScheduleValue evaluate(double s) const;
  /// Uses the qubit's own A column when present, the shared A otherwise.
  ScheduleValue evaluate(double s, VertexId qubit) const;

  bool has_per_qubit() const { return !per_qubit_.empty(); }
  bool has_column(VertexId qubit) const { return per_qubit_.count(qubit) != 0; }
  const std::map<VertexId, std::vector<double>>& per_qubit_columns() const { return per_qubit_; }

  std::size_t rows() const { return s_.size(); }
  const std::vector<double>& s_nodes() const { return s_; }
  const std::vector<double>& a_nodes() const { return A_; }
  const std::vector<double>& b_nodes() const { return B_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Annealing time in microseconds; informational (the simulators are
  /// parameterized by sweep count).
  double anneal_time_us = 5.0;

 private:
  double interpolate(const std::vector<double>& column, double s) const;

  std::vector<double> s_, A_, B_;
  std::map<VertexId, std::vector<double>> per_qubit_;
  std::vector<std::string> warnings_;
};

/// CSV with header `s,A,B[,A_<vertex>...]`; '#' comment lines allowed.
AnnealSchedule load_schedule(const std::string& path);
AnnealSchedule parse_schedule(std::istream& in, const std::string& source = "<stream>");
void write_schedule(std::ostream& out, const AnnealSchedule& schedule);

/// Analytic surrogate of a flux-qubit schedule, tabulated at 101 nodes:
///   A(s) = 6 (e^{-5s} - e^{-5}) / (1 - e^{-5})   GHz
///   B(s) = 0.05 + 7.45 s^2                        GHz
AnnealSchedule default_schedule();

/// s for sweep `sweep` of `total` sweeps: sweep/(total-1), 1 when total == 1.
double sweep_fraction(std::uint64_t sweep, std::uint64_t total);

/// 20 mK corresponds to 2.61 GHz.
inline constexpr double kGHzPerMilliKelvin = 2.61 / 20.0;
double temperature_to_energy(double temperature_mK);
/// 1 / temperature_to_energy(T), in 1/GHz.
double inverse_temperature(double temperature_mK);

}  // namespace annealab
