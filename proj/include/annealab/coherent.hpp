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

#include <complex>
#include <span>
#include <vector>

#include "annealab/instance.hpp"

namespace annealab {

// Spin-1/2 Bloch coherent states
//   |Omega> = (x)_i [cos(theta_i/2)|0> + e^{i phi_i} sin(theta_i/2)|1>]
// and the identities linking their expectation values to the rotor model.
// Analytic only: nothing here samples the coherent-state path integral.

struct CoherentState {
  std::vector<double> theta;  // [0, pi]
  std::vector<double> phi;    // [0, 2 pi)
  std::size_t size() const { return theta.size(); }
};

/// K = cos(ta/2) cos(tb/2) + e^{-i(pa - pb)} sin(ta/2) sin(tb/2).
std::complex<double> pair_overlap(double theta_a, double phi_a, double theta_b, double phi_b);

/// Angle between the two Bloch vectors, in [0, pi].
double bloch_angle(double theta_a, double phi_a, double theta_b, double phi_b);

/// Product of per-qubit overlaps <a|b>.
std::complex<double> state_overlap(const CoherentState& a, const CoherentState& b);

/// <Omega|H|Omega> for H = -A sum sigma^x + B H_Ising:
///   -A sum sin(theta_i) cos(phi_i) + B [sum J cos cos + sum h cos].
double coherent_energy(const CoherentState& state, const IsingInstance& instance, double A, double B);

/// <Omega|d_tau|Omega> = i sum_j sin^2(theta_j/2) dphi_j/dtau
///                     = (i/2) sum_j (1 - cos theta_j) dphi_j/dtau.
/// This is the limit of -ln<Omega(tau)|Omega(tau - d)>/d as d -> 0. The real
/// part is exactly zero.
std::complex<double> berry_integrand(std::span<const double> theta, std::span<const double> phi_rate);

}  // namespace annealab
