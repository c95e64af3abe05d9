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

#include "annealab/coherent.hpp"

#include <algorithm>
#include <cmath>

namespace annealab {

std::complex<double> pair_overlap(double theta_a, double phi_a, double theta_b, double phi_b) {
  const double c = std::cos(theta_a / 2) * std::cos(theta_b / 2);
  const double s = std::sin(theta_a / 2) * std::sin(theta_b / 2);
  return c + std::polar(s, -(phi_a - phi_b));
}

double bloch_angle(double theta_a, double phi_a, double theta_b, double phi_b) {
  const double c = std::cos(theta_a) * std::cos(theta_b) +
                   std::sin(theta_a) * std::sin(theta_b) * std::cos(phi_a - phi_b);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::complex<double> state_overlap(const CoherentState& a, const CoherentState& b) {
  if (a.size() != b.size() || a.phi.size() != a.size() || b.phi.size() != b.size()) {
    throw ValidationError("coherent: state size mismatch");
  }
  std::complex<double> k = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) k *= pair_overlap(a.theta[i], a.phi[i], b.theta[i], b.phi[i]);
  return k;
}

double coherent_energy(const CoherentState& state, const IsingInstance& instance, double A, double B) {
  if (state.size() != instance.size() || state.phi.size() != state.size()) {
    throw ValidationError("coherent: state size does not match instance");
  }
  const auto& topo = instance.topology();
  const auto edges = topo.edges();
  double ising = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ising += instance.coupling(e) * std::cos(state.theta[topo.position(edges[e].u)]) *
             std::cos(state.theta[topo.position(edges[e].v)]);
  }
  double transverse = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    ising += instance.field(i) * std::cos(state.theta[i]);
    transverse += std::sin(state.theta[i]) * std::cos(state.phi[i]);
  }
  return -A * transverse + B * ising;
}

std::complex<double> berry_integrand(std::span<const double> theta, std::span<const double> phi_rate) {
  if (theta.size() != phi_rate.size()) throw ValidationError("coherent: size mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double s = std::sin(theta[j] / 2);
    sum += s * s * phi_rate[j];
  }
  return {0.0, sum};
}

}  // namespace annealab
