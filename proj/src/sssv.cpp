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

#include "annealab/sssv.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace annealab {

namespace {

void check_sizes(const IsingInstance& instance, std::span<const double> transverse,
                 const RotorState& state) {
  if (state.size() != instance.size() || transverse.size() != instance.size()) {
    throw ValidationError("sssv: rotor/transverse length does not match instance");
  }
}

void check_angles(const RotorState& state) {
  for (double t : state.theta) {
    if (!(t >= 0.0 && t <= std::numbers::pi)) throw ValidationError("sssv: angle outside [0, pi]");
  }
}

}  // namespace

double sssv_energy(const IsingInstance& instance, std::span<const double> transverse, double B,
                   const RotorState& state) {
  check_sizes(instance, transverse, state);
  check_angles(state);
  const auto& topo = instance.topology();
  const auto edges = topo.edges();
  double ising = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ising += instance.coupling(e) * std::cos(state.theta[topo.position(edges[e].u)]) *
             std::cos(state.theta[topo.position(edges[e].v)]);
  }
  double transverse_term = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    ising += instance.field(i) * std::cos(state.theta[i]);
    transverse_term += transverse[i] * std::sin(state.theta[i]);
  }
  return -transverse_term + B * ising;
}

double sssv_energy(const IsingInstance& instance, double A, double B, const RotorState& state) {
  const std::vector<double> transverse(instance.size(), A);
  return sssv_energy(instance, transverse, B, state);
}

double sssv_delta_energy(const IsingInstance& instance, std::span<const double> transverse,
                         double B, const RotorState& state, std::size_t pos, double new_theta) {
  check_sizes(instance, transverse, state);
  const auto& adj = instance.topology().adjacency();
  double f = instance.field(pos);
  for (auto e = adj.offset[pos]; e < adj.offset[pos + 1]; ++e) {
    f += instance.coupling(adj.edge[e]) * std::cos(state.theta[adj.target[e]]);
  }
  const double old_theta = state.theta[pos];
  return -transverse[pos] * (std::sin(new_theta) - std::sin(old_theta)) +
         B * (std::cos(new_theta) - std::cos(old_theta)) * f;
}

RotorSweeper::RotorSweeper(const IsingInstance& instance, RotorState state)
    : instance_(instance), state_(std::move(state)) {
  if (state_.size() != instance.size()) throw ValidationError("sssv: rotor count mismatch");
  check_angles(state_);
  const std::size_t n = state_.size();
  cos_.resize(n);
  sin_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cos_[i] = std::cos(state_.theta[i]);
    sin_[i] = std::sin(state_.theta[i]);
  }
  const auto& adj = instance.topology().adjacency();
  coupling_.resize(adj.edge.size());
  for (std::size_t e = 0; e < adj.edge.size(); ++e) coupling_[e] = instance.coupling(adj.edge[e]);
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
}

void RotorSweeper::sweep(std::span<const double> transverse, double B, double beta, Rng& rng,
                         SweepOrder order) {
  if (!(beta > 0.0)) throw ValidationError("sssv: beta must be > 0");
  const std::size_t n = state_.size();
  if (transverse.size() != n) throw ValidationError("sssv: transverse length mismatch");
  if (order == SweepOrder::RandomPermutation) {
    for (std::size_t i = n; i > 1; --i) std::swap(order_[i - 1], order_[uniform_index(rng, i)]);
  } else {
    std::iota(order_.begin(), order_.end(), 0u);
  }
  const auto& adj = instance_.topology().adjacency();
  const auto fields = instance_.fields();
  for (std::uint32_t i : order_) {
    const double proposal = std::numbers::pi * uniform01(rng);
    const double c = std::cos(proposal);
    const double s = std::sin(proposal);
    double f = fields[i];
    for (auto e = adj.offset[i]; e < adj.offset[i + 1]; ++e) f += coupling_[e] * cos_[adj.target[e]];
    const double dE = -transverse[i] * (s - sin_[i]) + B * (c - cos_[i]) * f;
    if (metropolis_accept(beta * dE, rng)) {
      state_.theta[i] = proposal;
      cos_[i] = c;
      sin_[i] = s;
      ++accepted_;
    }
  }
}

void sssv_sweep(RotorState& state, const IsingInstance& instance, std::span<const double> transverse,
                double B, double beta, Rng& rng, SweepOrder order) {
  RotorSweeper sweeper(instance, std::move(state));
  sweeper.sweep(transverse, B, beta, rng, order);
  state = sweeper.state();
}

void sssv_sweep(RotorState& state, const IsingInstance& instance, double A, double B, double beta,
                Rng& rng, SweepOrder order) {
  const std::vector<double> transverse(instance.size(), A);
  sssv_sweep(state, instance, transverse, B, beta, rng, order);
}

SpinConfig rotor_readout(const RotorState& state, Rng& rng) {
  SpinConfig config;
  config.spins.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double c = std::cos(state.theta[i]);
    if (c > 0.0) {
      config[i] = 1;
    } else if (c < 0.0) {
      config[i] = -1;
    } else {
      config[i] = fair_coin(rng) ? 1 : -1;
    }
  }
  return config;
}

RunRecord sssv_anneal(const IsingInstance& instance, const AnnealSchedule& schedule,
                      const SSSVParams& params) {
  if (params.sweeps < 1) throw ValidationError("sssv: sweeps must be >= 1");
  const double beta = inverse_temperature(params.temperature_mK);
  const std::size_t n = instance.size();
  const auto working = instance.topology().working();
  const bool per_qubit = params.per_qubit_schedule && schedule.has_per_qubit();

  Rng rng(params.seed);
  RotorSweeper sweeper(instance, RotorState::uniform(n, std::numbers::pi / 2));
  std::vector<double> transverse(n);
  for (std::uint64_t k = 0; k < params.sweeps; ++k) {
    const double s = sweep_fraction(k, params.sweeps);
    const ScheduleValue shared = schedule.evaluate(s);
    if (per_qubit) {
      for (std::size_t i = 0; i < n; ++i) transverse[i] = schedule.evaluate(s, working[i]).A;
    } else {
      std::fill(transverse.begin(), transverse.end(), shared.A);
    }
    sweeper.sweep(transverse, shared.B, beta, rng, params.order);
  }

  RunRecord record;
  record.seed = params.seed;
  record.config = rotor_readout(sweeper.state(), rng);
  record.energy = ising_energy(instance, record.config);
  return record;
}

}  // namespace annealab
