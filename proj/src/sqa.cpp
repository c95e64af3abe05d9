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

#include "annealab/sqa.hpp"

#include <algorithm>
#include <cmath>

namespace annealab {

ReadoutPolicy parse_readout_policy(const std::string& name) {
  if (name == "random-slice") return ReadoutPolicy::RandomSlice;
  if (name == "best-slice") return ReadoutPolicy::BestSlice;
  throw ValidationError("sqa: unknown readout policy '" + name + "'");
}

UpdatePolicy parse_update_policy(const std::string& name) {
  if (name == "local") return UpdatePolicy::Local;
  if (name == "local+cluster") return UpdatePolicy::LocalAndCluster;
  throw ValidationError("sqa: unknown update policy '" + name + "'");
}

std::string to_string(ReadoutPolicy policy) {
  return policy == ReadoutPolicy::RandomSlice ? "random-slice" : "best-slice";
}

std::string to_string(UpdatePolicy policy) {
  return policy == UpdatePolicy::Local ? "local" : "local+cluster";
}

PathIntegralState::PathIntegralState(std::uint32_t slices, std::size_t sites, std::int8_t value)
    : slices_(slices), sites_(sites), spins_(static_cast<std::size_t>(slices) * sites, value) {
  if (slices < 2) throw ValidationError("sqa: need at least 2 Trotter slices");
}

PathIntegralState PathIntegralState::random(std::uint32_t slices, std::size_t sites, Rng& rng) {
  PathIntegralState state(slices, sites);
  for (auto& s : state.spins_) s = fair_coin(rng) ? 1 : -1;
  return state;
}

PathIntegralState PathIntegralState::replicate(std::uint32_t slices, const SpinConfig& config) {
  PathIntegralState state(slices, config.size());
  for (std::uint32_t m = 0; m < slices; ++m) {
    std::copy(config.spins.begin(), config.spins.end(), state.spins_.begin() + m * config.size());
  }
  return state;
}

SpinConfig PathIntegralState::slice(std::uint32_t m) const {
  if (m >= slices_) throw ValidationError("sqa: slice index out of range");
  const auto first = spins_.begin() + static_cast<std::ptrdiff_t>(m * sites_);
  return SpinConfig(std::vector<std::int8_t>(first, first + static_cast<std::ptrdiff_t>(sites_)));
}

double transverse_coupling(double A, double dtau) {
  if (!(A > 0.0)) throw ValidationError("sqa: transverse field A must be > 0");
  if (!(dtau > 0.0)) throw ValidationError("sqa: imaginary-time step must be > 0");
  // -1/2 ln tanh(x) written in e^{-2x} so large x keeps its precision.
  const double x = 2.0 * A * dtau;
  return 0.5 * (std::log1p(std::exp(-x)) - std::log(-std::expm1(-x)));
}

namespace {

void check_shapes(const PathIntegralState& state, const IsingInstance& instance,
                  std::span<const double> transverse) {
  if (state.sites() != instance.size() || transverse.size() != instance.size()) {
    throw ValidationError("sqa: state/transverse size does not match instance");
  }
}

double clamped(double A) { return std::max(A, kTransverseFloor); }

}  // namespace

double path_action(const PathIntegralState& state, const IsingInstance& instance,
                   std::span<const double> transverse, double B, double beta) {
  check_shapes(state, instance, transverse);
  const std::uint32_t M = state.slices();
  const double dtau = beta / M;
  double ising = 0.0;
  for (std::uint32_t m = 0; m < M; ++m) ising += ising_energy(instance, state.slice(m));
  double bonds = 0.0;
  for (std::size_t i = 0; i < state.sites(); ++i) {
    const double jp = transverse_coupling(clamped(transverse[i]), dtau);
    for (std::uint32_t m = 0; m < M; ++m) {
      bonds += jp * state.at(m, i) * state.at((m + 1) % M, i);
    }
  }
  return dtau * B * ising - bonds;
}

double flip_cost(const PathIntegralState& state, const IsingInstance& instance,
                 std::span<const double> transverse, double B, double beta, std::uint32_t m,
                 std::size_t i) {
  check_shapes(state, instance, transverse);
  const std::uint32_t M = state.slices();
  const double dtau = beta / M;
  const double jp = transverse_coupling(clamped(transverse[i]), dtau);
  const auto& adj = instance.topology().adjacency();
  double f = instance.field(i);
  for (auto e = adj.offset[i]; e < adj.offset[i + 1]; ++e) {
    f += instance.coupling(adj.edge[e]) * state.at(m, adj.target[e]);
  }
  const int s = state.at(m, i);
  const int neighbors = state.at((m + M - 1) % M, i) + state.at((m + 1) % M, i);
  return 2.0 * s * (-dtau * B * f + jp * neighbors);
}

PathSweeper::PathSweeper(const IsingInstance& instance) : instance_(instance) {
  const auto& adj = instance.topology().adjacency();
  coupling_.resize(adj.edge.size());
  for (std::size_t e = 0; e < adj.edge.size(); ++e) coupling_[e] = instance.coupling(adj.edge[e]);
  jperp_.resize(instance.size());
  bond_probability_.resize(instance.size());
}

void PathSweeper::refresh_fields(const PathIntegralState& state) {
  const std::uint32_t M = state.slices();
  const std::size_t n = state.sites();
  const auto& adj = instance_.topology().adjacency();
  const auto fields = instance_.fields();
  const std::int8_t* spins = state.raw().data();
  field_.resize(static_cast<std::size_t>(M) * n);
  for (std::uint32_t m = 0; m < M; ++m) {
    const std::int8_t* row = spins + m * n;
    double* out = field_.data() + m * n;
    for (std::size_t i = 0; i < n; ++i) {
      double f = fields[i];
      for (auto e = adj.offset[i]; e < adj.offset[i + 1]; ++e) f += coupling_[e] * row[adj.target[e]];
      out[i] = f;
    }
  }
}

void PathSweeper::local_pass(PathIntegralState& state, double kappa, Rng& rng) {
  const std::uint32_t M = state.slices();
  const std::size_t n = state.sites();
  // Raw pointers: stores through int8_t may alias anything, so vector
  // members would otherwise be reloaded after every spin write.
  const auto& adj = instance_.topology().adjacency();
  const std::uint32_t* offset = adj.offset.data();
  const std::uint32_t* target = adj.target.data();
  const double* coupling = coupling_.data();
  const double* jperp = jperp_.data();
  std::int8_t* spins = state.raw().data();
  for (std::uint32_t m = 0; m < M; ++m) {
    std::int8_t* row = spins + m * n;
    double* field = field_.data() + m * n;
    const std::int8_t* prev = spins + ((m + M - 1) % M) * n;
    const std::int8_t* next = spins + ((m + 1) % M) * n;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = row[i];
      const double dS = 2.0 * s * (jperp[i] * (prev[i] + next[i]) - kappa * field[i]);
      if (metropolis_accept(dS, rng)) {
        row[i] = static_cast<std::int8_t>(-s);
        for (auto e = offset[i]; e < offset[i + 1]; ++e) field[target[e]] -= 2.0 * s * coupling[e];
      }
    }
  }
}

void PathSweeper::cluster_pass(PathIntegralState& state, double kappa, Rng& rng) {
  const std::uint32_t M = state.slices();
  const std::size_t n = state.sites();
  const auto& adj = instance_.topology().adjacency();
  const std::uint32_t* offset = adj.offset.data();
  const std::uint32_t* target = adj.target.data();
  const double* coupling = coupling_.data();
  double* field = field_.data();
  std::int8_t* spins = state.raw().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double p_add = bond_probability_[i];
    const auto start = static_cast<std::uint32_t>(uniform_index(rng, M));
    const std::int8_t s0 = spins[start * n + i];
    std::uint32_t forward = 0;
    while (forward + 1 < M) {
      const std::uint32_t m = (start + forward + 1) % M;
      if (spins[m * n + i] != s0 || !(uniform01(rng) < p_add)) break;
      ++forward;
    }
    std::uint32_t backward = 0;
    while (forward + backward + 1 < M) {
      const std::uint32_t m = (start + M - backward - 1) % M;
      if (spins[m * n + i] != s0 || !(uniform01(rng) < p_add)) break;
      ++backward;
    }
    // Time bonds inside the run are unchanged by the flip and the refused
    // boundary bonds are accounted for by the growth probability, so only
    // the Ising part enters the acceptance ratio.
    const std::uint32_t first = (start + M - backward) % M;
    const std::uint32_t length = forward + backward + 1;
    double field_sum = 0.0;
    for (std::uint32_t k = 0; k < length; ++k) field_sum += field[((first + k) % M) * n + i];
    const double dS = -2.0 * s0 * kappa * field_sum;
    if (metropolis_accept(dS, rng)) {
      for (std::uint32_t k = 0; k < length; ++k) {
        const std::size_t base = ((first + k) % M) * n;
        spins[base + i] = static_cast<std::int8_t>(-s0);
        for (auto e = offset[i]; e < offset[i + 1]; ++e) field[base + target[e]] -= 2.0 * s0 * coupling[e];
      }
    }
  }
}

void PathSweeper::sweep(PathIntegralState& state, std::span<const double> transverse, double B,
                        double beta, Rng& rng, UpdatePolicy policy) {
  refresh_fields(state);
  continue_sweep(state, transverse, B, beta, rng, policy);
}

void PathSweeper::continue_sweep(PathIntegralState& state, std::span<const double> transverse,
                                 double B, double beta, Rng& rng, UpdatePolicy policy) {
  check_shapes(state, instance_, transverse);
  if (!(beta > 0.0)) throw ValidationError("sqa: beta must be > 0");
  if (field_.size() != state.raw().size()) refresh_fields(state);
  const double dtau = beta / state.slices();
  for (std::size_t i = 0; i < jperp_.size(); ++i) {
    jperp_[i] = transverse_coupling(clamped(transverse[i]), dtau);
    bond_probability_[i] = -std::expm1(-2.0 * jperp_[i]);
  }
  const double kappa = dtau * B;
  local_pass(state, kappa, rng);
  if (policy == UpdatePolicy::LocalAndCluster) cluster_pass(state, kappa, rng);
}

void sqa_sweep(PathIntegralState& state, const IsingInstance& instance,
               std::span<const double> transverse, double B, double beta, Rng& rng,
               UpdatePolicy policy) {
  PathSweeper(instance).sweep(state, transverse, B, beta, rng, policy);
}

void sqa_sweep(PathIntegralState& state, const IsingInstance& instance, double A, double B,
               double beta, Rng& rng, UpdatePolicy policy) {
  const std::vector<double> transverse(instance.size(), A);
  sqa_sweep(state, instance, transverse, B, beta, rng, policy);
}

SpinConfig slice_readout(const PathIntegralState& state, const IsingInstance& instance,
                         ReadoutPolicy policy, Rng& rng) {
  if (state.sites() != instance.size()) throw ValidationError("sqa: state size mismatch");
  switch (policy) {
    case ReadoutPolicy::RandomSlice:
      return state.slice(static_cast<std::uint32_t>(uniform_index(rng, state.slices())));
    case ReadoutPolicy::BestSlice: {
      std::uint32_t best = 0;
      double best_energy = ising_energy(instance, state.slice(0));
      for (std::uint32_t m = 1; m < state.slices(); ++m) {
        const double e = ising_energy(instance, state.slice(m));
        if (e < best_energy - kEnergyTolerance) {
          best = m;
          best_energy = e;
        }
      }
      return state.slice(best);
    }
  }
  throw ValidationError("sqa: unknown readout policy");
}

RunRecord sqa_anneal(const IsingInstance& instance, const AnnealSchedule& schedule,
                     const SQAParams& params) {
  if (params.sweeps < 1) throw ValidationError("sqa: sweeps must be >= 1");
  if (params.trotter_slices < 2) throw ValidationError("sqa: need at least 2 Trotter slices");
  const double beta = inverse_temperature(params.temperature_mK);
  const std::size_t n = instance.size();
  const auto working = instance.topology().working();
  const bool per_qubit = params.per_qubit_schedule && schedule.has_per_qubit();

  Rng rng(params.seed);
  PathIntegralState state = PathIntegralState::random(params.trotter_slices, n, rng);
  PathSweeper sweeper(instance);
  std::vector<double> transverse(n);
  for (std::uint64_t k = 0; k < params.sweeps; ++k) {
    const double s = sweep_fraction(k, params.sweeps);
    const ScheduleValue shared = schedule.evaluate(s);
    if (per_qubit) {
      for (std::size_t i = 0; i < n; ++i) transverse[i] = schedule.evaluate(s, working[i]).A;
    } else {
      std::fill(transverse.begin(), transverse.end(), shared.A);
    }
    sweeper.continue_sweep(state, transverse, shared.B, beta, rng, params.update);
  }

  RunRecord record;
  record.seed = params.seed;
  record.config = slice_readout(state, instance, params.readout, rng);
  record.energy = ising_energy(instance, record.config);
  return record;
}

}  // namespace annealab
