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

#include <span>
#include <vector>

#include "annealab/common.hpp"
#include "annealab/instance.hpp"
#include "annealab/schedule.hpp"

namespace annealab {

enum class SweepOrder { Sequential, RandomPermutation };

/// One planar rotor angle in [0, pi] per working vertex.
struct RotorState {
  std::vector<double> theta;

  static RotorState uniform(std::size_t n, double angle) {
    return RotorState{std::vector<double>(n, angle)};
  }
  std::size_t size() const { return theta.size(); }
};

struct SSSVParams {
  double temperature_mK = 10.56;
  std::uint64_t sweeps = 150000;
  std::uint64_t seed = 0;
  SweepOrder order = SweepOrder::Sequential;
  /// Use the schedule's per-qubit A columns where present.
  bool per_qubit_schedule = false;
};

/// -sum_i A_i sin(theta_i) + B [sum J_ij cos(theta_i) cos(theta_j) + sum h_i cos(theta_i)], in GHz.
double sssv_energy(const IsingInstance& instance, std::span<const double> transverse, double B,
                   const RotorState& state);
double sssv_energy(const IsingInstance& instance, double A, double B, const RotorState& state);

/// Energy change of moving rotor `pos` to `new_theta`, from terms touching
/// that rotor only.
double sssv_delta_energy(const IsingInstance& instance, std::span<const double> transverse,
                         double B, const RotorState& state, std::size_t pos, double new_theta);

/// Metropolis sweep engine with cached cos/sin; keeps its own copy of the
/// rotor angles between sweeps.
class RotorSweeper {
 public:
  RotorSweeper(const IsingInstance& instance, RotorState state);

  /// One visit per rotor in the given order: propose theta' uniform on
  /// [0, pi], accept when dE <= 0, else with probability exp(-beta dE).
  void sweep(std::span<const double> transverse, double B, double beta, Rng& rng,
             SweepOrder order);

  const RotorState& state() const { return state_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  const IsingInstance& instance_;
  RotorState state_;
  std::vector<double> cos_, sin_;
  std::vector<double> coupling_;  // J per adjacency entry
  std::vector<std::uint32_t> order_;
  std::uint64_t accepted_ = 0;
};

void sssv_sweep(RotorState& state, const IsingInstance& instance, std::span<const double> transverse,
                double B, double beta, Rng& rng, SweepOrder order = SweepOrder::Sequential);
void sssv_sweep(RotorState& state, const IsingInstance& instance, double A, double B, double beta,
                Rng& rng, SweepOrder order = SweepOrder::Sequential);

/// s_i = +1 when cos(theta_i) > 0, -1 when < 0, fair coin at exactly 0.
SpinConfig rotor_readout(const RotorState& state, Rng& rng);

/// Starts every rotor at pi/2, runs params.sweeps sweeps with the schedule
/// evaluated at s = sweep/(sweeps-1), reads out spins. The record's energy
/// is the Ising energy of the readout on `instance`.
RunRecord sssv_anneal(const IsingInstance& instance, const AnnealSchedule& schedule,
                      const SSSVParams& params);

}  // namespace annealab
