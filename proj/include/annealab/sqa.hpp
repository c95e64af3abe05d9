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
#include <string>
#include <vector>

#include "annealab/common.hpp"
#include "annealab/instance.hpp"
#include "annealab/schedule.hpp"

namespace annealab {

// Discrete imaginary-time path integral for H = -A sum sigma^x + B H_Ising.
// The classical action sampled is
//
//   S = (beta/M) B sum_m E_Ising(s_m) - sum_m sum_i Jperp_i s_{m,i} s_{m+1,i}
//
// with M Trotter slices, periodic in m, and Jperp = -1/2 ln tanh(A beta/M).
// For M = 2 both directed bonds (0->1 and 1->0) are counted.

enum class ReadoutPolicy { RandomSlice, BestSlice };
enum class UpdatePolicy { Local, LocalAndCluster };

ReadoutPolicy parse_readout_policy(const std::string& name);
UpdatePolicy parse_update_policy(const std::string& name);
std::string to_string(ReadoutPolicy policy);
std::string to_string(UpdatePolicy policy);

/// A below this (GHz) is clamped so Jperp stays finite near s = 1.
inline constexpr double kTransverseFloor = 1e-6;

class PathIntegralState {
 public:
  PathIntegralState(std::uint32_t slices, std::size_t sites, std::int8_t value = 1);
  static PathIntegralState random(std::uint32_t slices, std::size_t sites, Rng& rng);
  /// Every slice set to `config`.
  static PathIntegralState replicate(std::uint32_t slices, const SpinConfig& config);

  std::uint32_t slices() const { return slices_; }
  std::size_t sites() const { return sites_; }
  std::int8_t at(std::uint32_t m, std::size_t i) const { return spins_[m * sites_ + i]; }
  void set(std::uint32_t m, std::size_t i, std::int8_t v) { spins_[m * sites_ + i] = v; }
  SpinConfig slice(std::uint32_t m) const;
  std::span<std::int8_t> raw() { return spins_; }
  std::span<const std::int8_t> raw() const { return spins_; }

 private:
  std::uint32_t slices_;
  std::size_t sites_;
  std::vector<std::int8_t> spins_;  // slice-major
};

struct SQAParams {
  double temperature_mK = 0.76;
  std::uint64_t sweeps = 10000;
  std::uint32_t trotter_slices = 64;
  std::uint64_t seed = 0;
  ReadoutPolicy readout = ReadoutPolicy::RandomSlice;
  UpdatePolicy update = UpdatePolicy::LocalAndCluster;
  bool per_qubit_schedule = false;
};

/// -1/2 ln tanh(A * dtau); rejects A <= 0 or dtau <= 0.
double transverse_coupling(double A, double dtau);

/// Action S above (additive constants dropped). A is clamped to the floor.
double path_action(const PathIntegralState& state, const IsingInstance& instance,
                   std::span<const double> transverse, double B, double beta);

/// Change in S from flipping spin (m, i), computed from local terms.
double flip_cost(const PathIntegralState& state, const IsingInstance& instance,
                 std::span<const double> transverse, double B, double beta, std::uint32_t m,
                 std::size_t i);

/// Sweep engine holding the flattened couplings of one instance.
class PathSweeper {
 public:
  explicit PathSweeper(const IsingInstance& instance);

  /// Metropolis over every (slice, site) with acceptance min(1, e^{-dS}),
  /// then (for LocalAndCluster) one imaginary-time cluster move per site:
  /// a contiguous run of equal spins grown with probability
  /// 1 - e^{-2 Jperp_i} per bond, flipped with the Ising part of dS as the
  /// Metropolis ratio.
  void sweep(PathIntegralState& state, std::span<const double> transverse, double B, double beta,
             Rng& rng, UpdatePolicy policy);

  /// Same as sweep() but reuses the local fields cached by the previous
  /// call; valid only when `state` has not been modified elsewhere since.
  void continue_sweep(PathIntegralState& state, std::span<const double> transverse, double B,
                      double beta, Rng& rng, UpdatePolicy policy);

 private:
  void refresh_fields(const PathIntegralState& state);
  void local_pass(PathIntegralState& state, double kappa, Rng& rng);
  void cluster_pass(PathIntegralState& state, double kappa, Rng& rng);

  const IsingInstance& instance_;
  std::vector<double> coupling_;  // J per adjacency entry
  std::vector<double> jperp_;
  std::vector<double> bond_probability_;
  std::vector<double> field_;  // local Ising field per (slice, site), kept in step with flips
};

void sqa_sweep(PathIntegralState& state, const IsingInstance& instance,
               std::span<const double> transverse, double B, double beta, Rng& rng,
               UpdatePolicy policy = UpdatePolicy::LocalAndCluster);
void sqa_sweep(PathIntegralState& state, const IsingInstance& instance, double A, double B,
               double beta, Rng& rng, UpdatePolicy policy = UpdatePolicy::LocalAndCluster);

/// RandomSlice returns a uniformly chosen slice; BestSlice the slice of
/// lowest Ising energy (first one on ties). BestSlice biases outcomes.
SpinConfig slice_readout(const PathIntegralState& state, const IsingInstance& instance,
                         ReadoutPolicy policy, Rng& rng);

/// Uniform random start, params.sweeps sweeps following the schedule at
/// s = sweep/(sweeps-1), then slice_readout.
RunRecord sqa_anneal(const IsingInstance& instance, const AnnealSchedule& schedule,
                     const SQAParams& params);

}  // namespace annealab
