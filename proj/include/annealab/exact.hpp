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

#include <cstdint>
#include <limits>
#include <vector>

#include "annealab/common.hpp"
#include "annealab/instance.hpp"

namespace annealab {

/// Exact ground energy, degeneracy and (possibly truncated) ground set.
/// The ground set is sorted lexicographically by spin vector.
struct GroundSummary {
  double ground_energy = 0.0;
  std::uint64_t degeneracy = 0;
  std::vector<SpinConfig> ground_set;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultEnumCap = 256;
inline constexpr std::size_t kDefaultWidthBudget = 20;
inline constexpr std::size_t kMaxBruteForceSpins = 26;

/// Exhaustive Gray-code enumeration. Rejects instances with more than
/// `max_spins` working vertices.
GroundSummary brute_force_solve(const IsingInstance& instance,
                                std::size_t max_spins = kMaxBruteForceSpins,
                                std::size_t enum_cap = std::numeric_limits<std::size_t>::max());

/// Frontier dynamic programming over unit cells. Exact E0 and D; the ground
/// set is enumerated by traceback up to `enum_cap` configurations. Throws
/// BudgetError when the frontier would exceed `width_budget` spins.
GroundSummary chimera_dp_solve(const IsingInstance& instance,
                               std::size_t enum_cap = kDefaultEnumCap,
                               std::size_t width_budget = kDefaultWidthBudget);

/// Largest frontier (in spins) the DP would hold for this topology.
std::size_t chimera_frontier_width(const ChimeraTopology& topology);

/// ising_energy(config) - E0, clamped to 0 within kEnergyTolerance. Throws
/// InternalError when the configuration lies below E0.
double energy_gap(const IsingInstance& instance, const SpinConfig& config, double ground_energy);

}  // namespace annealab
