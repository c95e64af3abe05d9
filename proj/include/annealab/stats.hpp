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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "annealab/common.hpp"
#include "annealab/exact.hpp"

namespace annealab {

/// All runs of one method on one instance (pooled over gauges).
struct RunSet {
  std::string instance;
  std::string method;
  std::vector<RunRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

/// Records whose gauge index lies in [lo, hi).
RunSet select_gauges(const RunSet& runs, std::uint32_t lo, std::uint32_t hi);

/// Empirical distribution of energy gaps. Support sorted ascending; gaps
/// within kEnergyTolerance are one level.
struct GapDistribution {
  std::vector<double> support;
  std::vector<double> mass;

  double mass_at(double gap) const;
};

enum class GapWeighting {
  RunFrequency,  // mass = fraction of runs at that gap
  LevelUniform,  // every observed level weighted 1/N_levels
};

GapDistribution gap_distribution(const RunSet& runs,
                                 GapWeighting weighting = GapWeighting::RunFrequency);

/// 1/2 sum |p - q| over the union of supports. Rejects inputs whose mass
/// differs from 1 by more than 1e-9.
double tv_distance(const GapDistribution& p, const GapDistribution& q);

/// Distribution over ground configurations.
using ConfigDistribution = std::map<SpinConfig, double>;
double tv_distance(const ConfigDistribution& p, const ConfigDistribution& q);

struct BootstrapResult {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 when b == 1
  std::vector<double> samples;
};

/// b paired bootstraps: the n-th resample of X (with replacement, original
/// size) is compared with the n-th resample of Y.
BootstrapResult bootstrap_distance(const RunSet& x, const RunSet& y, std::size_t b, Rng& rng,
                                   GapWeighting weighting = GapWeighting::RunFrequency);

/// Fraction of runs with gap 0.
double success_probability(const RunSet& runs);

/// Distinct ground configurations observed.
std::vector<SpinConfig> ground_states_found(const RunSet& runs);

/// |G_X intersect G_Y| / D. Rejects a truncated ground summary.
double ground_overlap(const RunSet& x, const RunSet& y, const GroundSummary& ground);

/// |G_X| / D. Rejects a truncated ground summary.
double ground_fraction(const RunSet& runs, const GroundSummary& ground);

/// p(g)/p0 over observed ground configurations g. Rejects a run set with
/// no successes.
ConfigDistribution ground_conditional_distribution(const RunSet& runs);

/// Trace distance between the two ground-conditional (diagonal) states.
double ground_subspace_distance(const RunSet& x, const RunSet& y);

/// Sample Pearson correlation. Rejects mismatched lengths, n < 2 and zero
/// variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct Histogram {
  std::size_t bins = 0;
  std::vector<std::uint64_t> counts;

  double bin_lo(std::size_t k) const { return static_cast<double>(k) / bins; }
  double bin_hi(std::size_t k) const { return static_cast<double>(k + 1) / bins; }
  double bin_center(std::size_t k) const { return (2.0 * k + 1.0) / (2.0 * bins); }
  std::size_t modal_bin() const;
  std::uint64_t total() const;
};

/// Bins [k w, (k+1) w) on [0, 1], last bin closed at 1. 1/w must be an
/// integer (within 1e-9).
Histogram histogram(std::span<const double> values, double bin_width = 1.0 / 30.0);
std::size_t histogram_bin(double value, std::size_t bins);

/// One row of the joint energy/success table.
struct JointRow {
  std::string instance;
  double success = 0.0;
  /// Most frequent non-zero gap (smallest on ties); 0 when every run hit a
  /// ground state.
  double modal_gap = 0.0;
  GapDistribution gaps;
};

std::vector<JointRow> joint_energy_success(const std::vector<RunSet>& runs,
                                           const std::map<std::string, GroundSummary>& ground);

}  // namespace annealab
