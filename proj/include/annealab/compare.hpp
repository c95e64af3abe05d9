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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "annealab/exact.hpp"
#include "annealab/stats.hpp"

namespace annealab {

struct CompareOptions {
  std::size_t bootstraps = 1000;
  std::uint64_t seed = 0;
  /// Instances with degeneracy above this are left out of the filtered
  /// histogram and correlations.
  std::uint64_t degeneracy_max = 100;
  double bin_width = 1.0 / 30.0;
  GapWeighting weighting = GapWeighting::RunFrequency;
};

/// One row of per_instance.csv. Quantities that are undefined for the
/// instance (no ground state found, truncated ground set) are NaN.
struct InstanceComparison {
  std::string instance;
  std::uint64_t degeneracy = 0;
  double success_x = 0.0;
  double success_y = 0.0;
  double tv_mean = 0.0;
  double tv_std = 0.0;
  double fraction_x = 0.0;
  double fraction_y = 0.0;
  double overlap = 0.0;
  double ground_distance = 0.0;
};

struct ComparisonReport {
  std::string method_x;
  std::string method_y;
  std::vector<InstanceComparison> rows;  // sorted by instance id
  Histogram tv_all;
  Histogram tv_filtered;
  /// Pearson r of success_x vs success_y; NaN when fewer than two points or
  /// zero variance.
  double pearson_all = 0.0;
  double pearson_filtered = 0.0;
  std::size_t filtered_count = 0;
  std::vector<JointRow> joint_x;
  std::vector<JointRow> joint_y;
};

/// Groups records of one method by instance id (sorted). Rejects records
/// from other methods.
std::vector<RunSet> group_runs(const std::vector<RunRecord>& records, const std::string& method);

/// Per-instance bootstrap TV distance between gap distributions (bootstrap
/// RNG seeded with hash64(seed, "bootstrap", id)), success probabilities,
/// ground fractions and overlap, ground-subspace distance, histograms and
/// correlations. Rejects x and y whose instance sets differ, or instances
/// missing from `ground`.
ComparisonReport compare_runs(const std::vector<RunSet>& x, const std::vector<RunSet>& y,
                              const std::map<std::string, GroundSummary>& ground,
                              const CompareOptions& options = {});

/// Writes into `directory`:
///   per_instance.csv          instance,degeneracy,success_x,success_y,tv_mean,tv_std,
///                             fraction_x,fraction_y,overlap,d_gs
///   tv_histogram.csv          bin_lo,bin_hi,count
///   tv_histogram_filtered.csv bin_lo,bin_hi,count   (degeneracy <= degeneracy_max)
///   correlations.csv          quantity,subset,n,pearson
///   joint_x.csv, joint_y.csv  instance,success,gap,mass
void write_report(const ComparisonReport& report, const std::string& directory);

/// Reads runs.jsonl, keeping records whose method equals `method` (all
/// records when empty, which then must share one method). Spin counts come
/// from `spins_by_instance`.
std::vector<RunRecord> load_runs(const std::string& path, const std::string& method,
                                 const std::map<std::string, std::size_t>& spins_by_instance);

struct CompareRequest {
  std::string runs_x;
  std::string method_x;
  std::string runs_y;  // empty: split runs_x by gauge instead
  std::string method_y;
  std::string instances;  // directory with <id>.ising and <id>.gs
  std::string output;
  /// With no runs_y, X keeps gauges [0, split) and Y gauges [split, total).
  std::optional<std::uint32_t> split_gauge;
  CompareOptions options;
};

/// File-level driver used by the CLI.
ComparisonReport run_compare(const CompareRequest& request);

}  // namespace annealab
