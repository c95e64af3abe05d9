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
#include <string>
#include <vector>

#include "annealab/common.hpp"
#include "annealab/exact.hpp"
#include "annealab/instance.hpp"
#include "annealab/schedule.hpp"
#include "annealab/sqa.hpp"
#include "annealab/sssv.hpp"

namespace annealab {

/// `random` draws uniform spin configurations; it is the anneal-free
/// baseline the annealers are compared against.
enum class MethodKind { SSSV, SQA, Random };

std::string to_string(MethodKind kind);

struct MethodSpec {
  std::string label;
  MethodKind kind = MethodKind::SSSV;
  double temperature_mK = 10.56;
  std::uint64_t sweeps = 150000;
  double sigma = 0.05;
  std::uint32_t trotter_slices = 64;
  SweepOrder order = SweepOrder::Sequential;
  UpdatePolicy update = UpdatePolicy::LocalAndCluster;
  ReadoutPolicy readout = ReadoutPolicy::RandomSlice;
  bool per_qubit_schedule = false;
  double chi = 0.0;
};

/// Named parameter triples: "SSSV" (10.56 mK, 150000, 0.05),
/// "SQA" (0.76 mK, 10000, 0.05), "SQA-hot" (2.54 mK, 10000, 0.05).
MethodSpec method_preset(const std::string& name);

/// Either an existing directory of .ising files, or a generation recipe.
struct InstanceSource {
  std::string directory;
  std::string topology;  // "MxNxL"
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string broken_file;
};

struct ExperimentSpec {
  InstanceSource instances;
  std::vector<MethodSpec> methods;
  std::uint32_t gauges = 16;
  std::uint32_t runs_per_gauge = 1000;
  std::uint64_t master_seed = 0;
  std::string schedule;  // CSV path; empty selects default_schedule()
  std::string output;
  std::size_t enum_cap = kDefaultEnumCap;
  std::size_t width_budget = kDefaultWidthBudget;

  /// Throws ValidationError on G < 1, R < 1, duplicate or empty labels, or
  /// out-of-range method parameters.
  void validate() const;
};

/// Parses the JSON form. Unknown keys are rejected at every level. Relative
/// paths are resolved against `base_dir` when it is non-empty.
ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::string& base_dir = "");
ExperimentSpec load_experiment_spec(const std::string& path);

struct NamedInstance {
  std::string id;
  IsingInstance instance;
};

/// `count` random +-1 instances with ids inst0000, inst0001, ...; instance i
/// is drawn from seed hash64(seed, "instance", i).
std::vector<NamedInstance> generate_instances(const TopologyPtr& topology, std::size_t count,
                                              std::uint64_t seed);

/// Every *.ising file in `directory`, sorted by file name; the id is the
/// file stem.
std::vector<NamedInstance> load_instance_directory(const std::string& directory);

/// Worker count: ANNEAL_LAB_WORKERS when set, else hardware concurrency.
std::size_t default_worker_count();

struct WorkFailure {
  std::string method;
  std::string instance;
  std::int64_t gauge = -1;  // -1: the instance itself failed (e.g. exact budget)
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // canonical (method, instance, gauge, run) order
  std::vector<WorkFailure> failures;
  std::vector<GroundSummary> ground;  // parallel to the instance list; empty on failure
};

/// Core loop, no filesystem access. For every (method, instance, gauge):
/// gauge signs from hash64(master, "gauge", id, g), the gauged instance is
/// perturbed once with N(0, sigma) noise from hash64(master, "noise", id, g)
/// and optionally crosstalked, then R anneals run with seeds
/// hash64(master, label, id, g, r). Outcomes are ungauged and scored on the
/// ideal instance. `workers` == 0 selects default_worker_count().
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::vector<NamedInstance>& instances,
                                const AnnealSchedule& schedule, std::size_t workers = 0);

/// Full pipeline: resolve instances and schedule, run, and write into
/// spec.output:
///   runs.jsonl             one RunRecord per line, canonical order
///   instances/<id>.ising   the ideal instances
///   instances/<id>.gs      their ground summaries
///   manifest.json          counts and the failure manifest
/// Returns the in-memory result as well.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers = 0);

/// Solves every instance in `directory` and writes <stem>.gs next to it.
/// Failures (e.g. budget) are returned, the rest still solved.
std::vector<WorkFailure> solve_directory(const std::string& directory,
                                         std::size_t enum_cap = kDefaultEnumCap,
                                         std::size_t width_budget = kDefaultWidthBudget);

}  // namespace annealab
