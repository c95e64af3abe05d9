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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "annealab/exact.hpp"
#include "annealab/instance.hpp"

namespace annealab {

// Text formats. All are line oriented; '#' starts a comment line.
//
// Broken mask: one decimal vertex id per line.
//
// Instance (.ising): `i j value` (i < j) for couplings, `i i value` for
// fields, VertexId indices. The writer prefixes
//   # topology MxNxL
//   # broken id id ...
// so the file is self-describing; readers use that header when no topology
// is supplied. Every coupling is written, then every nonzero field, sorted.
//
// Ground summary (.gs):
//   E0 <energy>
//   D <degeneracy>
//   truncated <0|1>
//   <config hex>      (one per ground configuration, sorted)

std::vector<VertexId> read_broken_mask(std::istream& in, const std::string& source = "<stream>");
std::vector<VertexId> load_broken_mask(const std::string& path);

void write_instance(std::ostream& out, const IsingInstance& instance);
IsingInstance read_instance(std::istream& in, TopologyPtr topology = nullptr,
                            const std::string& source = "<stream>");
void save_instance(const std::string& path, const IsingInstance& instance);
IsingInstance load_instance(const std::string& path, TopologyPtr topology = nullptr);

void write_ground_summary(std::ostream& out, const GroundSummary& ground);
GroundSummary read_ground_summary(std::istream& in, std::size_t spins,
                                  const std::string& source = "<stream>");
void save_ground_summary(const std::string& path, const GroundSummary& ground);
GroundSummary load_ground_summary(const std::string& path, std::size_t spins);

/// %.12g, the float format used in every emitted table.
std::string format_number(double value);

/// One RunRecord as a JSON object on a single line (no trailing newline):
/// fields instance, method, gauge, run, seed, config_hex, energy, gap.
std::string run_record_json(const RunRecord& record);
RunRecord parse_run_record(const std::string& line, std::size_t spins);
/// Looks up the spin count from the record's instance id.
RunRecord parse_run_record(const std::string& line,
                           const std::function<std::size_t(const std::string&)>& spins_for);

}  // namespace annealab
