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

#include <algorithm>
#include <span>
#include <vector>

#include "annealab/chimera.hpp"
#include "annealab/common.hpp"

namespace annealab {

/// Per-vertex gauge signs a_i, in working-vertex order.
struct Gauge {
  std::vector<std::int8_t> signs;

  static Gauge identity(std::size_t n) { return Gauge{std::vector<std::int8_t>(n, 1)}; }
  static Gauge random(std::size_t n, Rng& rng);
  std::size_t size() const { return signs.size(); }
};

/// Couplings J (one per topology edge, in edges() order) and fields h (one
/// per working vertex). Energy convention: sum J_ij s_i s_j + sum h_i s_i.
class IsingInstance {
 public:
  explicit IsingInstance(TopologyPtr topology);
  IsingInstance(TopologyPtr topology, std::vector<double> couplings, std::vector<double> fields);

  const ChimeraTopology& topology() const { return *topology_; }
  const TopologyPtr& topology_ptr() const { return topology_; }
  std::size_t size() const { return fields_.size(); }

  std::span<const double> couplings() const { return couplings_; }
  std::span<const double> fields() const { return fields_; }
  double coupling(std::size_t edge) const { return couplings_[edge]; }
  double field(std::size_t pos) const { return fields_[pos]; }

  /// Sets J on the edge (u, v); rejects pairs that are not topology edges.
  void set_coupling(VertexId u, VertexId v, double value);
  void set_coupling_at(std::size_t edge, double value);
  void set_field(VertexId v, double value);
  void set_field_at(std::size_t pos, double value);

  bool has_nonzero_field() const;

  friend bool operator==(const IsingInstance& a, const IsingInstance& b) {
    const bool same_graph =
        a.topology_ == b.topology_ ||
        (a.topology_->shape_string() == b.topology_->shape_string() &&
         std::ranges::equal(a.topology_->broken(), b.topology_->broken()));
    return same_graph && a.couplings_ == b.couplings_ && a.fields_ == b.fields_;
  }

 private:
  TopologyPtr topology_;
  std::vector<double> couplings_;
  std::vector<double> fields_;
};

/// J uniform on {-1, +1} on every edge, h = 0.
IsingInstance random_instance(TopologyPtr topology, Rng& rng);

double ising_energy(const IsingInstance& instance, const SpinConfig& config);

/// Local field sum_j J_ij s_j + h_i seen by the spin at position `pos`.
double local_field(const IsingInstance& instance, const SpinConfig& config, std::size_t pos);

IsingInstance apply_gauge(const IsingInstance& instance, const Gauge& gauge);
SpinConfig gauge_config(const SpinConfig& config, const Gauge& gauge);

/// Adds independent N(0, sigma) noise to every coupling and every field
/// (including fields that are zero in the ideal instance).
IsingInstance perturb(const IsingInstance& instance, double sigma, Rng& rng);

/// J'_ij = J_ij + chi * sum_k J_ik J_kj over common neighbors k, and
/// h'_i = h_i + chi * sum_j J_ij h_j. Both sums use the unperturbed input.
/// Chimera is bipartite, so no edge has common neighbors and only the field
/// term can change anything.
IsingInstance apply_crosstalk(const IsingInstance& instance, double chi);

/// Threshold above which apply_crosstalk is considered outside its
/// small-chi regime (callers log a warning).
inline constexpr double kCrosstalkWarnThreshold = 0.2;

}  // namespace annealab
