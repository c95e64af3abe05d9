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
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace annealab {

/// Linear vertex index: (((row*N + col)*2 + shore)*L + k).
using VertexId = std::uint32_t;

struct VertexCoord {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::uint32_t shore = 0;
  std::uint32_t k = 0;
  friend bool operator==(const VertexCoord&, const VertexCoord&) = default;
};

struct Edge {
  VertexId u = 0;  // u < v
  VertexId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Compressed adjacency over working-vertex positions (0..working_count()).
/// Entry e of row i is neighbor position `target[e]` joined by topology
/// edge `edge[e]`.
struct CompactAdjacency {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> target;
  std::vector<std::uint32_t> edge;
};

/// M x N grid of K_{L,L} cells with an optional broken-vertex mask.
/// Immutable once built; share through shared_ptr<const ChimeraTopology>.
class ChimeraTopology {
 public:
  ChimeraTopology(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore_size,
                  std::vector<VertexId> broken = {});

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::uint32_t shore_size() const { return shore_; }

  /// 2*L*M*N, including broken vertices.
  std::size_t vertex_count() const { return position_.size(); }
  std::size_t working_count() const { return working_.size(); }
  std::span<const VertexId> working() const { return working_; }
  std::span<const VertexId> broken() const { return broken_; }
  bool contains(VertexId v) const { return v < vertex_count(); }
  bool is_working(VertexId v) const;

  VertexId compose(const VertexCoord& c) const;
  VertexCoord decompose(VertexId v) const;

  /// Index of a working vertex within working(); throws for broken or
  /// out-of-range ids.
  std::uint32_t position(VertexId v) const;

  /// Edges between working vertices, sorted by (u, v).
  std::span<const Edge> edges() const { return edges_; }
  /// Index of edge (u, v) in edges(), or -1 when absent.
  std::int64_t edge_index(VertexId u, VertexId v) const;
  bool is_intra_cell(const Edge& e) const;

  /// Sorted neighbor ids of a working vertex.
  std::vector<VertexId> neighbors(VertexId v) const;

  const CompactAdjacency& adjacency() const { return adjacency_; }

  /// "MxNxL", e.g. "2x2x4".
  std::string shape_string() const;

 private:
  std::uint32_t rows_, cols_, shore_;
  std::vector<VertexId> broken_;
  std::vector<VertexId> working_;
  std::vector<std::int64_t> position_;  // -1 for broken
  std::vector<Edge> edges_;
  CompactAdjacency adjacency_;
};

using TopologyPtr = std::shared_ptr<const ChimeraTopology>;

TopologyPtr build_topology(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore_size,
                           std::vector<VertexId> broken = {});

/// Parses "MxNxL" (e.g. "4x4x4").
TopologyPtr build_topology(const std::string& shape, std::vector<VertexId> broken = {});

/// Sorted neighbor list; rejects broken or out-of-range vertices.
std::vector<VertexId> neighbors(const ChimeraTopology& topology, VertexId v);

}  // namespace annealab
