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

#include "annealab/chimera.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "annealab/common.hpp"

namespace annealab {

ChimeraTopology::ChimeraTopology(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore_size,
                                 std::vector<VertexId> broken)
    : rows_(rows), cols_(cols), shore_(shore_size) {
  if (rows == 0 || cols == 0 || shore_size == 0) {
    throw ValidationError("chimera: rows, cols and shore size must be >= 1");
  }
  const std::uint64_t total = 2ull * rows * cols * shore_size;
  if (total > (1ull << 31)) throw ValidationError("chimera: topology too large");

  position_.assign(total, 0);
  std::sort(broken.begin(), broken.end());
  broken.erase(std::unique(broken.begin(), broken.end()), broken.end());
  for (VertexId b : broken) {
    if (b >= total) {
      throw ValidationError("chimera: broken vertex " + std::to_string(b) +
                            " outside [0, " + std::to_string(total) + ")");
    }
    position_[b] = -1;
  }
  broken_ = std::move(broken);

  for (VertexId v = 0; v < total; ++v) {
    if (position_[v] < 0) continue;
    position_[v] = static_cast<std::int64_t>(working_.size());
    working_.push_back(v);
  }

  auto add = [&](VertexId a, VertexId b) {
    if (position_[a] < 0 || position_[b] < 0) return;
    edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
  };
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      for (std::uint32_t i = 0; i < shore_size; ++i) {
        for (std::uint32_t j = 0; j < shore_size; ++j) {
          add(compose({r, c, 0, i}), compose({r, c, 1, j}));
        }
        // shore 0 couples vertically, shore 1 horizontally
        if (r + 1 < rows) add(compose({r, c, 0, i}), compose({r + 1, c, 0, i}));
        if (c + 1 < cols) add(compose({r, c, 1, i}), compose({r, c + 1, 1, i}));
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());

  const std::size_t n = working_.size();
  std::vector<std::uint32_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[position_[e.u]];
    ++degree[position_[e.v]];
  }
  adjacency_.offset.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adjacency_.offset[i + 1] = adjacency_.offset[i] + degree[i];
  adjacency_.target.resize(adjacency_.offset[n]);
  adjacency_.edge.resize(adjacency_.offset[n]);
  std::vector<std::uint32_t> fill(adjacency_.offset.begin(), adjacency_.offset.end() - 1);
  // Edges are sorted by (u, v), so each row comes out sorted by neighbor.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tmp;
  for (std::uint32_t e = 0; e < edges_.size(); ++e) {
    auto pu = static_cast<std::uint32_t>(position_[edges_[e].u]);
    auto pv = static_cast<std::uint32_t>(position_[edges_[e].v]);
    adjacency_.target[fill[pu]] = pv;
    adjacency_.edge[fill[pu]++] = e;
    adjacency_.target[fill[pv]] = pu;
    adjacency_.edge[fill[pv]++] = e;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = adjacency_.offset[i], hi = adjacency_.offset[i + 1];
    tmp.clear();
    for (auto e = lo; e < hi; ++e) tmp.emplace_back(adjacency_.target[e], adjacency_.edge[e]);
    std::sort(tmp.begin(), tmp.end());
    for (auto e = lo; e < hi; ++e) {
      adjacency_.target[e] = tmp[e - lo].first;
      adjacency_.edge[e] = tmp[e - lo].second;
    }
  }
}

bool ChimeraTopology::is_working(VertexId v) const {
  return v < position_.size() && position_[v] >= 0;
}

VertexId ChimeraTopology::compose(const VertexCoord& c) const {
  if (c.row >= rows_ || c.col >= cols_ || c.shore > 1 || c.k >= shore_) {
    throw ValidationError("chimera: coordinate out of range");
  }
  return ((c.row * cols_ + c.col) * 2 + c.shore) * shore_ + c.k;
}

VertexCoord ChimeraTopology::decompose(VertexId v) const {
  if (!contains(v)) throw ValidationError("chimera: vertex " + std::to_string(v) + " out of range");
  VertexCoord c;
  c.k = v % shore_;
  v /= shore_;
  c.shore = v % 2;
  v /= 2;
  c.col = v % cols_;
  c.row = v / cols_;
  return c;
}

std::uint32_t ChimeraTopology::position(VertexId v) const {
  if (!contains(v)) throw ValidationError("chimera: vertex " + std::to_string(v) + " out of range");
  if (position_[v] < 0) throw ValidationError("chimera: vertex " + std::to_string(v) + " is broken");
  return static_cast<std::uint32_t>(position_[v]);
}

std::int64_t ChimeraTopology::edge_index(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  const Edge key{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

bool ChimeraTopology::is_intra_cell(const Edge& e) const {
  const auto a = decompose(e.u), b = decompose(e.v);
  return a.row == b.row && a.col == b.col && a.shore != b.shore;
}

std::vector<VertexId> ChimeraTopology::neighbors(VertexId v) const {
  const std::uint32_t p = position(v);
  std::vector<VertexId> out;
  for (auto e = adjacency_.offset[p]; e < adjacency_.offset[p + 1]; ++e) {
    out.push_back(working_[adjacency_.target[e]]);
  }
  return out;
}

std::string ChimeraTopology::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_) + "x" + std::to_string(shore_);
}

TopologyPtr build_topology(std::uint32_t rows, std::uint32_t cols, std::uint32_t shore_size,
                           std::vector<VertexId> broken) {
  return std::make_shared<const ChimeraTopology>(rows, cols, shore_size, std::move(broken));
}

TopologyPtr build_topology(const std::string& shape, std::vector<VertexId> broken) {
  std::uint32_t dims[3] = {0, 0, 0};
  const char* p = shape.data();
  const char* end = p + shape.size();
  for (int d = 0; d < 3; ++d) {
    auto [next, ec] = std::from_chars(p, end, dims[d]);
    if (ec != std::errc() || next == p) throw ValidationError("chimera: bad shape '" + shape + "'");
    p = next;
    if (d < 2) {
      if (p == end || (*p != 'x' && *p != 'X')) {
        throw ValidationError("chimera: bad shape '" + shape + "', expected MxNxL");
      }
      ++p;
    }
  }
  if (p != end) throw ValidationError("chimera: bad shape '" + shape + "'");
  return build_topology(dims[0], dims[1], dims[2], std::move(broken));
}

std::vector<VertexId> neighbors(const ChimeraTopology& topology, VertexId v) {
  return topology.neighbors(v);
}

}  // namespace annealab
