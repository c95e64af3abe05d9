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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "annealab/chimera.hpp"
#include "annealab/common.hpp"

using namespace annealab;

namespace {

std::size_t intra_edges(std::uint32_t M, std::uint32_t N, std::uint32_t L) { return M * N * L * L; }
std::size_t inter_edges(std::uint32_t M, std::uint32_t N, std::uint32_t L) {
  return L * ((M - 1) * N + M * (N - 1));
}

}  // namespace

TEST(Chimera, SingleCellCounts) {
  auto t = build_topology(1, 1, 4);
  EXPECT_EQ(t->working_count(), 8u);
  EXPECT_EQ(t->edges().size(), 16u);
}

TEST(Chimera, FourByFourCounts) {
  auto t = build_topology(4, 4, 4);
  EXPECT_EQ(t->working_count(), 128u);
  EXPECT_EQ(t->edges().size(), intra_edges(4, 4, 4) + inter_edges(4, 4, 4));
  EXPECT_EQ(t->edges().size(), 352u);
  std::size_t intra = 0;
  for (const auto& e : t->edges()) intra += t->is_intra_cell(e);
  EXPECT_EQ(intra, 256u);
}

TEST(Chimera, EdgeCountFormulaOverShapes) {
  for (std::uint32_t M = 1; M <= 3; ++M)
    for (std::uint32_t N = 1; N <= 3; ++N)
      for (std::uint32_t L = 1; L <= 4; ++L) {
        auto t = build_topology(M, N, L);
        EXPECT_EQ(t->edges().size(), intra_edges(M, N, L) + inter_edges(M, N, L));
      }
}

TEST(Chimera, BrokenVertexRemovesItsEdges) {
  auto t = build_topology(1, 1, 4, {0});
  EXPECT_EQ(t->working_count(), 7u);
  EXPECT_EQ(t->edges().size(), 12u);
  EXPECT_FALSE(t->is_working(0));
  EXPECT_THROW(t->position(0), ValidationError);
}

TEST(Chimera, BrokenOutOfRangeRejected) {
  EXPECT_THROW(build_topology(1, 1, 4, {8}), ValidationError);
}

TEST(Chimera, ZeroDimensionRejected) {
  EXPECT_THROW(build_topology(0, 1, 4), ValidationError);
  EXPECT_THROW(build_topology(1, 1, 0), ValidationError);
}

TEST(Chimera, ShapeStringParsing) {
  auto t = build_topology("2x3x4");
  EXPECT_EQ(t->rows(), 2u);
  EXPECT_EQ(t->cols(), 3u);
  EXPECT_EQ(t->shore_size(), 4u);
  EXPECT_EQ(t->shape_string(), "2x3x4");
  EXPECT_THROW(build_topology("2x3"), ValidationError);
  EXPECT_THROW(build_topology("axbxc"), ValidationError);
}

TEST(Chimera, NeighborsInSingleCell) {
  auto t = build_topology(1, 1, 4);
  EXPECT_EQ(neighbors(*t, 0), (std::vector<VertexId>{4, 5, 6, 7}));
}

TEST(Chimera, NeighborsAcrossRows) {
  auto t = build_topology(2, 1, 4);
  const VertexId below = t->compose({1, 0, 0, 0});
  EXPECT_EQ(below, 8u);  // ((1*1 + 0)*2 + 0)*4 + 0
  EXPECT_EQ(neighbors(*t, 0), (std::vector<VertexId>{4, 5, 6, 7, below}));
}

TEST(Chimera, ShoreOneCouplesHorizontally) {
  auto t = build_topology(1, 2, 4);
  const VertexId v = t->compose({0, 0, 1, 2});
  const VertexId right = t->compose({0, 1, 1, 2});
  const auto nb = neighbors(*t, v);
  EXPECT_TRUE(std::binary_search(nb.begin(), nb.end(), right));
  EXPECT_EQ(nb.size(), 5u);
}

TEST(Chimera, NeighborsSkipBroken) {
  auto t = build_topology(1, 1, 4, {4});
  EXPECT_EQ(neighbors(*t, 0), (std::vector<VertexId>{5, 6, 7}));
  EXPECT_THROW(neighbors(*t, 4), ValidationError);
  EXPECT_THROW(neighbors(*t, 99), ValidationError);
}

TEST(Chimera, IndexRoundTrip) {
  auto t = build_topology(3, 2, 4);
  for (std::uint32_t r = 0; r < 3; ++r)
    for (std::uint32_t c = 0; c < 2; ++c)
      for (std::uint32_t s = 0; s < 2; ++s)
        for (std::uint32_t k = 0; k < 4; ++k) {
          const VertexCoord coord{r, c, s, k};
          const VertexId v = t->compose(coord);
          EXPECT_EQ(v, (((r * 2 + c) * 2 + s) * 4 + k));
          EXPECT_EQ(t->decompose(v), coord);
        }
}

TEST(Chimera, StructuralProperties) {
  auto t = build_topology(3, 3, 4, {1, 17, 40});
  const std::set<VertexId> broken(t->broken().begin(), t->broken().end());
  for (const auto& e : t->edges()) {
    EXPECT_LT(e.u, e.v);
    EXPECT_FALSE(broken.count(e.u) || broken.count(e.v));
    const auto a = t->decompose(e.u), b = t->decompose(e.v);
    if (t->is_intra_cell(e)) {
      EXPECT_NE(a.shore, b.shore);
      EXPECT_EQ(a.row, b.row);
      EXPECT_EQ(a.col, b.col);
    } else {
      EXPECT_EQ(a.shore, b.shore);
      EXPECT_EQ(a.k, b.k);
      if (a.shore == 0) {
        EXPECT_EQ(a.col, b.col);
        EXPECT_EQ(a.row + 1, b.row);
      } else {
        EXPECT_EQ(a.row, b.row);
        EXPECT_EQ(a.col + 1, b.col);
      }
    }
  }
  EXPECT_TRUE(std::is_sorted(t->edges().begin(), t->edges().end()));
  for (VertexId v : t->working()) {
    const auto nb = neighbors(*t, v);
    EXPECT_LE(nb.size(), t->shore_size() + 2);
    for (VertexId u : nb) {
      const auto back = neighbors(*t, u);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), v));
      EXPECT_GE(t->edge_index(std::min(u, v), std::max(u, v)), 0);
    }
  }
}

TEST(Chimera, CompactAdjacencyMatchesNeighbors) {
  auto t = build_topology(2, 2, 4, {3});
  const auto& adj = t->adjacency();
  for (std::size_t i = 0; i < t->working_count(); ++i) {
    std::vector<VertexId> from_adj;
    for (auto e = adj.offset[i]; e < adj.offset[i + 1]; ++e) {
      from_adj.push_back(t->working()[adj.target[e]]);
      const Edge& edge = t->edges()[adj.edge[e]];
      EXPECT_TRUE(edge.u == t->working()[i] || edge.v == t->working()[i]);
    }
    EXPECT_EQ(from_adj, neighbors(*t, t->working()[i]));
  }
}
