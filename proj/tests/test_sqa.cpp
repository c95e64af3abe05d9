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

#include <cmath>

#include <gtest/gtest.h>

#include "annealab/sqa.hpp"

using namespace annealab;

namespace {

IsingInstance random_with_fields(const TopologyPtr& topo, Rng& rng) {
  auto inst = random_instance(topo, rng);
  for (std::size_t i = 0; i < inst.size(); ++i) inst.set_field_at(i, uniform01(rng) - 0.5);
  return inst;
}

}  // namespace

TEST(SQA, TransverseCouplingValue) {
  EXPECT_NEAR(transverse_coupling(0.5, 1.0), 0.38597, 5e-6);
  EXPECT_NEAR(transverse_coupling(1.0, 0.5), transverse_coupling(0.5, 1.0), 1e-15);
  EXPECT_LT(transverse_coupling(50.0, 1.0), 1e-40);
  EXPECT_GT(transverse_coupling(50.0, 1.0), 0.0);
}

TEST(SQA, TransverseCouplingDecreasing) {
  double prev = transverse_coupling(1e-3, 1.0);
  for (int k = 2; k < 2000; ++k) {
    const double x = 1e-3 * k;
    const double j = transverse_coupling(x, 1.0);
    EXPECT_LT(j, prev);
    prev = j;
  }
}

TEST(SQA, TransverseCouplingRejectsNonPositive) {
  EXPECT_THROW(transverse_coupling(0.0, 1.0), ValidationError);
  EXPECT_THROW(transverse_coupling(-1.0, 1.0), ValidationError);
  EXPECT_THROW(transverse_coupling(1.0, 0.0), ValidationError);
}

TEST(SQA, StateNeedsTwoSlices) {
  EXPECT_THROW(PathIntegralState(1, 4), ValidationError);
}

TEST(SQA, FlipCostMatchesActionDifference) {
  Rng rng(1);
  auto topo = build_topology(2, 2, 4, {9});
  for (int t = 0; t < 50; ++t) {
    auto inst = random_with_fields(topo, rng);
    const std::uint32_t M = 2 + static_cast<std::uint32_t>(uniform_index(rng, 10));
    auto st = PathIntegralState::random(M, inst.size(), rng);
    std::vector<double> A(inst.size());
    for (auto& a : A) a = 0.05 + 3 * uniform01(rng);
    const double B = 3 * uniform01(rng), beta = 0.5 + 10 * uniform01(rng);
    const auto m = static_cast<std::uint32_t>(uniform_index(rng, M));
    const auto i = uniform_index(rng, inst.size());
    const double before = path_action(st, inst, A, B, beta);
    const double dS = flip_cost(st, inst, A, B, beta, m, i);
    st.set(m, i, static_cast<std::int8_t>(-st.at(m, i)));
    EXPECT_NEAR(dS, path_action(st, inst, A, B, beta) - before, 1e-10);
  }
}

TEST(SQA, AlignedNeighborsFlipProbability) {
  // One site, B = 0, A dtau = 0.5: flipping against two aligned neighbors
  // costs 4 Jperp.
  IsingInstance inst(build_topology(1, 1, 1, {1}));
  const std::uint32_t M = 8;
  const double beta = 4.0, A = 0.5 * M / beta;
  PathIntegralState st(M, 1, 1);
  const std::vector<double> transverse{A};
  const double dS = flip_cost(st, inst, transverse, 0.0, beta, 3, 0);
  EXPECT_NEAR(dS, 4 * 0.38597, 2e-5);
  EXPECT_NEAR(std::exp(-dS), 0.2136, 1e-4);
}

TEST(SQA, TwoSliceConventionCountsBothBonds) {
  IsingInstance inst(build_topology(1, 1, 1, {1}));
  const std::vector<double> A{0.7};
  const double beta = 2.0;
  const double jp = transverse_coupling(0.7, beta / 2);
  PathIntegralState aligned(2, 1, 1);
  EXPECT_NEAR(path_action(aligned, inst, A, 1.0, beta), -2 * jp, 1e-15);
  PathIntegralState split(2, 1, 1);
  split.set(1, 0, -1);
  EXPECT_NEAR(path_action(split, inst, A, 1.0, beta), 2 * jp, 1e-15);
}

TEST(SQA, PeriodicBoundaryLinksLastSliceToFirst) {
  IsingInstance inst(build_topology(1, 1, 1, {1}));
  const std::vector<double> A{0.3};
  const double beta = 4.0;
  const std::uint32_t M = 4;
  const double jp = transverse_coupling(0.3, beta / M);
  PathIntegralState st(M, 1, 1);
  st.set(M - 1, 0, -1);
  // Slice M-1 disagrees with both M-2 and 0: two broken bonds.
  EXPECT_NEAR(path_action(st, inst, A, 1.0, beta), -(M - 4) * jp, 1e-14);
  EXPECT_NEAR(flip_cost(st, inst, A, 1.0, beta, M - 1, 0), -4 * jp, 1e-14);
}

TEST(SQA, ReadoutOfIdenticalSlices) {
  const SpinConfig c(std::vector<std::int8_t>{1, -1, -1, 1, 1, -1, 1, 1});
  auto st = PathIntegralState::replicate(5, c);
  Rng rng(2);
  IsingInstance inst(build_topology(1, 1, 4));
  EXPECT_EQ(slice_readout(st, inst, ReadoutPolicy::RandomSlice, rng), c);
  EXPECT_EQ(slice_readout(st, inst, ReadoutPolicy::BestSlice, rng), c);
}

TEST(SQA, RandomSliceIsUniform) {
  PathIntegralState st(2, 1, 1);
  st.set(1, 0, -1);
  IsingInstance inst(build_topology(1, 1, 1, {1}));
  Rng rng(3);
  int first = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) first += slice_readout(st, inst, ReadoutPolicy::RandomSlice, rng)[0] > 0;
  EXPECT_NEAR(first / double(n), 0.5, 0.02);
}

TEST(SQA, BestSlicePicksLowestEnergy) {
  Rng rng(4);
  auto inst = random_instance(build_topology(1, 1, 4), rng);
  auto st = PathIntegralState::random(6, inst.size(), rng);
  // Force slice 3 to a ground state: all-aligned or the best of a scan.
  SpinConfig best;
  double best_e = 1e300;
  for (std::uint64_t b = 0; b < 256; ++b) {
    SpinConfig c = SpinConfig::uniform(8, -1);
    for (int i = 0; i < 8; ++i)
      if (b >> i & 1) c[i] = 1;
    if (ising_energy(inst, c) < best_e) {
      best_e = ising_energy(inst, c);
      best = c;
    }
  }
  for (std::uint32_t m = 0; m < 6; ++m) {
    if (ising_energy(inst, st.slice(m)) <= best_e) {
      // make every other slice strictly worse
      auto worse = best;
      worse[0] = static_cast<std::int8_t>(-worse[0]);
      for (std::size_t i = 0; i < 8; ++i) st.set(m, i, worse[i]);
    }
  }
  for (std::size_t i = 0; i < 8; ++i) st.set(3, i, best[i]);
  ASSERT_GT(ising_energy(inst, st.slice(0)), best_e);
  EXPECT_EQ(slice_readout(st, inst, ReadoutPolicy::BestSlice, rng), best);
}

TEST(SQA, PolicyNames) {
  EXPECT_EQ(parse_readout_policy("best-slice"), ReadoutPolicy::BestSlice);
  EXPECT_EQ(parse_update_policy("local"), UpdatePolicy::Local);
  EXPECT_EQ(to_string(UpdatePolicy::LocalAndCluster), "local+cluster");
  EXPECT_THROW(parse_readout_policy("middle"), ValidationError);
  EXPECT_THROW(parse_update_policy("loop"), ValidationError);
}

TEST(SQA, SameSeedSameRecord) {
  Rng rng(5);
  auto inst = random_instance(build_topology(1, 2, 4), rng);
  SQAParams p;
  p.sweeps = 200;
  p.trotter_slices = 16;
  p.seed = 99;
  const auto a = sqa_anneal(inst, default_schedule(), p);
  const auto b = sqa_anneal(inst, default_schedule(), p);
  EXPECT_EQ(a.config, b.config);
  EXPECT_EQ(a.energy, ising_energy(inst, a.config));
}

TEST(SQA, ContinueSweepMatchesFreshSweep) {
  // The cached local fields must give the same chain as recomputing them.
  Rng rng(6);
  auto inst = random_with_fields(build_topology(2, 2, 4), rng);
  auto s1 = PathIntegralState::random(8, inst.size(), rng);
  auto s2 = s1;
  PathSweeper a(inst), b(inst);
  Rng r1(7), r2(7);
  const std::vector<double> A(inst.size(), 0.4);
  for (int k = 0; k < 50; ++k) {
    a.continue_sweep(s1, A, 1.0, 5.0, r1, UpdatePolicy::LocalAndCluster);
    b.sweep(s2, A, 1.0, 5.0, r2, UpdatePolicy::LocalAndCluster);
  }
  EXPECT_TRUE(std::equal(s1.raw().begin(), s1.raw().end(), s2.raw().begin()));
}

TEST(SQA, ClassicalLimitMatchesBoltzmann) {
  // At the A floor the slices lock together and only whole-path cluster
  // flips move, which is classical Metropolis at inverse temperature beta*B.
  IsingInstance inst(build_topology(1, 1, 1));
  inst.set_coupling(0, 1, -1.0);
  inst.set_field_at(0, 0.4);
  const double B = 1.0, beta = 0.8;
  std::vector<double> exact(4);
  double z = 0.0;
  for (int b = 0; b < 4; ++b) {
    SpinConfig c({static_cast<std::int8_t>(b & 1 ? 1 : -1), static_cast<std::int8_t>(b & 2 ? 1 : -1)});
    z += exact[b] = std::exp(-beta * B * ising_energy(inst, c));
  }
  for (double& e : exact) e /= z;

  Rng rng(8);
  auto st = PathIntegralState::random(16, 2, rng);
  PathSweeper sweeper(inst);
  const std::vector<double> A(2, kTransverseFloor);
  std::vector<double> counts(4, 0.0);
  const int burn = 100, samples = 200000;
  for (int k = 0; k < burn + samples; ++k) {
    sweeper.continue_sweep(st, A, B, beta, rng, UpdatePolicy::LocalAndCluster);
    if (k < burn) continue;
    for (std::uint32_t m = 1; m < st.slices(); ++m) ASSERT_EQ(st.slice(m), st.slice(0));
    counts[(st.at(0, 0) > 0 ? 1 : 0) + (st.at(0, 1) > 0 ? 2 : 0)] += 1.0;
  }
  double tv = 0.0;
  for (int b = 0; b < 4; ++b) tv += std::abs(counts[b] / samples - exact[b]);
  EXPECT_LE(0.5 * tv, 0.02);
}
