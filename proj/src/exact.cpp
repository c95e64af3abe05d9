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

#include "annealab/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace annealab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw BudgetError("exact: degeneracy exceeds 2^64");
  return out;
}

// ---------------------------------------------------------------------------
// Frontier DP plan. Vertices are added one at a time; the frontier holds the
// processed vertices that still have unprocessed neighbors. Bit t of a table
// index is the spin of frontier[t] (1 = +1).

struct Step {
  std::uint32_t vertex = 0;
  std::uint32_t prev_width = 0;  // |F_{k-1}|; the new vertex sits at this bit
  std::vector<std::pair<std::uint32_t, double>> couplings;  // (bit in F_{k-1}, J)
  std::vector<std::uint32_t> eliminated;  // ext bits removed, ascending
};

struct Plan {
  std::vector<Step> steps;
  std::size_t width = 0;  // max ext width |F_{k-1}| + 1
};

std::vector<std::uint32_t> cell_order(const ChimeraTopology& topo, bool row_major) {
  std::vector<std::uint32_t> order;
  const std::uint32_t outer = row_major ? topo.rows() : topo.cols();
  const std::uint32_t inner = row_major ? topo.cols() : topo.rows();
  for (std::uint32_t a = 0; a < outer; ++a) {
    for (std::uint32_t b = 0; b < inner; ++b) {
      const std::uint32_t r = row_major ? a : b;
      const std::uint32_t c = row_major ? b : a;
      for (std::uint32_t shore = 0; shore < 2; ++shore) {
        for (std::uint32_t k = 0; k < topo.shore_size(); ++k) {
          const VertexId v = topo.compose({r, c, shore, k});
          if (topo.is_working(v)) order.push_back(topo.position(v));
        }
      }
    }
  }
  return order;
}

Plan make_plan(const IsingInstance& instance, const std::vector<std::uint32_t>& order) {
  const auto& adj = instance.topology().adjacency();
  const std::size_t n = instance.size();
  std::vector<std::uint32_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = adj.offset[i + 1] - adj.offset[i];
  std::vector<char> processed(n, 0);

  Plan plan;
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t v : order) {
    Step step;
    step.vertex = v;
    step.prev_width = static_cast<std::uint32_t>(frontier.size());
    for (std::uint32_t t = 0; t < frontier.size(); ++t) {
      for (auto e = adj.offset[v]; e < adj.offset[v + 1]; ++e) {
        if (adj.target[e] == frontier[t]) step.couplings.emplace_back(t, instance.coupling(adj.edge[e]));
      }
    }
    processed[v] = 1;
    for (auto e = adj.offset[v]; e < adj.offset[v + 1]; ++e) {
      if (processed[adj.target[e]]) {
        --remaining[adj.target[e]];
        --remaining[v];
      }
    }
    frontier.push_back(v);
    plan.width = std::max(plan.width, frontier.size());
    std::vector<std::uint32_t> kept;
    for (std::uint32_t t = 0; t < frontier.size(); ++t) {
      if (remaining[frontier[t]] == 0) {
        step.eliminated.push_back(t);
      } else {
        kept.push_back(frontier[t]);
      }
    }
    frontier = std::move(kept);
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

Plan best_plan(const IsingInstance& instance) {
  const auto& topo = instance.topology();
  Plan rows = make_plan(instance, cell_order(topo, true));
  if (topo.rows() == topo.cols()) return rows;
  Plan cols = make_plan(instance, cell_order(topo, false));
  return cols.width < rows.width ? cols : rows;
}

double local_term(const IsingInstance& instance, const Step& step, std::uint64_t prev_index,
                  int spin) {
  double e = instance.field(step.vertex) * spin;
  for (const auto& [bit, j] : step.couplings) {
    const int s = ((prev_index >> bit) & 1) ? 1 : -1;
    e += j * s * spin;
  }
  return e;
}

inline std::uint64_t insert_bit(std::uint64_t index, std::uint32_t bit, std::uint64_t value) {
  const std::uint64_t low = index & ((std::uint64_t{1} << bit) - 1);
  return ((index >> bit) << (bit + 1)) | (value << bit) | low;
}

struct Enumerator {
  const IsingInstance& instance;
  const Plan& plan;
  const std::vector<std::vector<double>>& tables;  // tables[k] over F_k
  std::size_t cap;
  std::vector<std::int8_t> spins;
  std::vector<SpinConfig> found;

  // Called with the assignment of F_k fixed; assigns vertices eliminated at
  // step k and the step's own vertex, then recurses into step k-1.
  void descend(std::size_t k, std::uint64_t index, double target) {
    if (found.size() >= cap) return;
    if (k == 0) {
      found.emplace_back(spins);
      return;
    }
    const Step& step = plan.steps[k - 1];
    const auto& prev = tables[k - 1];
    const std::uint64_t combos = std::uint64_t{1} << step.eliminated.size();
    for (std::uint64_t c = 0; c < combos && found.size() < cap; ++c) {
      std::uint64_t ext = index;
      for (std::size_t t = 0; t < step.eliminated.size(); ++t) {
        ext = insert_bit(ext, step.eliminated[t], (c >> t) & 1);
      }
      const std::uint64_t prev_index = ext & ((std::uint64_t{1} << step.prev_width) - 1);
      const int spin = ((ext >> step.prev_width) & 1) ? 1 : -1;
      const double e = prev[prev_index] + local_term(instance, step, prev_index, spin);
      if (e > target + kEnergyTolerance) continue;
      spins[step.vertex] = static_cast<std::int8_t>(spin);
      descend(k - 1, prev_index, prev[prev_index]);
    }
  }
};

}  // namespace

std::size_t chimera_frontier_width(const ChimeraTopology& topology) {
  // The plan's width depends only on the topology.
  auto topo = std::make_shared<const ChimeraTopology>(topology);
  return best_plan(IsingInstance(topo)).width;
}

GroundSummary chimera_dp_solve(const IsingInstance& instance, std::size_t enum_cap,
                               std::size_t width_budget) {
  const Plan plan = best_plan(instance);
  if (plan.width > width_budget) {
    throw BudgetError("exact: frontier width " + std::to_string(plan.width) +
                      " exceeds budget " + std::to_string(width_budget));
  }
  if (plan.width > 40) throw BudgetError("exact: frontier width " + std::to_string(plan.width));

  std::vector<std::vector<double>> tables;
  tables.reserve(plan.steps.size() + 1);
  tables.push_back({0.0});
  std::vector<std::uint64_t> counts{1};

  for (const Step& step : plan.steps) {
    const auto& prev = tables.back();
    const std::uint64_t half = std::uint64_t{1} << step.prev_width;
    std::vector<double> energy(2 * half);
    std::vector<std::uint64_t> count(2 * half);
    for (std::uint64_t idx = 0; idx < half; ++idx) {
      energy[idx] = prev[idx] + local_term(instance, step, idx, -1);
      energy[idx + half] = prev[idx] + local_term(instance, step, idx, +1);
      count[idx] = count[idx + half] = counts[idx];
    }
    // Eliminate from the highest bit down so lower bit positions stay valid.
    for (auto it = step.eliminated.rbegin(); it != step.eliminated.rend(); ++it) {
      const std::uint32_t bit = *it;
      const std::size_t out_size = energy.size() / 2;
      std::vector<double> e_out(out_size);
      std::vector<std::uint64_t> c_out(out_size);
      for (std::uint64_t idx = 0; idx < out_size; ++idx) {
        const std::uint64_t a = insert_bit(idx, bit, 0), b = insert_bit(idx, bit, 1);
        const double ea = energy[a], eb = energy[b];
        if (ea < eb - kEnergyTolerance) {
          e_out[idx] = ea;
          c_out[idx] = count[a];
        } else if (eb < ea - kEnergyTolerance) {
          e_out[idx] = eb;
          c_out[idx] = count[b];
        } else {
          e_out[idx] = std::min(ea, eb);
          c_out[idx] = checked_add(count[a], count[b]);
        }
      }
      energy = std::move(e_out);
      count = std::move(c_out);
    }
    tables.push_back(std::move(energy));
    counts = std::move(count);
  }

  GroundSummary gs;
  if (tables.back().size() != 1) throw InternalError("exact: frontier not empty at the end");
  gs.ground_energy = tables.back()[0];
  gs.degeneracy = counts[0];

  Enumerator en{instance, plan, tables, enum_cap, std::vector<std::int8_t>(instance.size(), 0), {}};
  if (enum_cap > 0) en.descend(plan.steps.size(), 0, gs.ground_energy);
  gs.ground_set = std::move(en.found);
  std::sort(gs.ground_set.begin(), gs.ground_set.end());
  gs.truncated = gs.ground_set.size() < gs.degeneracy;
  return gs;
}

GroundSummary brute_force_solve(const IsingInstance& instance, std::size_t max_spins,
                                std::size_t enum_cap) {
  const std::size_t n = instance.size();
  if (n > max_spins || n > 62) {
    throw ValidationError("exact: " + std::to_string(n) + " spins exceed the brute-force limit of " +
                          std::to_string(max_spins) + "; use chimera_dp_solve");
  }
  const auto& adj = instance.topology().adjacency();
  SpinConfig config = SpinConfig::uniform(n, -1);
  std::vector<double> field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = local_field(instance, config, i);
  double running = ising_energy(instance, config);

  GroundSummary gs;
  gs.ground_energy = std::numeric_limits<double>::infinity();
  auto consider = [&]() {
    if (running > gs.ground_energy + 1e-6) return;
    // Exact re-evaluation keeps the running sum's rounding out of ties.
    const double e = ising_energy(instance, config);
    if (e < gs.ground_energy - kEnergyTolerance) {
      gs.ground_energy = e;
      gs.degeneracy = 1;
      gs.ground_set.clear();
      if (enum_cap > 0) gs.ground_set.push_back(config);
    } else if (e <= gs.ground_energy + kEnergyTolerance) {
      gs.ground_energy = std::min(gs.ground_energy, e);
      ++gs.degeneracy;
      if (gs.ground_set.size() < enum_cap) gs.ground_set.push_back(config);
    }
  };
  consider();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    const int old = config[j];
    running -= 2.0 * old * field[j];
    config[j] = static_cast<std::int8_t>(-old);
    for (auto e = adj.offset[j]; e < adj.offset[j + 1]; ++e) {
      field[adj.target[e]] -= 2.0 * old * instance.coupling(adj.edge[e]);
    }
    consider();
  }
  std::sort(gs.ground_set.begin(), gs.ground_set.end());
  gs.truncated = gs.ground_set.size() < gs.degeneracy;
  return gs;
}

double energy_gap(const IsingInstance& instance, const SpinConfig& config, double ground_energy) {
  const double gap = ising_energy(instance, config) - ground_energy;
  if (gap < -kEnergyTolerance) {
    throw InternalError("exact: configuration lies below the claimed ground energy");
  }
  return gap <= kEnergyTolerance ? 0.0 : gap;
}

}  // namespace annealab
