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

#include "annealab/stats.hpp"

#include <algorithm>
#include <random>
#include <cmath>
#include <numeric>
#include <set>

namespace annealab {

namespace {

constexpr double kMassTolerance = 1e-9;

bool is_ground(const RunRecord& r) { return r.gap <= kEnergyTolerance; }

// Sorted distinct levels (merged within tolerance) with their run counts.
struct LevelCounts {
  std::vector<double> level;
  std::vector<std::uint64_t> count;
};

LevelCounts count_levels(const RunSet& runs) {
  std::vector<double> gaps;
  gaps.reserve(runs.size());
  for (const auto& r : runs.records) {
    if (!(r.gap >= -kEnergyTolerance)) throw ValidationError("stats: negative gap in run set");
    gaps.push_back(std::max(0.0, r.gap));
  }
  std::sort(gaps.begin(), gaps.end());
  LevelCounts out;
  for (double g : gaps) {
    if (!out.level.empty() && g - out.level.back() <= kEnergyTolerance) {
      ++out.count.back();
    } else {
      out.level.push_back(g);
      out.count.push_back(1);
    }
  }
  return out;
}

GapDistribution to_distribution(const std::vector<double>& level,
                                const std::vector<std::uint64_t>& count, GapWeighting weighting) {
  GapDistribution d;
  std::uint64_t total = 0, nonzero = 0;
  for (auto c : count) {
    total += c;
    nonzero += c > 0;
  }
  for (std::size_t k = 0; k < level.size(); ++k) {
    if (count[k] == 0) continue;
    d.support.push_back(level[k]);
    d.mass.push_back(weighting == GapWeighting::RunFrequency
                         ? static_cast<double>(count[k]) / static_cast<double>(total)
                         : 1.0 / static_cast<double>(nonzero));
  }
  return d;
}

void require_normalized(const GapDistribution& p) {
  if (p.support.size() != p.mass.size()) throw ValidationError("stats: malformed distribution");
  double sum = 0.0;
  for (double m : p.mass) {
    if (!(m >= 0.0)) throw ValidationError("stats: negative probability mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) throw ValidationError("stats: distribution is not normalized");
}

void require_untruncated(const GroundSummary& g) {
  if (g.truncated || g.ground_set.size() != g.degeneracy) {
    throw ValidationError("stats: ground set is truncated; overlap measures need every ground state");
  }
}

// Multinomial resample of `count` (size n = sum count) via conditional
// binomials; distributionally identical to drawing n records with
// replacement.
void resample(const std::vector<std::uint64_t>& count, std::uint64_t n,
              std::vector<std::uint64_t>& out, Rng& rng) {
  out.assign(count.size(), 0);
  std::uint64_t left_draws = n, left_mass = n;
  for (std::size_t k = 0; k < count.size() && left_draws > 0; ++k) {
    if (k + 1 == count.size()) {
      out[k] = left_draws;
      break;
    }
    const double p = static_cast<double>(count[k]) / static_cast<double>(left_mass);
    std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(left_draws), std::min(1.0, p));
    const auto got = static_cast<std::uint64_t>(draw(rng));
    out[k] = got;
    left_draws -= got;
    left_mass -= count[k];
  }
}

}  // namespace

RunSet select_gauges(const RunSet& runs, std::uint32_t lo, std::uint32_t hi) {
  RunSet out{runs.instance, runs.method, {}};
  for (const auto& r : runs.records) {
    if (r.gauge >= lo && r.gauge < hi) out.records.push_back(r);
  }
  return out;
}

double GapDistribution::mass_at(double gap) const {
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (std::abs(support[k] - gap) <= kEnergyTolerance) return mass[k];
  }
  return 0.0;
}

GapDistribution gap_distribution(const RunSet& runs, GapWeighting weighting) {
  if (runs.empty()) throw ValidationError("stats: empty run set");
  const LevelCounts lc = count_levels(runs);
  return to_distribution(lc.level, lc.count, weighting);
}

double tv_distance(const GapDistribution& p, const GapDistribution& q) {
  require_normalized(p);
  require_normalized(q);
  double sum = 0.0;
  std::size_t a = 0, b = 0;
  while (a < p.support.size() || b < q.support.size()) {
    if (b == q.support.size() ||
        (a < p.support.size() && p.support[a] < q.support[b] - kEnergyTolerance)) {
      sum += p.mass[a++];
    } else if (a == p.support.size() || q.support[b] < p.support[a] - kEnergyTolerance) {
      sum += q.mass[b++];
    } else {
      sum += std::abs(p.mass[a++] - q.mass[b++]);
    }
  }
  return std::min(1.0, 0.5 * sum);
}

double tv_distance(const ConfigDistribution& p, const ConfigDistribution& q) {
  double sum = 0.0;
  for (const auto& [config, mass] : p) {
    auto it = q.find(config);
    sum += std::abs(mass - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [config, mass] : q) {
    if (!p.count(config)) sum += mass;
  }
  return std::min(1.0, 0.5 * sum);
}

BootstrapResult bootstrap_distance(const RunSet& x, const RunSet& y, std::size_t b, Rng& rng,
                                   GapWeighting weighting) {
  if (b < 1) throw ValidationError("stats: need at least one bootstrap");
  if (x.empty() || y.empty()) throw ValidationError("stats: empty run set");
  const LevelCounts lx = count_levels(x), ly = count_levels(y);

  // Shared level axis so each bootstrap is a dense vector comparison.
  std::vector<double> axis;
  std::vector<std::size_t> ix(lx.level.size()), iy(ly.level.size());
  {
    std::size_t a = 0, c = 0;
    while (a < lx.level.size() || c < ly.level.size()) {
      if (c == ly.level.size() ||
          (a < lx.level.size() && lx.level[a] < ly.level[c] - kEnergyTolerance)) {
        ix[a++] = axis.size();
        axis.push_back(lx.level[a - 1]);
      } else if (a == lx.level.size() || ly.level[c] < lx.level[a] - kEnergyTolerance) {
        iy[c++] = axis.size();
        axis.push_back(ly.level[c - 1]);
      } else {
        ix[a] = iy[c] = axis.size();
        axis.push_back(lx.level[a]);
        ++a;
        ++c;
      }
    }
  }

  BootstrapResult result;
  result.samples.reserve(b);
  std::vector<std::uint64_t> cx, cy;
  std::vector<double> px(axis.size()), py(axis.size());
  auto fill = [&](const std::vector<std::uint64_t>& counts, const std::vector<std::size_t>& index,
                  std::uint64_t n, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    std::uint64_t nonzero = 0;
    for (auto c : counts) nonzero += c > 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      out[index[k]] = weighting == GapWeighting::RunFrequency
                          ? static_cast<double>(counts[k]) / static_cast<double>(n)
                          : 1.0 / static_cast<double>(nonzero);
    }
  };
  for (std::size_t n = 0; n < b; ++n) {
    resample(lx.count, x.size(), cx, rng);
    resample(ly.count, y.size(), cy, rng);
    fill(cx, ix, x.size(), px);
    fill(cy, iy, y.size(), py);
    double sum = 0.0;
    for (std::size_t k = 0; k < axis.size(); ++k) sum += std::abs(px[k] - py[k]);
    result.samples.push_back(std::min(1.0, 0.5 * sum));
  }
  result.mean = std::accumulate(result.samples.begin(), result.samples.end(), 0.0) / b;
  if (b > 1) {
    double ss = 0.0;
    for (double v : result.samples) ss += (v - result.mean) * (v - result.mean);
    result.stddev = std::sqrt(ss / (b - 1));
  }
  return result;
}

double success_probability(const RunSet& runs) {
  if (runs.empty()) throw ValidationError("stats: empty run set");
  const auto hits = std::count_if(runs.records.begin(), runs.records.end(), is_ground);
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

std::vector<SpinConfig> ground_states_found(const RunSet& runs) {
  std::set<SpinConfig> found;
  for (const auto& r : runs.records) {
    if (is_ground(r)) found.insert(r.config);
  }
  return {found.begin(), found.end()};
}

double ground_overlap(const RunSet& x, const RunSet& y, const GroundSummary& ground) {
  require_untruncated(ground);
  const auto gx = ground_states_found(x), gy = ground_states_found(y);
  std::vector<SpinConfig> both;
  std::set_intersection(gx.begin(), gx.end(), gy.begin(), gy.end(), std::back_inserter(both));
  return static_cast<double>(both.size()) / static_cast<double>(ground.degeneracy);
}

double ground_fraction(const RunSet& runs, const GroundSummary& ground) {
  require_untruncated(ground);
  return static_cast<double>(ground_states_found(runs).size()) / static_cast<double>(ground.degeneracy);
}

ConfigDistribution ground_conditional_distribution(const RunSet& runs) {
  ConfigDistribution d;
  std::uint64_t hits = 0;
  for (const auto& r : runs.records) {
    if (!is_ground(r)) continue;
    d[r.config] += 1.0;
    ++hits;
  }
  if (hits == 0) {
    throw ValidationError("stats: method '" + runs.method + "' found no ground state on instance '" +
                          runs.instance + "'; ground subspace distance undefined");
  }
  for (auto& [config, mass] : d) mass /= static_cast<double>(hits);
  return d;
}

double ground_subspace_distance(const RunSet& x, const RunSet& y) {
  return tv_distance(ground_conditional_distribution(x), ground_conditional_distribution(y));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
  if (x.size() < 2) throw ValidationError("pearson: need at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::size_t histogram_bin(double value, std::size_t bins) {
  if (!(value >= 0.0 && value <= 1.0)) throw ValidationError("histogram: value outside [0, 1]");
  auto k = static_cast<std::size_t>(std::floor(value * bins));
  // Edges are k/bins exactly; undo rounding in value * bins.
  if (k > 0 && value < static_cast<double>(k) / bins) --k;
  if (k + 1 < bins && value >= static_cast<double>(k + 1) / bins) ++k;
  return std::min(k, bins - 1);
}

Histogram histogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) throw ValidationError("histogram: bad bin width");
  const double ratio = 1.0 / bin_width;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * rounded) {
    throw ValidationError("histogram: 1/bin_width must be an integer");
  }
  Histogram h;
  h.bins = static_cast<std::size_t>(rounded);
  h.counts.assign(h.bins, 0);
  for (double v : values) ++h.counts[histogram_bin(v, h.bins)];
  return h;
}

std::size_t Histogram::modal_bin() const {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<JointRow> joint_energy_success(const std::vector<RunSet>& runs,
                                           const std::map<std::string, GroundSummary>& ground) {
  std::vector<JointRow> rows;
  rows.reserve(runs.size());
  for (const auto& set : runs) {
    if (!ground.count(set.instance)) {
      throw ValidationError("stats: no ground energy for instance '" + set.instance + "'");
    }
    JointRow row;
    row.instance = set.instance;
    row.gaps = gap_distribution(set);
    row.success = row.gaps.mass_at(0.0);
    double best = 0.0;
    for (std::size_t k = 0; k < row.gaps.support.size(); ++k) {
      if (row.gaps.support[k] <= kEnergyTolerance) continue;
      if (row.gaps.mass[k] > best) {
        best = row.gaps.mass[k];
        row.modal_gap = row.gaps.support[k];
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace annealab
