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

#include "annealab/compare.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "annealab/experiment.hpp"
#include "annealab/io.hpp"
#include "annealab/seeds.hpp"

namespace annealab {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Quantity that may be undefined for an instance; NaN instead of an error.
template <typename F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const ValidationError&) {
    return kNaN;
  }
}

double safe_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  return or_nan([&] { return pearson(x, y); });
}

std::string cell(double v) { return std::isnan(v) ? "nan" : format_number(v); }

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_histogram(const fs::path& path, const Histogram& h) {
  auto out = open_csv(path);
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < h.bins; ++k) {
    out << format_number(h.bin_lo(k)) << ',' << format_number(h.bin_hi(k)) << ',' << h.counts[k] << '\n';
  }
}

void write_joint(const fs::path& path, const std::vector<JointRow>& rows) {
  auto out = open_csv(path);
  out << "instance,success,gap,mass\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.gaps.support.size(); ++k) {
      out << row.instance << ',' << format_number(row.success) << ',' << format_number(row.gaps.support[k])
          << ',' << format_number(row.gaps.mass[k]) << '\n';
    }
  }
}

}  // namespace

std::vector<RunSet> group_runs(const std::vector<RunRecord>& records, const std::string& method) {
  std::map<std::string, RunSet> by_id;
  for (const auto& r : records) {
    if (r.method != method) {
      throw ValidationError("compare: record of method '" + r.method + "' in run set of '" + method + "'");
    }
    auto& set = by_id[r.instance];
    set.instance = r.instance;
    set.method = method;
    set.records.push_back(r);
  }
  std::vector<RunSet> out;
  out.reserve(by_id.size());
  for (auto& [id, set] : by_id) out.push_back(std::move(set));
  return out;
}

ComparisonReport compare_runs(const std::vector<RunSet>& x, const std::vector<RunSet>& y,
                              const std::map<std::string, GroundSummary>& ground,
                              const CompareOptions& options) {
  auto ids = [](const std::vector<RunSet>& sets) {
    std::vector<std::string> out;
    for (const auto& s : sets) out.push_back(s.instance);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (x.empty()) throw ValidationError("compare: no instances");
  if (ids(x) != ids(y)) throw ValidationError("compare: X and Y cover different instance sets");

  std::map<std::string, const RunSet*> ymap;
  for (const auto& s : y) ymap[s.instance] = &s;
  std::vector<const RunSet*> xs;
  for (const auto& s : x) xs.push_back(&s);
  std::sort(xs.begin(), xs.end(), [](const RunSet* a, const RunSet* b) { return a->instance < b->instance; });

  ComparisonReport report;
  report.method_x = x.front().method;
  report.method_y = y.front().method;
  std::vector<double> tv_all, tv_filtered, sx_all, sy_all, sx_f, sy_f;
  std::vector<RunSet> x_sorted, y_sorted;
  for (const RunSet* px : xs) {
    const RunSet& rx = *px;
    const RunSet& ry = *ymap.at(rx.instance);
    const auto g = ground.find(rx.instance);
    if (g == ground.end()) throw ValidationError("compare: no ground summary for '" + rx.instance + "'");
    const GroundSummary& gs = g->second;

    InstanceComparison row;
    row.instance = rx.instance;
    row.degeneracy = gs.degeneracy;
    Rng rng(hash64(options.seed, {"bootstrap", rx.instance}));
    const BootstrapResult boot = bootstrap_distance(rx, ry, options.bootstraps, rng, options.weighting);
    row.tv_mean = boot.mean;
    row.tv_std = boot.stddev;
    row.success_x = success_probability(rx);
    row.success_y = success_probability(ry);
    row.fraction_x = or_nan([&] { return ground_fraction(rx, gs); });
    row.fraction_y = or_nan([&] { return ground_fraction(ry, gs); });
    row.overlap = or_nan([&] { return ground_overlap(rx, ry, gs); });
    row.ground_distance = or_nan([&] { return ground_subspace_distance(rx, ry); });
    report.rows.push_back(row);

    tv_all.push_back(row.tv_mean);
    sx_all.push_back(row.success_x);
    sy_all.push_back(row.success_y);
    if (gs.degeneracy <= options.degeneracy_max) {
      tv_filtered.push_back(row.tv_mean);
      sx_f.push_back(row.success_x);
      sy_f.push_back(row.success_y);
    }
    x_sorted.push_back(rx);
    y_sorted.push_back(ry);
  }
  report.tv_all = histogram(tv_all, options.bin_width);
  report.tv_filtered = histogram(tv_filtered, options.bin_width);
  report.pearson_all = safe_pearson(sx_all, sy_all);
  report.pearson_filtered = safe_pearson(sx_f, sy_f);
  report.filtered_count = tv_filtered.size();
  report.joint_x = joint_energy_success(x_sorted, ground);
  report.joint_y = joint_energy_success(y_sorted, ground);
  return report;
}

void write_report(const ComparisonReport& report, const std::string& directory) {
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + directory + "': " + ec.message());

  {
    auto out = open_csv(dir / "per_instance.csv");
    out << "instance,degeneracy,success_x,success_y,tv_mean,tv_std,fraction_x,fraction_y,overlap,d_gs\n";
    for (const auto& r : report.rows) {
      out << r.instance << ',' << r.degeneracy << ',' << cell(r.success_x) << ',' << cell(r.success_y) << ','
          << cell(r.tv_mean) << ',' << cell(r.tv_std) << ',' << cell(r.fraction_x) << ','
          << cell(r.fraction_y) << ',' << cell(r.overlap) << ',' << cell(r.ground_distance) << '\n';
    }
  }
  write_histogram(dir / "tv_histogram.csv", report.tv_all);
  write_histogram(dir / "tv_histogram_filtered.csv", report.tv_filtered);
  {
    auto out = open_csv(dir / "correlations.csv");
    out << "quantity,subset,n,pearson\n";
    out << "success," << "all," << report.rows.size() << ',' << cell(report.pearson_all) << '\n';
    out << "success," << "filtered," << report.filtered_count << ',' << cell(report.pearson_filtered) << '\n';
  }
  write_joint(dir / "joint_x.csv", report.joint_x);
  write_joint(dir / "joint_y.csv", report.joint_y);
}

std::vector<RunRecord> load_runs(const std::string& path, const std::string& method,
                                 const std::map<std::string, std::size_t>& spins_by_instance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<RunRecord> out;
  std::string line;
  std::size_t lineno = 0;
  std::string seen_method;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    RunRecord r;
    try {
      r = parse_run_record(line, [&](const std::string& id) {
        const auto it = spins_by_instance.find(id);
        if (it == spins_by_instance.end()) throw ValidationError("unknown instance '" + id + "'");
        return it->second;
      });
    } catch (const ValidationError& e) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!method.empty() && r.method != method) continue;
    if (method.empty()) {
      if (seen_method.empty()) seen_method = r.method;
      if (r.method != seen_method) {
        throw ValidationError(path + ": several methods present; choose one with a method label");
      }
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) {
    throw ValidationError(path + ": no records" + (method.empty() ? "" : " for method '" + method + "'"));
  }
  return out;
}

ComparisonReport run_compare(const CompareRequest& request) {
  if (request.output.empty()) throw ValidationError("compare: output directory is required");
  const auto instances = load_instance_directory(request.instances);
  std::map<std::string, std::size_t> spins;
  std::map<std::string, GroundSummary> ground;
  for (const auto& named : instances) {
    spins[named.id] = named.instance.size();
    const fs::path gs_path = fs::path(request.instances) / (named.id + ".gs");
    if (fs::exists(gs_path)) ground[named.id] = load_ground_summary(gs_path.string(), named.instance.size());
  }

  const auto xr = load_runs(request.runs_x, request.method_x, spins);
  std::vector<RunSet> x = group_runs(xr, xr.front().method);
  std::vector<RunSet> y;
  if (request.runs_y.empty()) {
    if (!request.split_gauge) throw ValidationError("compare: need a second run file or a gauge split");
    const std::uint32_t split = *request.split_gauge;
    std::vector<RunSet> lo, hi;
    for (const auto& set : x) {
      std::uint32_t total = 0;
      for (const auto& r : set.records) total = std::max(total, r.gauge + 1);
      if (split == 0 || split >= total) {
        throw ValidationError("compare: gauge split " + std::to_string(split) + " leaves one side empty");
      }
      lo.push_back(select_gauges(set, 0, split));
      hi.push_back(select_gauges(set, split, total));
      lo.back().method += "[0," + std::to_string(split) + ")";
      hi.back().method += "[" + std::to_string(split) + "," + std::to_string(total) + ")";
    }
    x = std::move(lo);
    y = std::move(hi);
  } else {
    const auto yr = load_runs(request.runs_y, request.method_y, spins);
    y = group_runs(yr, yr.front().method);
  }
  ComparisonReport report = compare_runs(x, y, ground, request.options);
  write_report(report, request.output);
  return report;
}

}  // namespace annealab
