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

// annealab command line. Exit status: 0 success, 1 rejected input or I/O
// failure, 2 partial failure (see the printed manifest).

#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "annealab/annealab.h"

namespace {

int report(al_status status) {
  if (status == AL_OK) return 0;
  std::fprintf(stderr, "annealab: %s: %s\n", al_status_name(status), al_last_error());
  return status == AL_ERR_PARTIAL ? 2 : 1;
}

int schedule_check(const std::string& file, const std::string& write_default) {
  al_schedule* schedule = nullptr;
  if (!write_default.empty()) {
    if (int rc = report(al_schedule_default(&schedule))) return rc;
    const int rc = report(al_schedule_save(schedule, write_default.c_str()));
    al_schedule_free(schedule);
    if (rc == 0) std::printf("wrote %s\n", write_default.c_str());
    return rc;
  }
  const al_status st = file.empty() ? al_schedule_default(&schedule) : al_schedule_load(file.c_str(), &schedule);
  if (int rc = report(st)) return rc;
  std::printf("%s: %zu rows\n", file.empty() ? "<default>" : file.c_str(), al_schedule_rows(schedule));
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    double A = 0.0, B = 0.0;
    al_schedule_evaluate(schedule, s, &A, &B);
    std::printf("  s=%.2f  A=%.6g GHz  B=%.6g GHz\n", s, A, B);
  }
  for (size_t k = 0; k < al_schedule_warning_count(schedule); ++k) {
    std::printf("warning: %s\n", al_schedule_warning(schedule, k));
  }
  al_schedule_free(schedule);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealab: SSSV and SQA annealing simulations on Chimera Ising instances"};
  app.require_subcommand(1);

  std::string topology, broken, gen_out = "instances";
  std::size_t count = 1;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate random +-1 instances");
  gen->add_option("--topology", topology, "Chimera shape MxNxL, e.g. 2x2x4")->required();
  gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Generation seed");
  gen->add_option("--broken", broken, "Broken-vertex mask file");
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

  std::string solve_dir;
  std::size_t enum_cap = 256, width_budget = 20;
  auto* solve = app.add_subcommand("solve", "Write exact ground summaries (.gs) for a directory of instances");
  solve->add_option("directory", solve_dir, "Directory of .ising files")->required();
  solve->add_option("--enum-cap", enum_cap, "Maximum ground configurations listed")->capture_default_str();
  solve->add_option("--width-budget", width_budget, "Maximum DP frontier in spins")->capture_default_str();

  std::string spec_path, anneal_out;
  std::size_t workers = 0;
  auto* anneal = app.add_subcommand("anneal", "Run an experiment spec");
  anneal->add_option("--spec", spec_path, "Experiment JSON")->required();
  anneal->add_option("--out", anneal_out, "Override the experiment's output directory");
  anneal->add_option("--workers", workers, "Worker threads (default: ANNEAL_LAB_WORKERS or all cores)");

  std::string runs_x, method_x, runs_y, method_y, instances, cmp_out;
  std::uint32_t split_gauge = 0;
  std::size_t bootstraps = 1000;
  std::uint64_t cmp_seed = 0, degeneracy_max = 100;
  auto* compare = app.add_subcommand("compare", "Compare two run sets");
  compare->add_option("--x", runs_x, "runs.jsonl of method X")->required();
  compare->add_option("--x-method", method_x, "Method label to take from the X file");
  compare->add_option("--y", runs_y, "runs.jsonl of method Y");
  compare->add_option("--y-method", method_y, "Method label to take from the Y file");
  compare->add_option("--split-gauge", split_gauge,
                      "Without --y: compare gauges [0,k) of X against the rest");
  compare->add_option("--instances", instances, "Directory with .ising and .gs files")->required();
  compare->add_option("--out", cmp_out, "Report directory")->required();
  compare->add_option("--bootstraps", bootstraps, "Bootstrap resamples")->capture_default_str();
  compare->add_option("--seed", cmp_seed, "Bootstrap seed");
  compare->add_option("--degeneracy-max", degeneracy_max, "Degeneracy filter threshold")->capture_default_str();

  std::string schedule_file, write_default;
  auto* sched = app.add_subcommand("schedule-check", "Validate a schedule CSV (default schedule if none)");
  sched->add_option("file", schedule_file, "Schedule CSV");
  sched->add_option("--write-default", write_default, "Write the built-in schedule to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*gen) {
    const int rc = report(al_generate_instances(topology.c_str(), broken.c_str(), count, gen_seed, gen_out.c_str()));
    if (rc == 0) std::printf("wrote %zu instances to %s\n", count, gen_out.c_str());
    return rc;
  }
  if (*solve) {
    size_t failures = 0;
    const int rc = report(al_solve_directory(solve_dir.c_str(), enum_cap, width_budget, &failures));
    if (rc == 0) std::printf("solved %s\n", solve_dir.c_str());
    return rc;
  }
  if (*anneal) {
    size_t failures = 0;
    return report(al_run_experiment(spec_path.c_str(), anneal_out.c_str(), workers, &failures));
  }
  if (*compare) {
    if (runs_y.empty() && split_gauge == 0) {
      std::fprintf(stderr, "annealab: compare needs --y or --split-gauge\n%s", compare->help().c_str());
      return 1;
    }
    al_compare_options opt;
    al_compare_options_default(&opt);
    opt.runs_x = runs_x.c_str();
    opt.method_x = method_x.c_str();
    opt.runs_y = runs_y.empty() ? nullptr : runs_y.c_str();
    opt.method_y = method_y.c_str();
    opt.instances = instances.c_str();
    opt.output = cmp_out.c_str();
    opt.split_gauge = split_gauge;
    opt.bootstraps = bootstraps;
    opt.seed = cmp_seed;
    opt.degeneracy_max = degeneracy_max;
    double r = 0.0;
    const int rc = report(al_compare(&opt, &r));
    if (rc == 0) std::printf("pearson(success) = %s\n", std::isnan(r) ? "nan" : std::to_string(r).c_str());
    return rc;
  }
  return schedule_check(schedule_file, write_default);
}
