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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "annealab/compare.hpp"
#include "annealab/experiment.hpp"
#include "annealab/io.hpp"

using namespace annealab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("annealab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

ExperimentSpec small_spec(const fs::path& out) {
  return parse_experiment_spec(R"({
    "instances": {"topology": "1x2x4", "count": 3, "seed": 5},
    "methods": [
      {"label": "SSSV", "kind": "sssv", "sweeps": 100, "sigma": 0.05},
      {"label": "SQA", "kind": "sqa", "sweeps": 50, "trotter_slices": 8, "sigma": 0.05, "chi": 0.02},
      {"label": "RAND", "kind": "random"}
    ],
    "gauges": 4, "runs_per_gauge": 3, "master_seed": 77,
    "output": ")" + out.string() + R"("
  })");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ANNEALAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Spec, PresetsAndDefaults) {
  const auto spec = parse_experiment_spec(R"({
    "instances": {"topology": "2x2x4", "count": 2, "seed": 1},
    "methods": [{"preset": "SSSV"}, {"preset": "SQA-hot", "label": "hot"}]
  })");
  EXPECT_EQ(spec.gauges, 16u);
  EXPECT_EQ(spec.runs_per_gauge, 1000u);
  ASSERT_EQ(spec.methods.size(), 2u);
  EXPECT_EQ(spec.methods[0].label, "SSSV");
  EXPECT_EQ(spec.methods[0].sweeps, 150000u);
  EXPECT_EQ(spec.methods[0].temperature_mK, 10.56);
  EXPECT_EQ(spec.methods[1].label, "hot");
  EXPECT_EQ(spec.methods[1].temperature_mK, 2.54);
  EXPECT_EQ(spec.methods[1].kind, MethodKind::SQA);
  EXPECT_THROW(method_preset("QMC"), ValidationError);
}

TEST(Spec, Rejections) {
  const std::string inst = R"("instances": {"topology": "1x1x4", "count": 1, "seed": 1})";
  auto bad = [&](const std::string& rest) {
    EXPECT_THROW(parse_experiment_spec("{" + inst + "," + rest + "}"), ValidationError) << rest;
  };
  bad(R"("methods": [{"label": "a", "kind": "sssv"}], "gauges": 0)");
  bad(R"("methods": [{"label": "a", "kind": "sssv"}], "runs_per_gauge": 0)");
  bad(R"("methods": [{"label": "a", "kind": "sssv"}, {"label": "a", "kind": "sqa"}])");
  bad(R"("methods": [{"label": "a", "kind": "sssv", "colour": 1}])");
  bad(R"("methods": [{"label": "a", "kind": "sssv"}], "extra": true)");
  bad(R"("methods": [{"label": "a", "kind": "annealer"}])");
  bad(R"("methods": [{"label": "a", "kind": "sqa", "trotter_slices": 1}])");
  bad(R"("methods": [])");
  EXPECT_THROW(parse_experiment_spec("{not json"), ValidationError);
}

TEST(Harness, OneGaugeOneRunGivesOneRecord) {
  auto spec = small_spec(scratch("one"));
  spec.methods.resize(1);
  spec.gauges = 1;
  spec.runs_per_gauge = 1;
  const auto instances = generate_instances(build_topology(1, 2, 4), 1, 3);
  const auto result = run_experiment(spec, instances, default_schedule(), 1);
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_TRUE(result.failures.empty());
  EXPECT_EQ(result.records[0].instance, "inst0000");
  EXPECT_EQ(result.records[0].method, "SSSV");
}

TEST(Harness, CanonicalOrderAndFrameConsistency) {
  const auto spec = small_spec(scratch("frame"));
  const auto instances = generate_instances(build_topology(1, 2, 4), 3, 5);
  const auto result = run_experiment(spec, instances, default_schedule(), 2);
  ASSERT_EQ(result.records.size(), 3u * 3u * 4u * 3u);
  std::size_t k = 0;
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::uint32_t g = 0; g < 4; ++g)
        for (std::uint32_t r = 0; r < 3; ++r, ++k) {
          const auto& rec = result.records[k];
          EXPECT_EQ(rec.method, spec.methods[m].label);
          EXPECT_EQ(rec.instance, instances[i].id);
          EXPECT_EQ(rec.gauge, g);
          EXPECT_EQ(rec.run, r);
          const auto& ideal = instances[i].instance;
          EXPECT_EQ(ising_energy(ideal, rec.config), rec.energy);
          EXPECT_EQ(rec.gap, energy_gap(ideal, rec.config, result.ground[i].ground_energy));
          // Re-gauging the stored config gives the same energy on the gauged instance.
          Rng grng(k);
          const Gauge gauge = Gauge::random(ideal.size(), grng);
          EXPECT_NEAR(ising_energy(apply_gauge(ideal, gauge), gauge_config(rec.config, gauge)), rec.energy,
                      1e-12);
        }
}

TEST(Harness, ResultsIndependentOfWorkerCount) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  auto spec = small_spec(a);
  run_experiment(spec, 1);
  spec.output = b.string();
  run_experiment(spec, 3);
  EXPECT_EQ(slurp(a / "runs.jsonl"), slurp(b / "runs.jsonl"));
  EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  EXPECT_EQ(slurp(a / "instances" / "inst0001.ising"), slurp(b / "instances" / "inst0001.ising"));
  EXPECT_EQ(slurp(a / "instances" / "inst0001.gs"), slurp(b / "instances" / "inst0001.gs"));
}

TEST(Harness, BudgetFailureIsRecordedNotFatal) {
  const fs::path dir = scratch("budget");
  auto spec = small_spec(dir);
  spec.width_budget = 1;
  spec.gauges = 1;
  spec.runs_per_gauge = 1;
  const auto result = run_experiment(spec, 1);
  EXPECT_EQ(result.failures.size(), 3u);
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.failures[0].gauge, -1);
}

TEST(Compare, SplitGaugesAndReportShape) {
  const fs::path dir = scratch("compare");
  auto spec = small_spec(dir / "exp");
  run_experiment(spec, 1);
  CompareRequest req;
  req.runs_x = (dir / "exp" / "runs.jsonl").string();
  req.method_x = "SSSV";
  req.split_gauge = 2;
  req.instances = (dir / "exp" / "instances").string();
  req.output = (dir / "report").string();
  req.options.bootstraps = 20;
  const auto report = run_compare(req);
  EXPECT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.tv_all.total(), 3u);
  for (const char* f : {"per_instance.csv", "tv_histogram.csv", "tv_histogram_filtered.csv",
                        "correlations.csv", "joint_x.csv", "joint_y.csv"})
    EXPECT_TRUE(fs::exists(dir / "report" / f)) << f;
  const std::string hist = slurp(dir / "report" / "tv_histogram.csv");
  EXPECT_EQ(hist.substr(0, hist.find('\n')), "bin_lo,bin_hi,count");
  std::size_t lines = 0;
  for (char c : slurp(dir / "report" / "per_instance.csv")) lines += c == '\n';
  EXPECT_EQ(lines, 4u);

  // Deterministic report.
  req.output = (dir / "report2").string();
  run_compare(req);
  EXPECT_EQ(slurp(dir / "report" / "per_instance.csv"), slurp(dir / "report2" / "per_instance.csv"));

  req.method_y = "SQA";
  req.runs_y = req.runs_x;
  req.split_gauge.reset();
  EXPECT_EQ(run_compare(req).rows.size(), 3u);
}

TEST(Compare, RejectsDifferentInstanceSets) {
  RunSet a{"i0", "X", {}}, b{"i1", "Y", {}};
  RunRecord r;
  r.config = SpinConfig::uniform(2, 1);
  a.records.push_back(r);
  b.records.push_back(r);
  GroundSummary g;
  g.degeneracy = 1;
  g.ground_set = {r.config};
  EXPECT_THROW(compare_runs({a}, {b}, {{"i0", g}, {"i1", g}}), ValidationError);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("gen --help"), 0);
  EXPECT_EQ(run_cli("gen --bogus-flag"), 1);
  EXPECT_EQ(run_cli("gen --topology 1x2x4 --count 2 --seed 7 --out " + (dir / "inst").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "inst" / "inst0001.ising"));
  EXPECT_EQ(run_cli("solve " + (dir / "inst").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "inst" / "inst0001.gs"));
  EXPECT_EQ(run_cli("solve " + (dir / "inst").string() + " --width-budget 1"), 2);
  EXPECT_EQ(run_cli("gen --topology 0x2x4 --out " + (dir / "x").string()), 1);

  write_file(dir / "exp.json", R"({"instances": {"directory": "inst"},
    "methods": [{"label": "R", "kind": "random"}], "gauges": 2, "runs_per_gauge": 2,
    "master_seed": 1, "output": "out"})");
  EXPECT_EQ(run_cli("anneal --spec " + (dir / "exp.json").string() + " --workers 1"), 0);
  const std::string first = slurp(dir / "out" / "runs.jsonl");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(run_cli("anneal --spec " + (dir / "exp.json").string() + " --workers 2"), 0);
  EXPECT_EQ(slurp(dir / "out" / "runs.jsonl"), first);
  EXPECT_EQ(run_cli("compare --x " + (dir / "out" / "runs.jsonl").string() + " --split-gauge 1 --instances " +
                    (dir / "out" / "instances").string() + " --out " + (dir / "cmp").string() +
                    " --bootstraps 5"),
            0);
  EXPECT_TRUE(fs::exists(dir / "cmp" / "correlations.csv"));
}
