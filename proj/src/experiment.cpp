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

#include "annealab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "annealab/io.hpp"
#include "annealab/seeds.hpp"
#include "json.hpp"

namespace annealab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::SSSV: return "sssv";
    case MethodKind::SQA: return "sqa";
    case MethodKind::Random: return "random";
  }
  return "?";
}

MethodSpec method_preset(const std::string& name) {
  MethodSpec m;
  m.label = name;
  if (name == "SSSV") {
    m.kind = MethodKind::SSSV;
    m.temperature_mK = 10.56;
    m.sweeps = 150000;
  } else if (name == "SQA") {
    m.kind = MethodKind::SQA;
    m.temperature_mK = 0.76;
    m.sweeps = 10000;
  } else if (name == "SQA-hot") {
    m.kind = MethodKind::SQA;
    m.temperature_mK = 2.54;
    m.sweeps = 10000;
  } else {
    throw ValidationError("unknown method preset '" + name + "'");
  }
  m.sigma = 0.05;
  return m;
}

void ExperimentSpec::validate() const {
  if (gauges < 1) throw ValidationError("spec: gauges must be >= 1");
  if (runs_per_gauge < 1) throw ValidationError("spec: runs_per_gauge must be >= 1");
  if (methods.empty()) throw ValidationError("spec: at least one method is required");
  if (instances.directory.empty() == instances.topology.empty()) {
    throw ValidationError("spec: instances need exactly one of 'directory' or 'topology'");
  }
  if (!instances.topology.empty() && instances.count < 1) {
    throw ValidationError("spec: instances.count must be >= 1");
  }
  std::set<std::string> labels;
  for (const auto& m : methods) {
    if (m.label.empty()) throw ValidationError("spec: method label must not be empty");
    if (!labels.insert(m.label).second) throw ValidationError("spec: duplicate method label '" + m.label + "'");
    if (!(m.temperature_mK > 0.0) || !std::isfinite(m.temperature_mK)) {
      throw ValidationError("spec: method '" + m.label + "': temperature_mK must be > 0");
    }
    if (m.sweeps < 1) throw ValidationError("spec: method '" + m.label + "': sweeps must be >= 1");
    if (!(m.sigma >= 0.0) || !std::isfinite(m.sigma)) {
      throw ValidationError("spec: method '" + m.label + "': sigma must be >= 0");
    }
    if (m.trotter_slices < 2) throw ValidationError("spec: method '" + m.label + "': trotter_slices must be >= 2");
    if (!std::isfinite(m.chi)) throw ValidationError("spec: method '" + m.label + "': chi must be finite");
  }
}

namespace {

void reject_unknown(const json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!object.is_object()) throw ValidationError("spec: " + where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ValidationError("spec: unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_field(const json& object, const char* key, T& out, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("spec: bad value for '" + std::string(key) + "' in " + where);
  }
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

SweepOrder parse_order(const std::string& name) {
  if (name == "sequential") return SweepOrder::Sequential;
  if (name == "random-permutation") return SweepOrder::RandomPermutation;
  throw ValidationError("spec: unknown sweep order '" + name + "'");
}

MethodKind parse_kind(const std::string& name) {
  if (name == "sssv") return MethodKind::SSSV;
  if (name == "sqa") return MethodKind::SQA;
  if (name == "random") return MethodKind::Random;
  throw ValidationError("spec: unknown method kind '" + name + "'");
}

MethodSpec parse_method(const json& j, std::size_t index) {
  const std::string where = "methods[" + std::to_string(index) + "]";
  reject_unknown(j,
                 {"label", "kind", "preset", "temperature_mK", "sweeps", "sigma", "trotter_slices",
                  "order", "update", "readout", "per_qubit_schedule", "chi"},
                 where);
  MethodSpec m;
  std::string preset;
  read_field(j, "preset", preset, where);
  if (!preset.empty()) m = method_preset(preset);
  std::string kind;
  read_field(j, "kind", kind, where);
  if (!kind.empty()) {
    m.kind = parse_kind(kind);
  } else if (preset.empty()) {
    throw ValidationError("spec: " + where + " needs 'kind' or 'preset'");
  }
  read_field(j, "label", m.label, where);
  read_field(j, "temperature_mK", m.temperature_mK, where);
  read_field(j, "sweeps", m.sweeps, where);
  read_field(j, "sigma", m.sigma, where);
  read_field(j, "trotter_slices", m.trotter_slices, where);
  std::string text;
  if (j.contains("order")) {
    read_field(j, "order", text, where);
    m.order = parse_order(text);
  }
  if (j.contains("update")) {
    read_field(j, "update", text, where);
    m.update = parse_update_policy(text);
  }
  if (j.contains("readout")) {
    read_field(j, "readout", text, where);
    m.readout = parse_readout_policy(text);
  }
  read_field(j, "per_qubit_schedule", m.per_qubit_schedule, where);
  read_field(j, "chi", m.chi, where);
  return m;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

// Anneals that stay in the programmed (gauged, noisy) frame; the caller
// ungauges and rescores.
SpinConfig anneal_once(const MethodSpec& m, const IsingInstance& programmed,
                       const AnnealSchedule& schedule, std::uint64_t seed) {
  switch (m.kind) {
    case MethodKind::SSSV: {
      SSSVParams p;
      p.temperature_mK = m.temperature_mK;
      p.sweeps = m.sweeps;
      p.seed = seed;
      p.order = m.order;
      p.per_qubit_schedule = m.per_qubit_schedule;
      return sssv_anneal(programmed, schedule, p).config;
    }
    case MethodKind::SQA: {
      SQAParams p;
      p.temperature_mK = m.temperature_mK;
      p.sweeps = m.sweeps;
      p.trotter_slices = m.trotter_slices;
      p.seed = seed;
      p.readout = m.readout;
      p.update = m.update;
      p.per_qubit_schedule = m.per_qubit_schedule;
      return sqa_anneal(programmed, schedule, p).config;
    }
    case MethodKind::Random: {
      Rng rng(seed);
      SpinConfig c = SpinConfig::uniform(programmed.size(), 1);
      for (auto& s : c.spins) s = fair_coin(rng) ? 1 : -1;
      return c;
    }
  }
  throw InternalError("unknown method kind");
}

nlohmann::ordered_json method_json(const MethodSpec& m) {
  nlohmann::ordered_json j;
  j["label"] = m.label;
  j["kind"] = to_string(m.kind);
  j["temperature_mK"] = m.temperature_mK;
  j["sweeps"] = m.sweeps;
  j["sigma"] = m.sigma;
  if (m.kind == MethodKind::SQA) {
    j["trotter_slices"] = m.trotter_slices;
    j["update"] = to_string(m.update);
    j["readout"] = to_string(m.readout);
  }
  if (m.kind == MethodKind::SSSV) j["order"] = m.order == SweepOrder::Sequential ? "sequential" : "random-permutation";
  j["per_qubit_schedule"] = m.per_qubit_schedule;
  j["chi"] = m.chi;
  return j;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("spec: invalid JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"instances", "methods", "gauges", "runs_per_gauge", "master_seed", "schedule", "output",
                  "enum_cap", "width_budget"},
                 "spec");
  ExperimentSpec spec;
  if (!root.contains("instances")) throw ValidationError("spec: 'instances' is required");
  const json& inst = root.at("instances");
  reject_unknown(inst, {"directory", "topology", "count", "seed", "broken_file"}, "instances");
  read_field(inst, "directory", spec.instances.directory, "instances");
  read_field(inst, "topology", spec.instances.topology, "instances");
  read_field(inst, "count", spec.instances.count, "instances");
  read_field(inst, "seed", spec.instances.seed, "instances");
  read_field(inst, "broken_file", spec.instances.broken_file, "instances");
  spec.instances.directory = resolve(spec.instances.directory, base_dir);
  spec.instances.broken_file = resolve(spec.instances.broken_file, base_dir);

  if (!root.contains("methods") || !root.at("methods").is_array()) {
    throw ValidationError("spec: 'methods' must be an array");
  }
  for (std::size_t i = 0; i < root.at("methods").size(); ++i) {
    spec.methods.push_back(parse_method(root.at("methods")[i], i));
  }
  read_field(root, "gauges", spec.gauges, "spec");
  read_field(root, "runs_per_gauge", spec.runs_per_gauge, "spec");
  read_field(root, "master_seed", spec.master_seed, "spec");
  read_field(root, "schedule", spec.schedule, "spec");
  read_field(root, "output", spec.output, "spec");
  read_field(root, "enum_cap", spec.enum_cap, "spec");
  read_field(root, "width_budget", spec.width_budget, "spec");
  spec.schedule = resolve(spec.schedule, base_dir);
  spec.output = resolve(spec.output, base_dir);
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str(), fs::path(path).parent_path().string());
}

std::vector<NamedInstance> generate_instances(const TopologyPtr& topology, std::size_t count,
                                              std::uint64_t seed) {
  std::vector<NamedInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "inst%04zu", i);
    Rng rng(hash64(seed, {"instance", static_cast<std::uint64_t>(i)}));
    out.push_back({id, random_instance(topology, rng)});
  }
  return out;
}

std::vector<NamedInstance> load_instance_directory(const std::string& directory) {
  if (!fs::is_directory(directory)) throw IoError("not a directory: '" + directory + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ising") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no .ising files in '" + directory + "'");
  std::vector<NamedInstance> out;
  TopologyPtr shared;
  for (const auto& f : files) {
    IsingInstance inst = load_instance(f.string());
    // Share one topology object when shapes and masks agree.
    if (shared && shared->shape_string() == inst.topology().shape_string() &&
        std::ranges::equal(shared->broken(), inst.topology().broken())) {
      inst = IsingInstance(shared, {inst.couplings().begin(), inst.couplings().end()},
                           {inst.fields().begin(), inst.fields().end()});
    } else {
      shared = inst.topology_ptr();
    }
    out.push_back({f.stem().string(), std::move(inst)});
  }
  return out;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("ANNEAL_LAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    throw ValidationError("ANNEAL_LAB_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::vector<NamedInstance>& instances,
                                const AnnealSchedule& schedule, std::size_t workers) {
  spec.validate();
  if (workers == 0) workers = default_worker_count();
  const std::size_t I = instances.size();
  const std::size_t G = spec.gauges;
  const std::size_t R = spec.runs_per_gauge;

  ExperimentResult result;
  result.ground.resize(I);
  std::vector<std::string> solve_error(I);
  parallel_for(I, workers, [&](std::size_t i) {
    try {
      result.ground[i] = chimera_dp_solve(instances[i].instance, spec.enum_cap, spec.width_budget);
    } catch (const std::exception& e) {
      solve_error[i] = e.what();
    }
  });

  // Slot k = (method * I + instance) * G + gauge.
  const std::size_t items = spec.methods.size() * I * G;
  std::vector<std::vector<RunRecord>> slots(items);
  std::vector<std::string> item_error(items);
  parallel_for(items, workers, [&](std::size_t k) {
    const std::size_t g = k % G;
    const std::size_t i = (k / G) % I;
    const MethodSpec& method = spec.methods[k / (G * I)];
    if (!solve_error[i].empty()) return;
    try {
      const NamedInstance& named = instances[i];
      const IsingInstance& ideal = named.instance;
      const double e0 = result.ground[i].ground_energy;
      Rng gauge_rng(hash64(spec.master_seed, {"gauge", named.id, static_cast<std::uint64_t>(g)}));
      const Gauge gauge = Gauge::random(ideal.size(), gauge_rng);
      Rng noise_rng(hash64(spec.master_seed, {"noise", named.id, static_cast<std::uint64_t>(g)}));
      IsingInstance programmed = perturb(apply_gauge(ideal, gauge), method.sigma, noise_rng);
      if (method.chi != 0.0) programmed = apply_crosstalk(programmed, method.chi);

      std::vector<RunRecord> runs;
      runs.reserve(R);
      for (std::size_t r = 0; r < R; ++r) {
        RunRecord rec;
        rec.instance = named.id;
        rec.method = method.label;
        rec.gauge = static_cast<std::uint32_t>(g);
        rec.run = static_cast<std::uint32_t>(r);
        rec.seed = hash64(spec.master_seed, {method.label, named.id, static_cast<std::uint64_t>(g),
                                             static_cast<std::uint64_t>(r)});
        rec.config = gauge_config(anneal_once(method, programmed, schedule, rec.seed), gauge);
        rec.energy = ising_energy(ideal, rec.config);
        rec.gap = energy_gap(ideal, rec.config, e0);
        runs.push_back(std::move(rec));
      }
      slots[k] = std::move(runs);
    } catch (const std::exception& e) {
      item_error[k] = e.what();
    }
  });

  for (std::size_t i = 0; i < I; ++i) {
    if (!solve_error[i].empty()) {
      result.failures.push_back({"", instances[i].id, -1, solve_error[i]});
      result.ground[i] = GroundSummary{};
    }
  }
  for (std::size_t k = 0; k < items; ++k) {
    if (!item_error[k].empty()) {
      result.failures.push_back({spec.methods[k / (G * I)].label, instances[(k / G) % I].id,
                                 static_cast<std::int64_t>(k % G), item_error[k]});
    }
    for (auto& rec : slots[k]) result.records.push_back(std::move(rec));
  }
  return result;
}

namespace {

std::vector<NamedInstance> resolve_instances(const ExperimentSpec& spec) {
  if (!spec.instances.directory.empty()) return load_instance_directory(spec.instances.directory);
  std::vector<VertexId> broken;
  if (!spec.instances.broken_file.empty()) broken = load_broken_mask(spec.instances.broken_file);
  return generate_instances(build_topology(spec.instances.topology, broken), spec.instances.count,
                            spec.instances.seed);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t workers) {
  spec.validate();
  if (spec.output.empty()) throw ValidationError("spec: 'output' directory is required");
  const auto instances = resolve_instances(spec);
  const AnnealSchedule schedule = spec.schedule.empty() ? default_schedule() : load_schedule(spec.schedule);
  ExperimentResult result = run_experiment(spec, instances, schedule, workers);

  const fs::path out(spec.output);
  std::error_code ec;
  fs::create_directories(out / "instances", ec);
  if (ec) throw IoError("cannot create '" + (out / "instances").string() + "': " + ec.message());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    save_instance((out / "instances" / (instances[i].id + ".ising")).string(), instances[i].instance);
    if (result.ground[i].degeneracy > 0) {
      save_ground_summary((out / "instances" / (instances[i].id + ".gs")).string(), result.ground[i]);
    }
  }

  {
    std::ofstream runs(out / "runs.jsonl", std::ios::binary | std::ios::trunc);
    if (!runs) throw IoError("cannot write '" + (out / "runs.jsonl").string() + "'");
    for (const auto& rec : result.records) runs << run_record_json(rec) << '\n';
    if (!runs) throw IoError("failed writing runs.jsonl");
  }

  nlohmann::ordered_json manifest;
  manifest["instances"] = instances.size();
  manifest["methods"] = nlohmann::ordered_json::array();
  for (const auto& m : spec.methods) manifest["methods"].push_back(method_json(m));
  manifest["gauges"] = spec.gauges;
  manifest["runs_per_gauge"] = spec.runs_per_gauge;
  manifest["master_seed"] = spec.master_seed;
  manifest["schedule"] = spec.schedule.empty() ? "default" : spec.schedule;
  manifest["records"] = result.records.size();
  manifest["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : result.failures) {
    nlohmann::ordered_json jf;
    jf["method"] = f.method;
    jf["instance"] = f.instance;
    jf["gauge"] = f.gauge;
    jf["message"] = f.message;
    manifest["failures"].push_back(jf);
  }
  std::ofstream mf(out / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!mf) throw IoError("cannot write manifest.json");
  mf << manifest.dump(2) << '\n';
  return result;
}

std::vector<WorkFailure> solve_directory(const std::string& directory, std::size_t enum_cap,
                                         std::size_t width_budget) {
  const auto instances = load_instance_directory(directory);
  std::vector<WorkFailure> failures;
  for (const auto& named : instances) {
    try {
      const GroundSummary gs = chimera_dp_solve(named.instance, enum_cap, width_budget);
      save_ground_summary((fs::path(directory) / (named.id + ".gs")).string(), gs);
    } catch (const ValidationError&) {
      throw;
    } catch (const BudgetError& e) {
      failures.push_back({"", named.id, -1, e.what()});
    }
  }
  return failures;
}

}  // namespace annealab
