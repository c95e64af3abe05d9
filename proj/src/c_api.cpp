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

#include "annealab/annealab.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "annealab/compare.hpp"
#include "annealab/exact.hpp"
#include "annealab/experiment.hpp"
#include "annealab/io.hpp"
#include "annealab/schedule.hpp"
#include "annealab/seeds.hpp"
#include "annealab/sqa.hpp"
#include "annealab/sssv.hpp"

struct al_topology {
  annealab::TopologyPtr ptr;
};
struct al_instance {
  annealab::IsingInstance value;
};
struct al_schedule {
  annealab::AnnealSchedule value;
};
struct al_ground {
  annealab::GroundSummary value;
};

namespace {

thread_local std::string g_last_error;

al_status fail(al_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps the exception taxonomy of the C++ core onto status codes.
template <typename F>
al_status guarded(F&& body) {
  try {
    return body();
  } catch (const annealab::ValidationError& e) {
    return fail(AL_ERR_INVALID, e.what());
  } catch (const annealab::IoError& e) {
    return fail(AL_ERR_IO, e.what());
  } catch (const annealab::BudgetError& e) {
    return fail(AL_ERR_BUDGET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AL_ERR_INTERNAL, "unknown error");
  }
}

#define AL_REQUIRE(cond, what) \
  if (!(cond)) return fail(AL_ERR_INVALID, what)

annealab::SpinConfig read_spins(const int8_t* spins, size_t n, size_t expected) {
  if (n != expected) {
    throw annealab::ValidationError("spin array has " + std::to_string(n) + " entries, expected " +
                                    std::to_string(expected));
  }
  annealab::SpinConfig c(std::vector<std::int8_t>(spins, spins + n));
  for (auto s : c.spins) {
    if (s != 1 && s != -1) throw annealab::ValidationError("spins must be +1 or -1");
  }
  return c;
}

void write_spins(const annealab::SpinConfig& c, int8_t* out, size_t n) {
  if (n != c.size()) throw annealab::ValidationError("output spin array has the wrong length");
  std::copy(c.spins.begin(), c.spins.end(), out);
}

std::string text(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* al_last_error(void) { return g_last_error.c_str(); }

const char* al_version(void) { return "0.1.0"; }

const char* al_status_name(al_status status) {
  switch (status) {
    case AL_OK: return "ok";
    case AL_ERR_INVALID: return "invalid";
    case AL_ERR_IO: return "io";
    case AL_ERR_BUDGET: return "budget";
    case AL_ERR_INTERNAL: return "internal";
    case AL_ERR_PARTIAL: return "partial";
  }
  return "unknown";
}

al_status al_topology_create(uint32_t rows, uint32_t cols, uint32_t shore, const uint32_t* broken,
                             size_t broken_count, al_topology** out) {
  AL_REQUIRE(out, "out is NULL");
  AL_REQUIRE(broken || broken_count == 0, "broken is NULL");
  return guarded([&] {
    std::vector<annealab::VertexId> mask(broken, broken + broken_count);
    *out = new al_topology{annealab::build_topology(rows, cols, shore, std::move(mask))};
    return AL_OK;
  });
}

al_status al_topology_parse(const char* shape, const char* broken_file, al_topology** out) {
  AL_REQUIRE(shape && out, "shape or out is NULL");
  return guarded([&] {
    std::vector<annealab::VertexId> mask;
    if (broken_file && *broken_file) mask = annealab::load_broken_mask(broken_file);
    *out = new al_topology{annealab::build_topology(std::string(shape), std::move(mask))};
    return AL_OK;
  });
}

size_t al_topology_working_count(const al_topology* topology) {
  return topology ? topology->ptr->working_count() : 0;
}

size_t al_topology_edge_count(const al_topology* topology) {
  return topology ? topology->ptr->edges().size() : 0;
}

void al_topology_free(al_topology* topology) { delete topology; }

al_status al_instance_random(const al_topology* topology, uint64_t seed, al_instance** out) {
  AL_REQUIRE(topology && out, "topology or out is NULL");
  return guarded([&] {
    annealab::Rng rng(seed);
    *out = new al_instance{annealab::random_instance(topology->ptr, rng)};
    return AL_OK;
  });
}

al_status al_instance_load(const char* path, al_instance** out) {
  AL_REQUIRE(path && out, "path or out is NULL");
  return guarded([&] {
    *out = new al_instance{annealab::load_instance(path)};
    return AL_OK;
  });
}

al_status al_instance_save(const al_instance* instance, const char* path) {
  AL_REQUIRE(instance && path, "instance or path is NULL");
  return guarded([&] {
    annealab::save_instance(path, instance->value);
    return AL_OK;
  });
}

size_t al_instance_size(const al_instance* instance) { return instance ? instance->value.size() : 0; }

al_status al_instance_energy(const al_instance* instance, const int8_t* spins, size_t n, double* energy) {
  AL_REQUIRE(instance && spins && energy, "NULL argument");
  return guarded([&] {
    *energy = annealab::ising_energy(instance->value, read_spins(spins, n, instance->value.size()));
    return AL_OK;
  });
}

al_status al_instance_gauge(const al_instance* instance, const int8_t* signs, size_t n, al_instance** out) {
  AL_REQUIRE(instance && signs && out, "NULL argument");
  return guarded([&] {
    const annealab::Gauge gauge{read_spins(signs, n, instance->value.size()).spins};
    *out = new al_instance{annealab::apply_gauge(instance->value, gauge)};
    return AL_OK;
  });
}

void al_instance_free(al_instance* instance) { delete instance; }

al_status al_solve(const al_instance* instance, size_t enum_cap, size_t width_budget, al_ground** out) {
  AL_REQUIRE(instance && out, "instance or out is NULL");
  return guarded([&] {
    *out = new al_ground{annealab::chimera_dp_solve(instance->value, enum_cap, width_budget)};
    return AL_OK;
  });
}

al_status al_solve_brute_force(const al_instance* instance, al_ground** out) {
  AL_REQUIRE(instance && out, "instance or out is NULL");
  return guarded([&] {
    *out = new al_ground{annealab::brute_force_solve(instance->value)};
    return AL_OK;
  });
}

double al_ground_energy(const al_ground* ground) {
  return ground ? ground->value.ground_energy : std::numeric_limits<double>::quiet_NaN();
}

uint64_t al_ground_degeneracy(const al_ground* ground) { return ground ? ground->value.degeneracy : 0; }

int al_ground_truncated(const al_ground* ground) { return ground && ground->value.truncated ? 1 : 0; }

size_t al_ground_count(const al_ground* ground) { return ground ? ground->value.ground_set.size() : 0; }

al_status al_ground_config(const al_ground* ground, size_t index, int8_t* spins, size_t n) {
  AL_REQUIRE(ground && spins, "ground or spins is NULL");
  AL_REQUIRE(index < ground->value.ground_set.size(), "ground configuration index out of range");
  return guarded([&] {
    write_spins(ground->value.ground_set[index], spins, n);
    return AL_OK;
  });
}

al_status al_ground_save(const al_ground* ground, const char* path) {
  AL_REQUIRE(ground && path, "ground or path is NULL");
  return guarded([&] {
    annealab::save_ground_summary(path, ground->value);
    return AL_OK;
  });
}

void al_ground_free(al_ground* ground) { delete ground; }

al_status al_schedule_default(al_schedule** out) {
  AL_REQUIRE(out, "out is NULL");
  return guarded([&] {
    *out = new al_schedule{annealab::default_schedule()};
    return AL_OK;
  });
}

al_status al_schedule_load(const char* path, al_schedule** out) {
  AL_REQUIRE(path && out, "path or out is NULL");
  return guarded([&] {
    *out = new al_schedule{annealab::load_schedule(path)};
    return AL_OK;
  });
}

al_status al_schedule_save(const al_schedule* schedule, const char* path) {
  AL_REQUIRE(schedule && path, "schedule or path is NULL");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw annealab::IoError(std::string("cannot write '") + path + "'");
    annealab::write_schedule(out, schedule->value);
    if (!out) throw annealab::IoError(std::string("failed writing '") + path + "'");
    return AL_OK;
  });
}

al_status al_schedule_evaluate(const al_schedule* schedule, double s, double* A, double* B) {
  AL_REQUIRE(schedule && A && B, "NULL argument");
  return guarded([&] {
    const auto v = schedule->value.evaluate(s);
    *A = v.A;
    *B = v.B;
    return AL_OK;
  });
}

size_t al_schedule_rows(const al_schedule* schedule) { return schedule ? schedule->value.rows() : 0; }

size_t al_schedule_warning_count(const al_schedule* schedule) {
  return schedule ? schedule->value.warnings().size() : 0;
}

const char* al_schedule_warning(const al_schedule* schedule, size_t index) {
  if (!schedule || index >= schedule->value.warnings().size()) return nullptr;
  return schedule->value.warnings()[index].c_str();
}

void al_schedule_free(al_schedule* schedule) { delete schedule; }

void al_sssv_params_default(al_sssv_params* params) {
  if (!params) return;
  const annealab::SSSVParams d;
  *params = {d.temperature_mK, d.sweeps, d.seed, 0, 0};
}

void al_sqa_params_default(al_sqa_params* params) {
  if (!params) return;
  const annealab::SQAParams d;
  *params = {d.temperature_mK, d.sweeps, d.trotter_slices, d.seed, 0, 0, 0};
}

al_status al_sssv_anneal(const al_instance* instance, const al_schedule* schedule, const al_sssv_params* params,
                         int8_t* spins, size_t n, double* energy) {
  AL_REQUIRE(instance && schedule && params && spins, "NULL argument");
  return guarded([&] {
    annealab::SSSVParams p;
    p.temperature_mK = params->temperature_mK;
    p.sweeps = params->sweeps;
    p.seed = params->seed;
    p.order = params->random_order ? annealab::SweepOrder::RandomPermutation : annealab::SweepOrder::Sequential;
    p.per_qubit_schedule = params->per_qubit_schedule != 0;
    const auto rec = annealab::sssv_anneal(instance->value, schedule->value, p);
    write_spins(rec.config, spins, n);
    if (energy) *energy = rec.energy;
    return AL_OK;
  });
}

al_status al_sqa_anneal(const al_instance* instance, const al_schedule* schedule, const al_sqa_params* params,
                        int8_t* spins, size_t n, double* energy) {
  AL_REQUIRE(instance && schedule && params && spins, "NULL argument");
  return guarded([&] {
    annealab::SQAParams p;
    p.temperature_mK = params->temperature_mK;
    p.sweeps = params->sweeps;
    p.trotter_slices = params->trotter_slices;
    p.seed = params->seed;
    p.readout = params->best_slice ? annealab::ReadoutPolicy::BestSlice : annealab::ReadoutPolicy::RandomSlice;
    p.update = params->local_only ? annealab::UpdatePolicy::Local : annealab::UpdatePolicy::LocalAndCluster;
    p.per_qubit_schedule = params->per_qubit_schedule != 0;
    const auto rec = annealab::sqa_anneal(instance->value, schedule->value, p);
    write_spins(rec.config, spins, n);
    if (energy) *energy = rec.energy;
    return AL_OK;
  });
}

al_status al_generate_instances(const char* shape, const char* broken_file, size_t count, uint64_t seed,
                                const char* directory) {
  AL_REQUIRE(shape && directory, "shape or directory is NULL");
  AL_REQUIRE(count >= 1, "count must be >= 1");
  return guarded([&] {
    std::vector<annealab::VertexId> mask;
    if (broken_file && *broken_file) mask = annealab::load_broken_mask(broken_file);
    const auto topology = annealab::build_topology(std::string(shape), std::move(mask));
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw annealab::IoError(std::string("cannot create '") + directory + "': " + ec.message());
    for (const auto& named : annealab::generate_instances(topology, count, seed)) {
      annealab::save_instance((std::filesystem::path(directory) / (named.id + ".ising")).string(), named.instance);
    }
    return AL_OK;
  });
}

al_status al_solve_directory(const char* directory, size_t enum_cap, size_t width_budget, size_t* failures) {
  AL_REQUIRE(directory, "directory is NULL");
  return guarded([&] {
    const auto f = annealab::solve_directory(directory, enum_cap, width_budget);
    if (failures) *failures = f.size();
    if (f.empty()) return AL_OK;
    std::string msg = std::to_string(f.size()) + " instance(s) not solved";
    for (const auto& w : f) msg += "\n  " + w.instance + ": " + w.message;
    return fail(AL_ERR_PARTIAL, msg);
  });
}

al_status al_run_experiment(const char* spec_path, const char* output, size_t workers, size_t* failures) {
  AL_REQUIRE(spec_path, "spec_path is NULL");
  return guarded([&] {
    auto spec = annealab::load_experiment_spec(spec_path);
    if (output && *output) spec.output = output;
    const auto result = annealab::run_experiment(spec, workers);
    if (failures) *failures = result.failures.size();
    if (result.failures.empty()) return AL_OK;
    return fail(AL_ERR_PARTIAL, std::to_string(result.failures.size()) +
                                    " work item(s) failed; see manifest.json in " + spec.output);
  });
}

void al_compare_options_default(al_compare_options* options) {
  if (!options) return;
  const annealab::CompareOptions d;
  *options = {nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, 0, d.bootstraps, d.seed, d.degeneracy_max};
}

al_status al_compare(const al_compare_options* options, double* pearson) {
  AL_REQUIRE(options && options->runs_x && options->instances && options->output,
             "compare needs runs_x, instances and output");
  return guarded([&] {
    annealab::CompareRequest req;
    req.runs_x = options->runs_x;
    req.method_x = text(options->method_x);
    req.runs_y = text(options->runs_y);
    req.method_y = text(options->method_y);
    req.instances = options->instances;
    req.output = options->output;
    if (options->split_gauge > 0) req.split_gauge = options->split_gauge;
    req.options.bootstraps = options->bootstraps;
    req.options.seed = options->seed;
    req.options.degeneracy_max = options->degeneracy_max;
    const auto report = annealab::run_compare(req);
    if (pearson) *pearson = report.pearson_all;
    return AL_OK;
  });
}

}  // extern "C"
