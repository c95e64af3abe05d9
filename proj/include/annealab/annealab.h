/* Copyright 2026 The annealab Authors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

/* C interface to annealab. Objects are opaque handles released with the
 * matching *_free function (NULL is accepted). Every fallible call returns
 * an al_status; on failure al_last_error() describes the problem for the
 * calling thread until its next failing call. */

#ifndef ANNEALAB_H_
#define ANNEALAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ANNEALAB_BUILDING_LIBRARY)
#define AL_API __attribute__((visibility("default")))
#else
#define AL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum al_status {
  AL_OK = 0,
  AL_ERR_INVALID = 1,  /* rejected input */
  AL_ERR_IO = 2,       /* file could not be read or written */
  AL_ERR_BUDGET = 3,   /* exact solver frontier over budget */
  AL_ERR_INTERNAL = 4, /* invariant violation; a bug */
  AL_ERR_PARTIAL = 5   /* completed with a failure manifest */
} al_status;

typedef struct al_topology al_topology;
typedef struct al_instance al_instance;
typedef struct al_schedule al_schedule;
typedef struct al_ground al_ground;

AL_API const char* al_last_error(void);
AL_API const char* al_version(void);
AL_API const char* al_status_name(al_status status);

/* Topology */
AL_API al_status al_topology_create(uint32_t rows, uint32_t cols, uint32_t shore,
                                    const uint32_t* broken, size_t broken_count, al_topology** out);
/* "MxNxL"; broken_file may be NULL. */
AL_API al_status al_topology_parse(const char* shape, const char* broken_file, al_topology** out);
AL_API size_t al_topology_working_count(const al_topology* topology);
AL_API size_t al_topology_edge_count(const al_topology* topology);
AL_API void al_topology_free(al_topology* topology);

/* Instances. Spin arrays hold one int8 (+1/-1) per working vertex. */
AL_API al_status al_instance_random(const al_topology* topology, uint64_t seed, al_instance** out);
AL_API al_status al_instance_load(const char* path, al_instance** out);
AL_API al_status al_instance_save(const al_instance* instance, const char* path);
AL_API size_t al_instance_size(const al_instance* instance);
AL_API al_status al_instance_energy(const al_instance* instance, const int8_t* spins, size_t n,
                                    double* energy);
/* Gauge with signs a (one int8 per working vertex). */
AL_API al_status al_instance_gauge(const al_instance* instance, const int8_t* signs, size_t n,
                                   al_instance** out);
AL_API void al_instance_free(al_instance* instance);

/* Exact ground states */
AL_API al_status al_solve(const al_instance* instance, size_t enum_cap, size_t width_budget,
                          al_ground** out);
AL_API al_status al_solve_brute_force(const al_instance* instance, al_ground** out);
AL_API double al_ground_energy(const al_ground* ground);
AL_API uint64_t al_ground_degeneracy(const al_ground* ground);
AL_API int al_ground_truncated(const al_ground* ground);
AL_API size_t al_ground_count(const al_ground* ground);
AL_API al_status al_ground_config(const al_ground* ground, size_t index, int8_t* spins, size_t n);
AL_API al_status al_ground_save(const al_ground* ground, const char* path);
AL_API void al_ground_free(al_ground* ground);

/* Schedules */
AL_API al_status al_schedule_default(al_schedule** out);
AL_API al_status al_schedule_load(const char* path, al_schedule** out);
AL_API al_status al_schedule_save(const al_schedule* schedule, const char* path);
AL_API al_status al_schedule_evaluate(const al_schedule* schedule, double s, double* A, double* B);
AL_API size_t al_schedule_rows(const al_schedule* schedule);
AL_API size_t al_schedule_warning_count(const al_schedule* schedule);
AL_API const char* al_schedule_warning(const al_schedule* schedule, size_t index);
AL_API void al_schedule_free(al_schedule* schedule);

/* Single anneals */
typedef struct al_sssv_params {
  double temperature_mK;
  uint64_t sweeps;
  uint64_t seed;
  int random_order;
  int per_qubit_schedule;
} al_sssv_params;

typedef struct al_sqa_params {
  double temperature_mK;
  uint64_t sweeps;
  uint32_t trotter_slices;
  uint64_t seed;
  int best_slice;  /* readout: 0 random slice, 1 lowest-energy slice */
  int local_only;  /* 1 disables imaginary-time cluster moves */
  int per_qubit_schedule;
} al_sqa_params;

AL_API void al_sssv_params_default(al_sssv_params* params);
AL_API void al_sqa_params_default(al_sqa_params* params);
AL_API al_status al_sssv_anneal(const al_instance* instance, const al_schedule* schedule,
                                const al_sssv_params* params, int8_t* spins, size_t n, double* energy);
AL_API al_status al_sqa_anneal(const al_instance* instance, const al_schedule* schedule,
                               const al_sqa_params* params, int8_t* spins, size_t n, double* energy);

/* Pipelines. failures (may be NULL) receives the failure-manifest size;
 * a non-empty manifest yields AL_ERR_PARTIAL. */
AL_API al_status al_generate_instances(const char* shape, const char* broken_file, size_t count,
                                       uint64_t seed, const char* directory);
AL_API al_status al_solve_directory(const char* directory, size_t enum_cap, size_t width_budget,
                                    size_t* failures);
/* output NULL keeps the experiment file's own; workers 0 = default. */
AL_API al_status al_run_experiment(const char* spec_path, const char* output, size_t workers,
                                   size_t* failures);

typedef struct al_compare_options {
  const char* runs_x;
  const char* method_x;  /* NULL or "" when the file holds one method */
  const char* runs_y;    /* NULL: compare gauge halves of runs_x */
  const char* method_y;
  const char* instances; /* directory with .ising and .gs files */
  const char* output;
  uint32_t split_gauge;  /* used when runs_y is NULL */
  size_t bootstraps;
  uint64_t seed;
  uint64_t degeneracy_max;
} al_compare_options;

AL_API void al_compare_options_default(al_compare_options* options);
/* pearson (may be NULL) receives the success-probability correlation over
 * all instances, NaN when undefined. */
AL_API al_status al_compare(const al_compare_options* options, double* pearson);

#ifdef __cplusplus
}
#endif

#endif /* ANNEALAB_H_ */
