// Copyright 2026 The brlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the brlab library.
 *
 * All functions return a brlab_status. On failure a message is available
 * from brlab_last_error() on the calling thread until the next call. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with brlab_string_free(). Labels, strategies and planes are
 * one-based in every string argument ("11,12", "B:1,2").
 */

#ifndef BRLAB_BRLAB_H_
#define BRLAB_BRLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(BRLAB_BUILDING_LIBRARY)
#define BRLAB_API __attribute__((visibility("default")))
#else
#define BRLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum brlab_status {
  BRLAB_OK = 0,
  BRLAB_INVALID_INPUT = 1,
  BRLAB_DEGENERATE_MATRIX = 2,
  BRLAB_NOT_ZERO_SUM_EQUIVALENT = 3,
  BRLAB_NO_INTERIOR_EQUILIBRIUM = 4,
  BRLAB_AT_EQUILIBRIUM = 5,
  BRLAB_OUTSIDE_SIMPLEX = 6,
  BRLAB_ON_INDIFFERENCE_PLANE = 7,
  BRLAB_NO_CROSSING = 8,
  BRLAB_DEGENERATE_CROSSING = 9,
  BRLAB_CONVERGED_TO_EQUILIBRIUM = 10,
  BRLAB_PARALLEL_FLOW = 11,
  BRLAB_ILLEGAL_LOOP = 12,
  BRLAB_WRONG_MODE = 13,
  BRLAB_EMPTY_PIECE = 14,
  BRLAB_NO_FIXED_POINT = 15,
  BRLAB_REALIZATION_NOT_FOUND = 16,
  BRLAB_THEOREM_VIOLATION = 17,
  BRLAB_INTERNAL_ERROR = 18
} brlab_status;

typedef enum brlab_mode { BRLAB_MODE_HAMILTONIAN = 0, BRLAB_MODE_BEST_RESPONSE = 1 } brlab_mode;

/* Clock used for the time fractions of best-response orbits. */
typedef enum brlab_time {
  BRLAB_TIME_FICTITIOUS_PLAY = 0,
  BRLAB_TIME_BEST_RESPONSE = 1
} brlab_time;

typedef struct brlab_game brlab_game;
typedef struct brlab_orbits brlab_orbits;

BRLAB_API const char* brlab_version(void);
BRLAB_API const char* brlab_status_name(brlab_status status);
BRLAB_API const char* brlab_last_error(void);
BRLAB_API void brlab_string_free(char* s);

/* Games. `tolerances` is NULL or "name=value[,name=value...]" with names
 * tie, simplex, interior, zero_sum, event_slack, min_step, renorm_drift and
 * values in [1e-15, 1e-3]. */
BRLAB_API brlab_status brlab_game_from_json(const char* json, const char* tolerances,
                                            brlab_game** out);
/* Row-major 3x3 matrices; b may be NULL for B = -A. */
BRLAB_API brlab_status brlab_game_from_matrix(const double a[9], const double* b,
                                              const char* tolerances, brlab_game** out);
BRLAB_API void brlab_game_free(brlab_game* game);
/* Equilibrium (p1, p2, p3, q1, q2, q3). */
BRLAB_API brlab_status brlab_game_equilibrium(const brlab_game* game, double out[6]);
BRLAB_API brlab_status brlab_game_hash(const brlab_game* game, char** out);

/* Transition diagram, conditions, short loops and class id as JSON. */
BRLAB_API brlab_status brlab_classify(const brlab_game* game, char** json);

/* Class atlas as JSON. With realize != 0 every class also gets a realizing
 * matrix found from `seed`. */
BRLAB_API brlab_status brlab_enumerate(int realize, uint64_t seed, char** json);

/* Integer matrix A (row-major) whose game (A, -A) lies in class_id. */
BRLAB_API brlab_status brlab_realize(int class_id, uint64_t seed, uint64_t max_attempts,
                                     double a_out[9], uint64_t* attempts_used);

/* Runs `count` orbits; orbit i uses seed ^ i. `initial` is NULL for random
 * starts or (p; q), which Hamiltonian mode projects onto H = 1. */
BRLAB_API brlab_status brlab_simulate(const brlab_game* game, brlab_mode mode, size_t count,
                                      size_t transitions, uint64_t seed,
                                      const double* initial, brlab_orbits** out);
BRLAB_API void brlab_orbits_free(brlab_orbits* orbits);
BRLAB_API size_t brlab_orbits_count(const brlab_orbits* orbits);
/* Number of events of orbit `index`. */
BRLAB_API brlab_status brlab_orbit_length(const brlab_orbits* orbits, size_t index,
                                          size_t* events);
/* Itinerary of orbit `index` as "11,12,...". */
BRLAB_API brlab_status brlab_orbit_itinerary(const brlab_orbits* orbits, size_t index,
                                             char** labels);
/* Event point k of orbit `index` and its accumulated time. */
BRLAB_API brlab_status brlab_orbit_event(const brlab_orbits* orbits, size_t index, size_t k,
                                         double point[6], double* time);

/* One JSON record per line: an orbit header followed by its events. */
BRLAB_API brlab_status brlab_orbits_to_jsonl(const brlab_game* game,
                                             const brlab_orbits* orbits, char** jsonl);
/* Fails with BRLAB_INVALID_INPUT when game is non-NULL and a record was
 * produced by a different game. */
BRLAB_API brlab_status brlab_orbits_from_jsonl(const char* jsonl, const brlab_game* game,
                                               brlab_orbits** out);

/* Ensemble statistics (stats.json). */
BRLAB_API brlab_status brlab_stats(const brlab_orbits* orbits, brlab_time time, char** json);

/* Poincare-section hits of every orbit on `plane` ("A:1,2"; NULL for all six
 * planes) as CSV, and the section charts as JSON. Either output may be NULL. */
BRLAB_API brlab_status brlab_sections(const brlab_game* game, const brlab_orbits* orbits,
                                      const char* plane, char** csv, char** charts_json);

/* Loop return map of a closed itinerary on `plane` (qp_report.json). */
BRLAB_API brlab_status brlab_detect_qp(const brlab_game* game, const char* itinerary,
                                       const char* plane, char** json);

typedef struct brlab_scan_options {
  double half_width; /* square half-width around the loop's fixed point */
  int grid;          /* grid x grid samples */
  uint64_t seed;
  size_t transitions;
  size_t max_period;
} brlab_scan_options;

BRLAB_API void brlab_scan_options_default(brlab_scan_options* opts);

/* Seeded grid scan for elliptic periodic islands around the fixed point of
 * the loop map of `itinerary` on `plane`. Result as JSON. */
BRLAB_API brlab_status brlab_scan_islands(const brlab_game* game, const char* itinerary,
                                          const char* plane, const brlab_scan_options* opts,
                                          char** json);

/* Runs the invariant suite; *passed is 1 when every property holds. */
BRLAB_API brlab_status brlab_verify(const brlab_game* game, uint64_t seed, char** json,
                                    int* passed);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* BRLAB_BRLAB_H_ */
