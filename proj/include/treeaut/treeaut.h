/* Copyright 2026 The treeaut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the treeaut library: automorphisms of the d-regular tree
 * as opaque handles, words in the free product Gamma * Z, and the
 * reproducible experiment harness.
 *
 * Conventions:
 *  - every function returning int yields TA_OK (0) on success; on failure
 *    it returns an error code and ta_last_error() carries a message
 *    (thread-local, valid until the next failing call on the thread);
 *  - strings returned through char** are heap-allocated; release them with
 *    ta_string_free;
 *  - vertex literals look like "o", "o.1.2"; edge literals like "o.1:2";
 *  - handles are immutable and safe to share across threads.
 */

#ifndef TREEAUT_TREEAUT_H
#define TREEAUT_TREEAUT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TA_OK 0
#define TA_ERR_INVALID_ARGUMENT 1
#define TA_ERR_RUNTIME 2

typedef struct ta_aut ta_aut;
typedef struct ta_word ta_word;
typedef struct ta_assignment ta_assignment;

const char* ta_version(void);
const char* ta_last_error(void);
void ta_string_free(char* s);

/* ------------------------------------------------------------------ *
 * automorphisms                                                       *
 * ------------------------------------------------------------------ */

int ta_aut_identity(int d, ta_aut** out);
/* {"d": 3, "entries": {"o": [1,0,2], ...}}; absent vertices mean identity;
 * non-root entries must fix color 0. */
int ta_aut_from_portrait_json(const char* json, ta_aut** out);
/* Haar-random element of the base-vertex stabilizer, lazily evaluated as a
 * pure function of (seed, vertex). */
int ta_aut_haar_rooted(int d, uint64_t seed, ta_aut** out);
/* Haar-random element conditioned to move the base vertex to `vertex`. */
int ta_aut_haar_at(int d, const char* vertex, uint64_t seed, ta_aut** out);
/* The canonical coset representative moving the base vertex to `vertex`. */
int ta_aut_section(int d, const char* vertex, ta_aut** out);
int ta_aut_compose(const ta_aut* a, const ta_aut* b, ta_aut** out);
int ta_aut_inverse(const ta_aut* a, ta_aut** out);
void ta_aut_free(ta_aut* a);

int ta_aut_d(const ta_aut* a);
int ta_aut_image_vertex(const ta_aut* a, const char* vertex, char** out);
int ta_aut_image_edge(const ta_aut* a, const char* edge, char** out);
/* One-line images of the local permutation cocycle at a vertex; `images`
 * must hold at least d ints. */
int ta_aut_local_perm(const ta_aut* a, const char* vertex, int* images,
                      size_t len);
int ta_aut_target(const ta_aut* a, char** out);
int ta_aut_equal_to_depth(const ta_aut* a, const ta_aut* b, int depth,
                          int* out);
int ta_aut_displacement(const ta_aut* a, const char* vertex, int* out);
/* {"kind": "elliptic|inversion|hyperbolic", "delta": n, "witness": "..."} */
int ta_aut_classify_json(const ta_aut* a, char** out);
/* Fixed tree of an elliptic element truncated at `depth`, with offspring
 * statistics: {"witness": ..., "fixed": [...], "hit_boundary": ...,
 * "offspring": {...}} */
int ta_aut_fixtree_json(const ta_aut* a, int depth, char** out);
/* Portrait of a rooted element flattened to `depth`. */
int ta_aut_portrait_json(const ta_aut* a, int depth, char** out);

/* Portrait of a fresh Haar-random rooted element, without a handle. */
int ta_sample_portrait_json(int d, int depth, uint64_t seed, char** out);

/* ------------------------------------------------------------------ *
 * words                                                               *
 * ------------------------------------------------------------------ */

/* Literal: whitespace-separated tokens t, t^-1, g<k>, g<k>^-1. The parsed
 * word is in canonical normal form. */
int ta_word_parse(const char* literal, ta_word** out);
int ta_word_literal(const ta_word* w, char** out);
int ta_word_cyclic_reduce(const ta_word* w, ta_word** out);
void ta_word_free(ta_word* w);

/* {"d":3, "generators":[{"portrait":{...}} | {"portrait_file":"f.json"} |
 *  {"haar_at":"o.1","seed":7} | {"section":"o.1"}], "t":{...}} */
int ta_assignment_from_json(const char* json, ta_assignment** out);
void ta_assignment_free(ta_assignment* a);

int ta_word_evaluate(const ta_word* w, const ta_assignment* asg, ta_aut** out);
/* Evaluation, classification, base trace, certification radius, sphere
 * traces and special indices, as one JSON report. */
int ta_word_report_json(const ta_word* w, const ta_assignment* asg, int depth,
                        char** out);

/* ------------------------------------------------------------------ *
 * experiments                                                         *
 * ------------------------------------------------------------------ */

typedef void (*ta_record_callback)(const char* record_json, void* user_data);

/* config: {"experiment": "haar-gof|gw|eta-verify|cocycle-uniformity|
 * almost-free", ...parameters...}. Emits per-sample records through the
 * callback in sample order (callback may be NULL) and returns the summary;
 * the summary's "pass" field carries the experiment-level verdict. */
int ta_experiment_run(const char* config_json, ta_record_callback cb,
                      void* user_data, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* TREEAUT_TREEAUT_H */
