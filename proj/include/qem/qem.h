/* Copyright 2026 The QEM Bounds Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QEM_QEM_H_
#define QEM_QEM_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QEM_BUILDING_LIBRARY)
#define QEM_API __attribute__((visibility("default")))
#else
#define QEM_API
#endif

typedef enum qem_status {
  QEM_OK = 0,
  QEM_INVALID_ARGUMENT = 10,
  QEM_DIMENSION_MISMATCH = 11,
  QEM_NOT_HERMITIAN = 12,
  QEM_NOT_UNIT_TRACE = 13,
  QEM_NOT_POSITIVE = 14,
  QEM_NOT_UNITARY = 15,
  QEM_NOT_TRACE_PRESERVING = 16,
  QEM_INVALID_RATE = 17,
  QEM_INVALID_DIMENSION = 18,
  QEM_DIMENSION_NOT_POWER_OF_TWO = 19,
  QEM_PRODUCT_TOO_LARGE = 20,
  QEM_SINGULAR_BASIS = 21,
  QEM_NOT_INVERTIBLE_CHANNEL = 22,
  QEM_DUPLICATE_NODES = 23,
  QEM_BOOST_OUT_OF_RANGE = 24,
  QEM_NOT_INVOLUTION = 25,
  QEM_DOMINANT_EIGENVALUE_TOO_SMALL = 26,
  QEM_INVALID_SPREAD = 27,
  QEM_INVALID_SHOTS = 28,
  QEM_UNKNOWN_PARAMETER = 29,
  QEM_EMPTY_GRID = 30,
  QEM_VACUOUS_BOUND = 31,
  QEM_PARSE_ERROR = 32,
  QEM_NEGATIVE_RADICAND = 50,
  QEM_SUPPORT_VIOLATION = 51,
  QEM_NUMERICAL_MISMATCH = 52,
  QEM_IO_ERROR = 60,
  QEM_INTERNAL = 99
} qem_status;

typedef struct qem_config qem_config;
typedef struct qem_result qem_result;
typedef struct qem_state qem_state;
typedef struct qem_channel qem_channel;

QEM_API const char* qem_version(void);
QEM_API const char* qem_status_name(qem_status status);
/* Nonzero for statuses that signal numerical corruption. */
QEM_API int qem_status_is_numerical(qem_status status);
/* Message of the last failure on the calling thread; never NULL. */
QEM_API const char* qem_last_error(void);
QEM_API void qem_string_free(char* s);

/* Run configuration. Values are validated and defaults filled on entry. */
QEM_API qem_status qem_config_new(qem_config** out);
QEM_API qem_status qem_config_parse(const char* json_text, qem_config** out);
/* Dotted path such as "shape.b_max"; the text is coerced to the key's type
   and shorthand ("dephasing:0.1", "1,1,1", "1:10") is expanded. */
QEM_API qem_status qem_config_set(qem_config* cfg, const char* path, const char* value);
QEM_API qem_status qem_config_set_json(qem_config* cfg, const char* path, const char* json_value);
/* Nonzero when path was given explicitly (parsed text or a set call). */
QEM_API int qem_config_has(const qem_config* cfg, const char* path);
/* String values verbatim, anything else as JSON text. */
QEM_API qem_status qem_config_get(const qem_config* cfg, const char* path, char** out);
QEM_API qem_status qem_config_to_json(const qem_config* cfg, char** out);
QEM_API void qem_config_free(qem_config* cfg);

QEM_API qem_status qem_run(const qem_config* cfg, qem_result** out);
QEM_API qem_status qem_sweep(const qem_config* cfg, qem_result** out);
QEM_API const char* qem_result_text(const qem_result* result);
/* "json" or "csv". */
QEM_API const char* qem_result_format(const qem_result* result);
/* Nonzero when a numerical check inside the report failed. */
QEM_API int qem_result_numerical_flag(const qem_result* result);
/* Writes through a temporary file and rename; "-" writes to stdout. */
QEM_API qem_status qem_result_write(const qem_result* result, const char* path);
QEM_API void qem_result_free(qem_result* result);

/* "zero", "plus", ..., "haar:<seed>" or "mixed" on the given qubit count. */
QEM_API qem_status qem_state_named(const char* name, size_t qubits, qem_state** out);
/* dim*dim complex entries, row-major, interleaved re/im. */
QEM_API qem_status qem_state_from_entries(const double* re_im, size_t dim, qem_state** out);
QEM_API size_t qem_state_dim(const qem_state* state);
QEM_API void qem_state_free(qem_state* state);

/* "model:rate[:qubits_or_dim]", e.g. "dephasing:0.1". */
QEM_API qem_status qem_channel_standard(const char* spec, qem_channel** out);
QEM_API qem_status qem_channel_apply(const qem_channel* ch, const qem_state* in, qem_state** out);
QEM_API void qem_channel_free(qem_channel* ch);

QEM_API qem_status qem_trace_distance(const qem_state* a, const qem_state* b, double* out);
QEM_API qem_status qem_fidelity(const qem_state* a, const qem_state* b, double* out);
QEM_API qem_status qem_sub_fidelity(const qem_state* a, const qem_state* b, double* out);
/* Bits; +infinity when the support condition fails. */
QEM_API qem_status qem_relative_entropy(const qem_state* a, const qem_state* b, double* out);

/* Best bound over the preset witness pairs for the same channel on every
   (k, q) slot. */
QEM_API qem_status qem_spread_bound(const qem_channel* ch, size_t inputs, size_t experiments,
                                    double max_bias, const char* relaxation, double* out);
QEM_API qem_status qem_layered_bound(size_t qubits, size_t inputs, size_t experiments,
                                     double max_bias, const double* rates, size_t rate_count,
                                     size_t depth, double* out);
QEM_API qem_status qem_hoeffding_samples(double spread, double delta, double failure_prob,
                                         uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* QEM_QEM_H_ */
