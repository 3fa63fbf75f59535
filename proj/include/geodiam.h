/* geodiam — exact diameter toolkit for geometric graphs.
 *
 * C API over the C++ core: opaque handles, integer status codes, and JSON
 * report strings.  All handles are independent; functions are safe to call
 * concurrently on distinct handles.  Error detail strings are thread-local.
 */
#ifndef GEODIAM_H
#define GEODIAM_H

#include <stdint.h>

#if defined(_WIN32)
#define GEODIAM_API __declspec(dllexport)
#else
#define GEODIAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geodiam_status {
  GEODIAM_OK = 0,
  GEODIAM_ERR_INVALID_ARGUMENT = 1,
  GEODIAM_ERR_DISCONNECTED = 2,
  GEODIAM_ERR_BUDGET_EXCEEDED = 3,
  GEODIAM_ERR_IO = 4,
  GEODIAM_ERR_PARSE = 5,
  GEODIAM_ERR_INTERNAL = 6
} geodiam_status;

typedef enum geodiam_space_kind {
  GEODIAM_SPACE_SQUARE = 0,
  GEODIAM_SPACE_TORUS = 1
} geodiam_space_kind;

typedef enum geodiam_algo {
  GEODIAM_ALGO_FRAMEWORK = 0,
  GEODIAM_ALGO_IFUB = 1,
  GEODIAM_ALGO_NAIVE = 2
} geodiam_algo;

/* Opaque handles. */
typedef struct geodiam_graph geodiam_graph;
typedef struct geodiam_report geodiam_report;

GEODIAM_API const char* geodiam_version(void);

/* Human-readable description of a status code. */
GEODIAM_API const char* geodiam_status_message(geodiam_status status);

/* Detail message of the most recent failure on this thread ("" when none). */
GEODIAM_API const char* geodiam_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

typedef struct geodiam_rgg_params {
  uint32_t n;
  double rho;        /* connection radius r = n^rho; ignored when radius > 0 */
  double radius;     /* explicit radius; set <= 0 to use rho */
  geodiam_space_kind kind;
  uint64_t seed;
} geodiam_rgg_params;

GEODIAM_API geodiam_status geodiam_generate(const geodiam_rgg_params* params,
                                            geodiam_graph** out);

/* Test hook: explicit coordinates (x,y interleaved, 2*n doubles) connected
 * under the threshold rule. */
GEODIAM_API geodiam_status geodiam_graph_from_points(geodiam_space_kind kind,
                                                     double side, const double* xy,
                                                     uint32_t n, double radius,
                                                     geodiam_graph** out);

GEODIAM_API geodiam_status geodiam_graph_read(const char* path, geodiam_graph** out);
GEODIAM_API geodiam_status geodiam_graph_write(const geodiam_graph* g, const char* path);
GEODIAM_API void geodiam_graph_free(geodiam_graph* g);

GEODIAM_API uint32_t geodiam_graph_n(const geodiam_graph* g);
GEODIAM_API uint64_t geodiam_graph_m(const geodiam_graph* g);
GEODIAM_API geodiam_space_kind geodiam_graph_kind(const geodiam_graph* g);
GEODIAM_API double geodiam_graph_side(const geodiam_graph* g);
GEODIAM_API uint32_t geodiam_graph_max_degree(const geodiam_graph* g);
GEODIAM_API int geodiam_graph_is_connected(const geodiam_graph* g);

/* ---- diameter -------------------------------------------------------- */

typedef struct geodiam_diameter_options {
  geodiam_algo algo;
  int32_t leaf_level;     /* < 0: default leaf level (cell side >= 8r) */
  double radius_hint;     /* <= 0: inferred from the longest edge */
  int64_t k;              /* <= 0: driver doubles k from the max leaf size */
  uint64_t budget;        /* forced-decide mode: hard budget (0 = unlimited);
                             compute mode: initial budget of the doubling
                             search (0 = default) */
  int64_t decide_ell;     /* > 0: run a single decide at this guess */
  uint32_t ifub_center;   /* fixed center for GEODIAM_ALGO_IFUB */
  int ifub_use_two_sweep; /* nonzero: 2-sweep center from ifub_start */
  uint32_t ifub_start;
} geodiam_diameter_options;

/* Fills *options with defaults (framework, default leaf level, 2-sweep). */
GEODIAM_API void geodiam_diameter_options_init(geodiam_diameter_options* options);

/* Computes the exact diameter.  On success *out holds a report; its JSON
 * carries the algorithm-specific work counters. */
GEODIAM_API geodiam_status geodiam_diameter(const geodiam_graph* g,
                                            const geodiam_diameter_options* options,
                                            geodiam_report** out);

/* ---- property reports ------------------------------------------------ */

typedef struct geodiam_properties_options {
  /* Comma-separated selection out of: 1,2,3,4,5,stretch,concentration */
  const char* properties;
  int32_t leaf_level;  /* < 0: default */
  double radius_hint;  /* <= 0: inferred */
  uint64_t seed;
  const char* instance_label; /* NULL: derived from the graph */
} geodiam_properties_options;

GEODIAM_API void geodiam_properties_options_init(geodiam_properties_options* options);

GEODIAM_API geodiam_status geodiam_properties(const geodiam_graph* g,
                                              const geodiam_properties_options* options,
                                              geodiam_report** out);

/* ---- reports --------------------------------------------------------- */

/* JSON body of the report; owned by the report handle. */
GEODIAM_API const char* geodiam_report_json(const geodiam_report* report);

/* Diameter carried by a diameter report (-1 for property reports). */
GEODIAM_API int64_t geodiam_report_diameter(const geodiam_report* report);

/* Total work counter of a diameter report (0 for property reports). */
GEODIAM_API uint64_t geodiam_report_total_ops(const geodiam_report* report);

GEODIAM_API void geodiam_report_free(geodiam_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GEODIAM_H */
