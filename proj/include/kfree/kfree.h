// Copyright 2026 The kfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KFREE_KFREE_H_
#define KFREE_KFREE_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KFREE_API __declspec(dllexport)
#else
#define KFREE_API __attribute__((visibility("default")))
#endif

typedef enum kfree_status {
  KFREE_OK = 0,
  KFREE_E_DOMAIN = 1,       /* argument outside the domain; also null pointers */
  KFREE_E_SIZE = 2,         /* enumeration guard exceeded */
  KFREE_E_IO = 3,           /* file could not be read or written */
  KFREE_E_CORRUPT = 4,      /* persisted data failed validation */
  KFREE_E_VERSION = 5,      /* unsupported schema version */
  KFREE_E_INFEASIBLE = 6,   /* no object satisfies the constraints */
  KFREE_E_UNSUPPORTED = 7,  /* case deliberately not covered */
  KFREE_E_UNDEFINED = 8,    /* mathematically undefined value */
  KFREE_E_INTERNAL = 9      /* unexpected failure, e.g. out of memory */
} kfree_status;

/* Message of the last failure on the calling thread ("" after success). */
KFREE_API const char* kfree_last_error(void);
KFREE_API const char* kfree_status_name(kfree_status status);
KFREE_API const char* kfree_version(void);
KFREE_API const char* kfree_rng_id(void);

/* Strings are returned through (buf, cap, needed): at most cap bytes
 * including the terminator are written and *needed receives the full size
 * including the terminator. buf may be NULL when cap is 0. */

/* ---- thresholds ---- */
KFREE_API kfree_status kfree_theta(int r, double* out);
KFREE_API kfree_status kfree_threshold_edges(double n, int r, double* out);
KFREE_API kfree_status kfree_threshold_density(double n, int r, double* out);
KFREE_API kfree_status kfree_odd_cycle_threshold(double n, int ell,
                                                 double* out);

/* ---- graphs ---- */
typedef struct kfree_graph kfree_graph;

/* Literal "n;u-v,u-v,..." with 1-based vertices. */
KFREE_API kfree_status kfree_graph_parse(const char* literal,
                                         kfree_graph** out);
KFREE_API kfree_status kfree_graph_turan(int n, int r, kfree_graph** out);
KFREE_API void kfree_graph_free(kfree_graph* graph);
KFREE_API int kfree_graph_n(const kfree_graph* graph);
KFREE_API int kfree_graph_edge_count(const kfree_graph* graph);
KFREE_API kfree_status kfree_graph_literal(const kfree_graph* graph, char* buf,
                                           size_t cap, size_t* needed);
KFREE_API kfree_status kfree_graph_contains_clique(const kfree_graph* graph,
                                                   int k, int* out);
KFREE_API kfree_status kfree_graph_count_cliques(const kfree_graph* graph,
                                                 int k, uint64_t* out);
/* *colorable = 1 and colors[0..n-1] filled with the least witness, or 0. */
KFREE_API kfree_status kfree_graph_r_coloring(const kfree_graph* graph, int r,
                                              int* colorable, int* colors);
KFREE_API kfree_status kfree_graph_min_miscolored(const kfree_graph* graph,
                                                  int r, int* miscolored,
                                                  int* colors);

/* ---- Turan quantities ---- */
KFREE_API kfree_status kfree_ex_turan(int n, int k, int64_t* out);
KFREE_API kfree_status kfree_ex_multipartite(const int* sizes, int r,
                                             int64_t* out);
/* exhaustive != 0 selects the plain exhaustive search. */
KFREE_API kfree_status kfree_brute_force_ex(const int* sizes, int r, int k,
                                            int exhaustive, int* out);

/* ---- census ---- */
typedef struct kfree_census kfree_census;

typedef struct kfree_census_row {
  int m;
  uint64_t free_count;
  uint64_t free_and_rcol;
  uint64_t rcol_count;
  uint64_t unique_rcol_count;
} kfree_census_row;

/* shards >= 1; jobs = 0 uses every hardware thread. */
KFREE_API kfree_status kfree_census_run(int n, int r, int shards, int jobs,
                                        kfree_census** out);
KFREE_API kfree_status kfree_census_load(const char* path, kfree_census** out);
KFREE_API kfree_status kfree_census_save(const kfree_census* census,
                                         const char* path);
KFREE_API void kfree_census_free(kfree_census* census);
KFREE_API int kfree_census_n(const kfree_census* census);
KFREE_API int kfree_census_r(const kfree_census* census);
KFREE_API kfree_status kfree_census_get_row(const kfree_census* census, int m,
                                            kfree_census_row* out);
/* Decimal pair sum of row m. */
KFREE_API kfree_status kfree_census_pair_sum(const kfree_census* census, int m,
                                             char* buf, size_t cap,
                                             size_t* needed);
KFREE_API kfree_status kfree_census_fraction(const kfree_census* census, int m,
                                             int64_t* numerator,
                                             int64_t* denominator);
/* Decimal sum of C(e(P), m) over partitions P; has_gamma = 0 ignores gamma. */
KFREE_API kfree_status kfree_pair_sum(int n, int r, int m, int has_gamma,
                                      double gamma, char* buf, size_t cap,
                                      size_t* needed);

/* ---- sampler ---- */
typedef struct kfree_chain_config {
  int n;
  int r;
  int m;
  uint64_t seed;
  int64_t burn_in;
  int64_t thin;
  int chains;
  int jobs;
} kfree_chain_config;

typedef struct kfree_estimate {
  double estimate;
  double stderr_value;
  double acceptance_rate;
  int64_t samples;
  int caveat;
} kfree_estimate;

typedef struct kfree_chain kfree_chain;

KFREE_API kfree_status kfree_chain_init(const kfree_chain_config* config,
                                        int replica, kfree_chain** out);
KFREE_API void kfree_chain_free(kfree_chain* chain);
KFREE_API kfree_status kfree_chain_step(kfree_chain* chain, int64_t steps);
KFREE_API kfree_status kfree_chain_stats(const kfree_chain* chain,
                                         uint64_t* steps, uint64_t* accepted);
/* Copy of the current graph; release with kfree_graph_free. */
KFREE_API kfree_status kfree_chain_graph(const kfree_chain* chain,
                                         kfree_graph** out);

/* dump_path may be NULL; otherwise sample lines are written there. */
KFREE_API kfree_status kfree_estimate_rpartite(const kfree_chain_config* config,
                                               int64_t steps,
                                               const char* dump_path,
                                               kfree_estimate* out);
/* refined != 0 adds the maximum degree to the compared statistic. */
KFREE_API kfree_status kfree_tv_diagnostic(const kfree_chain_config* config,
                                           int64_t steps, int refined,
                                           double* tv, double* stderr_value);

/* ---- bounds ---- */
typedef struct kfree_family kfree_family;

KFREE_API kfree_status kfree_family_from_json(const char* json,
                                              kfree_family** out);
KFREE_API kfree_status kfree_family_to_json(const kfree_family* family,
                                            char* buf, size_t cap,
                                            size_t* needed);
/* missing holds count 0-based vertex pairs (u0,v0,u1,v1,...). */
KFREE_API kfree_status kfree_family_krminus(int n, int r, const int* class_of,
                                            const int* missing, size_t count,
                                            kfree_family** out);
/* tuples holds count rows of r vertices. */
KFREE_API kfree_status kfree_family_kr(int n, int r, const int* class_of,
                                       const int* tuples, size_t count,
                                       kfree_family** out);
KFREE_API void kfree_family_free(kfree_family* family);
KFREE_API kfree_status kfree_family_shape(const kfree_family* family,
                                          int* ground_size, size_t* sets);

KFREE_API kfree_status kfree_mu_delta(const kfree_family* family, int m,
                                      double* mu, double* delta, double* p);
/* raw != 0 skips the clamp to [0,1]. */
KFREE_API kfree_status kfree_janson_upper(double mu, double delta, int raw,
                                          double* out);
KFREE_API kfree_status kfree_fkg_lower(const kfree_family* family, int m,
                                       double eta, int raw, double* out);
KFREE_API kfree_status kfree_avoidance_exact(const kfree_family* family,
                                             int m, int64_t* numerator,
                                             int64_t* denominator);
/* u_edges holds count 0-based monochromatic pairs; max_degree < 0 uses the
 * maximum degree of U. */
KFREE_API kfree_status kfree_mu_delta_closed_form(
    int n, int r, const int* class_of, const int* u_edges, size_t count,
    double p, int max_degree, double* mu_lower, double* delta_upper,
    double* delta_coarse);

typedef struct kfree_dsets_bound {
  double bound;
  double raw;
  double tau;
  double density_cap;
} kfree_dsets_bound;

KFREE_API kfree_status kfree_dsets_tail_bound(int k, double alpha,
                                              double lambda,
                                              const int* class_sizes, int d,
                                              kfree_dsets_bound* out);
KFREE_API kfree_status kfree_hypergeom_hoeffding(double alpha, double lambda,
                                                 int d, double* out);
KFREE_API kfree_status kfree_hypergeom_tail_exact(int n, int d, double alpha,
                                                  double lambda, double* out);
/* lists holds vertices * r * dstar class-local indices; useful and gains
 * receive one entry per vertex. */
KFREE_API kfree_status kfree_regularize(int r, const int* class_sizes,
                                        int dstar, double c2, double lambda,
                                        double alpha, const int* lists,
                                        size_t vertices, size_t* tuple_count,
                                        int* useful, int64_t* gains);
KFREE_API kfree_status kfree_binom_ratio_bounds(int64_t a, int64_t b,
                                                int64_t c, double* lower,
                                                double* upper);
KFREE_API kfree_status kfree_heuristic_probe(int64_t n, int r, double m,
                                             double* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* KFREE_KFREE_H_ */
