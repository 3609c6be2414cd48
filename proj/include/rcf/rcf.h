/*
 * rcf: persistent homology of random clique complex filtrations.
 *
 * C interface over opaque handles. Every function that can fail returns an
 * rcf_status; on failure rcf_last_error() describes the problem for the
 * calling thread until its next rcf_* call. Vertices are 1-based here, as in
 * every file format.
 */
#ifndef RCF_RCF_H
#define RCF_RCF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RCF_BUILDING_LIBRARY)
#    define RCF_API __declspec(dllexport)
#  else
#    define RCF_API __declspec(dllimport)
#  endif
#else
#  define RCF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rcf_status {
  RCF_OK = 0,
  RCF_ERR_INVALID_PARAMETER = 1,
  RCF_ERR_CAP_INSUFFICIENT = 2,
  RCF_ERR_EMPTY_HISTOGRAM = 3,
  RCF_ERR_IO = 4,
  RCF_ERR_PARSE = 5,
  RCF_ERR_INTERNAL = 99
} rcf_status;

typedef enum rcf_death_kind {
  RCF_DEATH_FINITE = 0,
  RCF_DEATH_ESSENTIAL = 1,
  RCF_DEATH_AT_CAP = 2
} rcf_death_kind;

typedef struct rcf_filtration rcf_filtration;
typedef struct rcf_diagram rcf_diagram;

RCF_API const char* rcf_version(void);
RCF_API const char* rcf_last_error(void);
/* Short machine-readable name of a status, e.g. "invalid-parameter". */
RCF_API const char* rcf_status_name(rcf_status status);
/* Frees strings returned through char** out-parameters. */
RCF_API void rcf_string_free(char* text);

/* ---- edge filtrations ---- */

RCF_API rcf_status rcf_filtration_sample(uint32_t n, uint64_t master_seed, uint64_t sample_index,
                                         rcf_filtration** out);
/* weights: the n(n-1)/2 pairs (u, v), u < v, in lexicographic order. */
RCF_API rcf_status rcf_filtration_from_weights(uint32_t n, const double* weights, size_t count,
                                               rcf_filtration** out);
RCF_API rcf_status rcf_filtration_load_csv(const char* path, rcf_filtration** out);
RCF_API rcf_status rcf_filtration_save_csv(const rcf_filtration* f, const char* path);
RCF_API uint32_t rcf_filtration_n(const rcf_filtration* f);
RCF_API rcf_status rcf_filtration_weight(const rcf_filtration* f, uint32_t u, uint32_t v, double* out);
RCF_API void rcf_filtration_free(rcf_filtration* f);

/* Writes the clique filtration (dimension <= max_dim, value <= w_cap) as text,
 * one `value v0 ... vd` line per simplex in filtration order. */
RCF_API rcf_status rcf_export_flag_filtration(const rcf_filtration* f, uint32_t max_dim, double w_cap,
                                              const char* path);

/* ---- persistence ---- */

/* Diagram of degrees 0..k_max for the cliques of value <= w_cap. */
RCF_API rcf_status rcf_compute_persistence(const rcf_filtration* f, uint32_t k_max, double w_cap,
                                           uint32_t characteristic, rcf_diagram** out);
/* Same, with the automatic weight cap: start at the vanishing threshold for
 * degree k_max and grow by `escalation` until degrees 1..k_max have no class
 * alive at the cap. cap_used/retries may be NULL. Fails with
 * RCF_ERR_CAP_INSUFFICIENT when max_retries is exhausted. */
RCF_API rcf_status rcf_compute_persistence_auto(const rcf_filtration* f, uint32_t k_max, uint32_t characteristic,
                                                double initial_eps, double escalation, uint32_t max_retries,
                                                rcf_diagram** out, double* cap_used, uint32_t* retries);
/* Textbook reduction, for verification on small inputs. */
RCF_API rcf_status rcf_compute_persistence_naive(const rcf_filtration* f, uint32_t k_max, double w_cap,
                                                 uint32_t characteristic, rcf_diagram** out);
RCF_API uint32_t rcf_diagram_k_max(const rcf_diagram* d);
RCF_API double rcf_diagram_cap(const rcf_diagram* d);
RCF_API size_t rcf_diagram_pair_count(const rcf_diagram* d, uint32_t k);
RCF_API rcf_status rcf_diagram_pair(const rcf_diagram* d, uint32_t k, size_t i, double* birth, double* death,
                                    rcf_death_kind* kind);
RCF_API rcf_status rcf_diagram_save_csv(const rcf_diagram* d, const char* path);
RCF_API void rcf_diagram_free(rcf_diagram* d);

RCF_API rcf_status rcf_betti_at(const rcf_diagram* d, uint32_t k, double t, uint64_t* out);
RCF_API rcf_status rcf_rank_invariant(const rcf_diagram* d, uint32_t k, double p1, double p2, uint64_t* out);

typedef struct rcf_max_persistence_result {
  int defined; /* 0 when the degree-k diagram is empty */
  double max_ratio;
  double normalized; /* log(M_k) / log(n) */
  double ratio_to_scale; /* M_k / f_k(n) */
  double birth;
  double death;
} rcf_max_persistence_result;

RCF_API rcf_status rcf_max_persistence(const rcf_diagram* d, uint32_t k, rcf_max_persistence_result* out);

/* ---- closed forms ---- */

RCF_API rcf_status rcf_f_k(uint32_t n, uint32_t k, double* out);
RCF_API rcf_status rcf_adaptive_cap(uint32_t n, uint32_t k, double eps, double* out);
RCF_API rcf_status rcf_thresholds(uint32_t n, uint32_t k, double eps, double* birth_scale, double* death_scale);
RCF_API rcf_status rcf_expected_betti(uint32_t n, uint32_t k, double p, double* out);
RCF_API rcf_status rcf_expected_special_cycles(uint32_t n, uint32_t k, double p1, double p2, double* out);

/* ---- special persistent cycles ---- */

RCF_API rcf_status rcf_count_special_cycles(const rcf_filtration* f, uint32_t k, double p1, double p2,
                                            uint64_t* out);
RCF_API rcf_status rcf_count_special_cycles_brute_force(const rcf_filtration* f, uint32_t k, double p1, double p2,
                                                        uint64_t* out);
/* *passed = 1 unless a special cycle exists without a class alive from p1
 * through p2 in the diagram; *report receives a text description. */
RCF_API rcf_status rcf_witness_check(const rcf_filtration* f, uint32_t k, double p1, double p2,
                                     const rcf_diagram* d, int* passed, uint64_t* special_cycles, char** report);

/* ---- experiments ---- */

/* Parses and validates a JSON config and returns it with every default filled in. */
RCF_API rcf_status rcf_config_normalize(const char* config_json, char** normalized_json);
/* Runs the experiment, writes its files under the config's out_dir (when
 * non-empty), and returns the summary JSON. */
RCF_API rcf_status rcf_run_experiment(const char* config_json, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* RCF_RCF_H */
