#ifndef DRS_DRS_H
#define DRS_DRS_H

/* C interface to the random Dirichlet series library.
 *
 * Every function returns a drs_status; on failure drs_last_error() holds a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with drs_free_string. Handles are released
 * with their matching *_free function; freeing NULL is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRS_API __declspec(dllexport)
#else
#define DRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drs_status {
  DRS_OK = 0,
  DRS_ERR_DOMAIN = 1,
  DRS_ERR_CAPACITY = 2,
  DRS_ERR_DEGENERATE_FIT = 3,
  DRS_ERR_INVALID_VARIANT = 4,
  DRS_ERR_UNSUPPORTED = 5,
  DRS_ERR_IO = 6,
  DRS_ERR_INVALID_ARGUMENT = 7,
  DRS_ERR_INTERNAL = 8
} drs_status;

typedef enum drs_variant {
  DRS_VARIANT_ALL = 0,
  DRS_VARIANT_PRIMES = 1,
  DRS_VARIANT_LOG_PRODUCT = 2
} drs_variant;

typedef enum drs_class {
  DRS_CLASS_CONVERGES_AC_CANDIDATE = 0,
  DRS_CLASS_ATOMIC_SINGULAR = 1,
  DRS_CLASS_DIVERGES = 2
} drs_class;

typedef struct drs_params {
  double s;
  double beta;
  drs_variant variant;
} drs_params;

DRS_API const char* drs_version(void);
DRS_API const char* drs_last_error(void);
DRS_API const char* drs_status_name(drs_status status);
/* Nonzero for statuses caused by invalid input rather than by the run. */
DRS_API int drs_status_is_validation(drs_status status);
DRS_API void drs_free_string(char* str);

DRS_API drs_status drs_parse_variant(const char* name, drs_variant* out);
DRS_API drs_status drs_validate(const drs_params* params);
DRS_API drs_status drs_classify(const drs_params* params, drs_class* out);
DRS_API drs_status drs_tail_mean_bound(const drs_params* params, int64_t N, double* out);
DRS_API drs_status drs_log_gamma(double x, double* out);

/* Exact distribution of the truncated sum (N <= 25). */
typedef struct drs_exact_dist drs_exact_dist;

DRS_API drs_status drs_exact_enumerate(const drs_params* params, int64_t N,
                                       drs_exact_dist** out);
DRS_API void drs_exact_free(drs_exact_dist* dist);
DRS_API size_t drs_exact_size(const drs_exact_dist* dist);
DRS_API const double* drs_exact_values(const drs_exact_dist* dist);
DRS_API const double* drs_exact_probs(const drs_exact_dist* dist);
DRS_API drs_status drs_exact_moment(const drs_exact_dist* dist, int r, double* out);
DRS_API drs_status drs_exact_charfn(const drs_exact_dist* dist, double t, double* re,
                                    double* im);
DRS_API drs_status drs_exact_interval_prob(const drs_exact_dist* dist, double a, double b,
                                           double* out);
/* CSV with columns value,prob. */
DRS_API drs_status drs_exact_csv(const drs_exact_dist* dist, char** out);
DRS_API drs_status drs_exact_json(const drs_exact_dist* dist, char** out);

/* Monte Carlo samples of the truncated sum. */
typedef struct drs_sample_batch drs_sample_batch;

DRS_API drs_status drs_sample_series(const drs_params* params, int64_t N,
                                     int64_t n_samples, uint64_t seed, int threads,
                                     drs_sample_batch** out);
DRS_API void drs_sample_free(drs_sample_batch* batch);
DRS_API size_t drs_sample_size(const drs_sample_batch* batch);
DRS_API const double* drs_sample_values(const drs_sample_batch* batch);
/* Nonzero when s + beta <= 1, where the sums grow without bound in N. */
DRS_API int drs_sample_divergent(const drs_sample_batch* batch);
/* bin_width > 0 gives a histogram (bin_left,density); 0 gives raw values. */
DRS_API drs_status drs_sample_csv(const drs_sample_batch* batch, double bin_width, char** out);
DRS_API drs_status drs_sample_json(const drs_sample_batch* batch, double bin_width,
                                   char** out);

/* Characteristic function. */
typedef struct drs_profile drs_profile;

typedef struct drs_profile_point {
  double t;
  double modulus;
  double trunc_error;
  int64_t N_used;
} drs_profile_point;

DRS_API drs_status drs_modulus_sq_product(const drs_params* params, double t, int64_t N,
                                          double* value, double* trunc_error);
DRS_API drs_status drs_auto_truncation(const drs_params* params, double t, double tol,
                                       int64_t* out);
DRS_API drs_status drs_charfn_profile(const drs_params* params, double t_min, double t_max,
                                      int points_per_decade, double tol, int threads,
                                      drs_profile** out);
DRS_API void drs_profile_free(drs_profile* profile);
DRS_API size_t drs_profile_size(const drs_profile* profile);
DRS_API drs_status drs_profile_get(const drs_profile* profile, size_t i,
                                   drs_profile_point* out);
/* CSV with columns t,modulus,trunc_error,N_used. */
DRS_API drs_status drs_profile_csv(const drs_profile* profile, char** out);
DRS_API drs_status drs_profile_json(const drs_profile* profile, char** out);

DRS_API drs_status drs_decay_fit_json(const drs_params* params, double t_min, double t_max,
                                      int points_per_decade, double tol, int threads,
                                      char** out);
DRS_API drs_status drs_vdc_sweep_json(double s, const double* ts, size_t n_t, int k_max,
                                      const int* qs, size_t n_q, double c, int threads,
                                      char** json, char** csv);
DRS_API drs_status drs_sobolev_json(const drs_params* params, double gamma, double T,
                                    double tol, int threads, char** out);

/* Records. */
DRS_API drs_status drs_second_moment_product(int64_t n, double* out);
DRS_API drs_status drs_second_moment_gamma(int64_t n, double* out);
DRS_API double drs_limit_constant(void);
/* n = 0 reports the limit n = infinity. */
DRS_API drs_status drs_records_json(int64_t n, int64_t trials, uint64_t seed, int threads,
                                    char** out);

/* Primes. */
typedef struct drs_prime_table drs_prime_table;

DRS_API drs_status drs_sieve(int64_t limit, drs_prime_table** out);
DRS_API void drs_prime_table_free(drs_prime_table* table);
DRS_API drs_status drs_prime_count(const drs_prime_table* table, int64_t x, uint64_t* out);
DRS_API drs_status drs_mobius(const drs_prime_table* table, int64_t m, int* out);
DRS_API drs_status drs_mertens_ratio(const drs_prime_table* table, int64_t x, double* out);
DRS_API drs_status drs_mertens_json(int64_t limit, char** out);

typedef struct drs_singularity_config {
  double s;
  double epsilon;
  int64_t N;
  int64_t trials;
  uint64_t seed;
  int threads;
  int64_t truncation; /* 0 selects 100 N */
} drs_singularity_config;

DRS_API void drs_singularity_default(drs_singularity_config* config);
DRS_API drs_status drs_singularity_json(const drs_singularity_config* config, char** json,
                                        char** intervals_csv);
/* family: "power" (a_p = p^-s), "one" (a_p = 1) or "zero". */
DRS_API drs_status drs_ap_check_json(const char* family, double s, int64_t limit, char** out);

/* Density figure. */
typedef struct drs_figure1_config {
  int64_t N;
  int64_t samples;
  double bin_width;
  double beta;
  const double* s_values;
  size_t n_s;
  uint64_t seed;
  int threads;
} drs_figure1_config;

DRS_API void drs_figure1_default(drs_figure1_config* config);
/* Writes one CSV per s into out_dir; json receives a summary. */
DRS_API drs_status drs_figure1_run(const drs_figure1_config* config, const char* out_dir,
                                   char** json);

/* Acceptance suite. */
typedef struct drs_criterion_result {
  int id;
  int passed;
  double seconds;
  char name[64];
  char detail[1024];
} drs_criterion_result;

DRS_API int drs_criterion_count(void);
DRS_API drs_status drs_verify_criterion(int id, int threads, const char* work_dir,
                                        drs_criterion_result* out);

#ifdef __cplusplus
}
#endif

#endif
