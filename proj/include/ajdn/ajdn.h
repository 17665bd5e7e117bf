#ifndef AJDN_AJDN_H
#define AJDN_AJDN_H

/* Asynchronous jump detection: C interface.
 *
 * All objects are opaque handles created by ajdn_*_create / ajdn_*_read style
 * functions and released by the matching ajdn_*_free. Every fallible call
 * returns an ajdn_status; on failure ajdn_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are owned by the caller and released with
 * ajdn_string_free. Time indices are 1-based; dimensions are 0-based. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AJDN_BUILDING_LIBRARY)
#    define AJDN_API __declspec(dllexport)
#  else
#    define AJDN_API __declspec(dllimport)
#  endif
#else
#  define AJDN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ajdn_status {
    AJDN_OK = 0,
    AJDN_ERR_ARGUMENT = 1,   /* invalid argument or hyperparameter */
    AJDN_ERR_CONFIG = 2,     /* malformed or unknown configuration */
    AJDN_ERR_DATA = 3,       /* malformed input data */
    AJDN_ERR_DEGENERATE = 4, /* zero local variance and similar */
    AJDN_ERR_NUMERIC = 5,    /* numerical failure */
    AJDN_ERR_IO = 6,         /* file could not be read or written */
    AJDN_ERR_INTERNAL = 7
} ajdn_status;

typedef struct ajdn_panel ajdn_panel;
typedef struct ajdn_config ajdn_config;
typedef struct ajdn_result ajdn_result;
typedef struct ajdn_truth ajdn_truth;

typedef struct ajdn_jump {
    size_t dimension;
    size_t index;
    double time;
    double scale;
    double statistic;
    double critical_value;
    size_t iteration;
    int refined; /* nonzero when refined_index / refined_time are set */
    size_t refined_index;
    double refined_time;
} ajdn_jump;

typedef struct ajdn_params {
    double s_min;
    double s_max;
    double s_prime;
    size_t block;
    int delta_n;
    double alpha;
    size_t k0;
    uint64_t seed;
} ajdn_params;

typedef struct ajdn_evaluation {
    double m_bar;
    double m_hat_p;
    double mad;
    double margin;
    size_t runs;
    size_t runs_with_match;
    size_t runs_with_detection;
} ajdn_evaluation;

typedef void (*ajdn_warning_fn)(const char* message, void* user);

AJDN_API const char* ajdn_version(void);
AJDN_API const char* ajdn_last_error(void);
AJDN_API const char* ajdn_status_name(ajdn_status status);
AJDN_API void ajdn_string_free(char* s);
/* 0 restores the runtime default. */
AJDN_API void ajdn_set_threads(int threads);
/* NULL discards warnings. */
AJDN_API void ajdn_set_warning_callback(ajdn_warning_fn fn, void* user);

/* Panels: n times by p dimensions. */
AJDN_API ajdn_status ajdn_panel_create(size_t n, size_t p, const double* row_major, ajdn_panel** out);
AJDN_API ajdn_status ajdn_panel_read_csv(const char* path, ajdn_panel** out);
AJDN_API ajdn_status ajdn_panel_write_csv(const ajdn_panel* panel, const char* path);
AJDN_API size_t ajdn_panel_n(const ajdn_panel* panel);
AJDN_API size_t ajdn_panel_p(const ajdn_panel* panel);
AJDN_API ajdn_status ajdn_panel_get(const ajdn_panel* panel, size_t r, size_t i, double* value);
AJDN_API ajdn_status ajdn_panel_scale_dimension(const ajdn_panel* panel, size_t r, double factor, ajdn_panel** out);
/* Result dimension k is input dimension order[k]; order has p entries. */
AJDN_API ajdn_status ajdn_panel_permute(const ajdn_panel* panel, const size_t* order, ajdn_panel** out);
AJDN_API void ajdn_panel_free(ajdn_panel* panel);

/* Configuration: "section.key" = value, same keys as the configuration file. */
AJDN_API ajdn_status ajdn_config_create(ajdn_config** out);
AJDN_API ajdn_status ajdn_config_load(const char* path, ajdn_config** out);
AJDN_API ajdn_status ajdn_config_set(ajdn_config* config, const char* key, const char* value);
AJDN_API ajdn_status ajdn_config_write(const ajdn_config* config, const char* path);
AJDN_API void ajdn_config_free(ajdn_config* config);

/* Detection with automatic hyperparameters where unset, then refinement
 * unless refine.enabled = false. config may be NULL for all defaults. */
AJDN_API ajdn_status ajdn_detect(const ajdn_panel* panel, const ajdn_config* config, ajdn_result** out);
AJDN_API size_t ajdn_result_count(const ajdn_result* result);
AJDN_API ajdn_status ajdn_result_jump(const ajdn_result* result, size_t k, ajdn_jump* out);
AJDN_API ajdn_status ajdn_result_params(const ajdn_result* result, ajdn_params* out);
AJDN_API ajdn_status ajdn_result_jumps_json(const ajdn_result* result, char** out);
AJDN_API ajdn_status ajdn_result_write_jumps(const ajdn_result* result, const char* path);
AJDN_API ajdn_status ajdn_result_write_summary(const ajdn_result* result, const char* path);
/* Writes field_<r>.csv for every dimension into an existing directory. */
AJDN_API ajdn_status ajdn_result_write_field(const ajdn_result* result, const char* directory);
AJDN_API ajdn_status ajdn_result_write_variance(const ajdn_result* result, const char* path);
AJDN_API void ajdn_result_free(ajdn_result* result);

/* Simulation from the [simulate] section. */
AJDN_API ajdn_status ajdn_simulate(const ajdn_config* config, ajdn_panel** panel, ajdn_truth** truth);
AJDN_API ajdn_status ajdn_truth_read(const char* path, ajdn_truth** out);
AJDN_API ajdn_status ajdn_truth_write(const ajdn_truth* truth, const char* path);
AJDN_API size_t ajdn_truth_count(const ajdn_truth* truth);
AJDN_API void ajdn_truth_free(ajdn_truth* truth);

/* delta <= 0 takes Delta from the truth file; margin < 0 computes it. */
AJDN_API ajdn_status ajdn_evaluate_files(const char* jumps_path, const char* truth_path, double delta, double margin,
                                         ajdn_evaluation* out);
AJDN_API ajdn_status ajdn_evaluation_json(const ajdn_evaluation* evaluation, char** out);

/* Penalised-BIC selection over the [tune] grid. best receives a configuration
 * holding the selected hyperparameters; gm_table (optional) the per-candidate CSV. */
AJDN_API ajdn_status ajdn_tune(const ajdn_panel* panel, const ajdn_config* settings, const ajdn_config* grid,
                               ajdn_config** best, char** gm_table);

/* simulate -> detect -> evaluate loop from [simulate] and [bench]. */
AJDN_API ajdn_status ajdn_bench(const ajdn_config* config, char** table_csv, ajdn_evaluation* summary);

/* Filter validation report as JSON; ok receives 1 when every required check passes. */
AJDN_API ajdn_status ajdn_filter_check(int quadrature_points, char** report_json, int* ok);

#ifdef __cplusplus
}
#endif

#endif
