/*
 * C interface to the lmindep library: frequency-domain tests for non-correlation
 * between two stationary series with short memory, long memory or antipersistence.
 *
 * All objects are opaque handles owned by the caller and released with the matching
 * *_free function. Functions return LMI_OK on success; on failure the status names the
 * error category and lmi_last_error() returns a message for the calling thread.
 * Strings returned through char** out-parameters are released with lmi_string_free.
 */
#ifndef LMINDEP_H
#define LMINDEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LMI_API __declspec(dllexport)
#else
#define LMI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lmi_status {
    LMI_OK = 0,
    LMI_ERR_INVALID_INPUT = 1,
    LMI_ERR_CONFIGURATION = 2,
    LMI_ERR_DOMAIN = 3,
    LMI_ERR_SINGULAR_MODEL = 4,
    LMI_ERR_INVALID_DENSITY = 5,
    LMI_ERR_DEGENERATE_INPUT = 6,
    LMI_ERR_INVALID_SPEC = 7,
    LMI_ERR_PARSE = 8,
    LMI_ERR_IO = 9,
    LMI_ERR_NULL_ARGUMENT = 10,
    LMI_ERR_INTERNAL = 99
} lmi_status;

typedef enum lmi_header_mode { LMI_HEADER_AUTO = 0, LMI_HEADER_PRESENT = 1, LMI_HEADER_ABSENT = 2 } lmi_header_mode;

typedef struct lmi_series lmi_series;
typedef struct lmi_result lmi_result;
typedef struct lmi_table_run lmi_table_run;

LMI_API const char* lmi_version(void);
LMI_API const char* lmi_last_error(void);
LMI_API const char* lmi_status_name(lmi_status status);
LMI_API void lmi_string_free(char* s);

/* Series pairs ---------------------------------------------------------- */

LMI_API lmi_status lmi_series_from_arrays(const double* x1, const double* x2, size_t n, lmi_series** out);
LMI_API lmi_status lmi_series_read_csv(const char* path, lmi_header_mode header, lmi_series** out);
LMI_API size_t lmi_series_length(const lmi_series* s);
/* Copies up to `cap` values of column 1 or 2 into `dst`; returns the count copied. */
LMI_API size_t lmi_series_copy(const lmi_series* s, int column, double* dst, size_t cap);
/* Two-column CSV with header "x1,x2". */
LMI_API lmi_status lmi_series_to_csv(const lmi_series* s, char** out);
/* SHA-256 of the source file when read from disk, else of the CSV rendering. */
LMI_API lmi_status lmi_series_digest(const lmi_series* s, char** out);
LMI_API void lmi_series_free(lmi_series* s);

/* Independence test ----------------------------------------------------- */

typedef struct lmi_test_options {
    const char* kernel;      /* "bartlett" | "tukey" | "parzen" */
    double bw_exponent;      /* B_n = floor(3 n^bw_exponent) when bandwidth == 0 */
    size_t bandwidth;        /* explicit B_n, 0 to use bw_exponent */
    const char* statistic;   /* "far" (FAR(p,d) prewhitening) | "theta" (FARIMA(1,d,0) or FARIMA(0,d,1)) */
    int far_order;           /* p for both series; negative selects the default for n */
    const char* farima_variant; /* "ar1" | "ma1", used with statistic "theta" */
} lmi_test_options;

LMI_API void lmi_test_options_default(lmi_test_options* opts);
LMI_API lmi_status lmi_test_run(const lmi_series* s, const lmi_test_options* opts, lmi_result** out);

LMI_API double lmi_result_raw_T(const lmi_result* r);
LMI_API double lmi_result_standardized(const lmi_result* r);
LMI_API double lmi_result_p_value(const lmi_result* r);
LMI_API size_t lmi_result_bandwidth(const lmi_result* r);
LMI_API size_t lmi_result_n(const lmi_result* r);
/* JSON object: statistic, raw_T, standardized, p_value, n, kernel, bandwidth, fits, fits_converged. */
LMI_API lmi_status lmi_result_to_json(const lmi_result* r, char** out);
LMI_API void lmi_result_free(lmi_result* r);

/* Simulation ------------------------------------------------------------ */

typedef struct lmi_sim_options {
    const char* model;   /* "ar1" (fractional AR(1) pair) | "ma1" (fractional MA(1) pair) */
    size_t n;
    int alternative;     /* 0 = independent innovations, 1..3 = correlated alternatives */
    uint64_t seed;
    const char* dist;    /* "gauss" | "t5" */
} lmi_sim_options;

LMI_API void lmi_sim_options_default(lmi_sim_options* opts);
LMI_API lmi_status lmi_simulate(const lmi_sim_options* opts, lmi_series** out);

/* Monte Carlo tables ---------------------------------------------------- */

typedef struct lmi_replicate_options {
    int table;               /* 1 = size, 2..4 = size-adjusted power under alternatives 1..3 */
    size_t reps;
    size_t critval_reps;     /* null replications behind empirical critical values; 0 = reps */
    uint64_t seed;
    size_t threads;
    const char* models;      /* comma list of "ar1","ma1"; NULL or "" for both */
    const char* sizes;       /* comma list of sample sizes; NULL or "" for "64,128" */
    const char* kernels;     /* comma list; NULL or "" for all three */
    const char* statistics;  /* comma list of "theta","gamma","known"; NULL or "" for "theta,gamma" */
    const char* dist;        /* "gauss" | "t5" */
} lmi_replicate_options;

LMI_API void lmi_replicate_options_default(lmi_replicate_options* opts);
LMI_API lmi_status lmi_replicate(const lmi_replicate_options* opts, lmi_table_run** out);
/* Borrowed strings, valid until lmi_table_run_free. */
LMI_API const char* lmi_table_run_text(const lmi_table_run* t);
LMI_API const char* lmi_table_run_csv(const lmi_table_run* t);
LMI_API const char* lmi_table_run_manifest(const lmi_table_run* t);
LMI_API void lmi_table_run_free(lmi_table_run* t);

#ifdef __cplusplus
}
#endif

#endif /* LMINDEP_H */
