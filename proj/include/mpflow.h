/* mpflow — 2D micropolar fluid laboratory.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * thread-local error messages.  Every function returns MP_OK on success; on
 * failure mp_last_error() describes what went wrong.
 */
#ifndef MPFLOW_H
#define MPFLOW_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mp_status {
    MP_OK = 0,
    MP_ERR_INVALID_ARGUMENT = 1,
    MP_ERR_PARSE = 2,
    MP_ERR_VALIDATION = 3,
    MP_ERR_IO = 4,
    MP_ERR_DIVERGED = 5,
    MP_ERR_NUMERICAL = 6,
    MP_ERR_CHECKS_FAILED = 7, /* run completed but an enabled check failed */
    MP_ERR_INTERNAL = 8
} mp_status;

const char* mp_status_name(mp_status status);
/* Thread-local message for the most recent failure in this thread. */
const char* mp_last_error(void);
void mp_version(int* major, int* minor, int* patch);

/* ---- experiment configuration (opaque) ---- */

typedef struct mp_config mp_config;

mp_status mp_config_parse_file(const char* path, mp_config** out_config);
mp_status mp_config_parse_string(const char* text, mp_config** out_config);
void mp_config_free(mp_config* config);

/* Overrides applied after parsing (CLI flags). */
mp_status mp_config_set_seed(mp_config* config, uint64_t seed);
mp_status mp_config_set_threads(mp_config* config, int threads);
mp_status mp_config_set_strict(mp_config* config, int strict);

/* ---- campaign runners ----
 * Each writes its outputs plus manifest.json into out_dir.  checks_failed
 * (optional) receives the number of enabled checks that did not pass; when
 * any fail the return value is MP_ERR_CHECKS_FAILED.
 */
mp_status mp_run_simulate(const mp_config* config, const char* out_dir, int* checks_failed);
mp_status mp_run_decay_study(const mp_config* config, const char* out_dir, int* checks_failed);
mp_status mp_run_profile_error(const mp_config* config, const char* out_dir, int* checks_failed);
mp_status mp_run_compare_ns(const mp_config* config, const char* out_dir, int* checks_failed);
mp_status mp_run_linear_decay(const mp_config* config, const char* out_dir, int* checks_failed);
mp_status mp_run_symbol_verify(const mp_config* config, const char* out_dir, int* checks_failed);

/* ---- plotting ---- */

typedef struct mp_plot_options {
    const char* x_column;  /* NULL: "t" */
    const char* y_columns; /* comma-separated; NULL: all non-x columns */
    int log_x;
    int log_y;
    const char* title; /* may be NULL */
} mp_plot_options;

mp_status mp_plot_csv(const char* csv_path, const char* svg_path,
                      const mp_plot_options* options);

/* ---- direct evaluation of the linear symbol and related scalars ---- */

/* out_entries = {e11, e12, e21, e22} at R = |xi|^2 and time t. */
mp_status mp_symbol_eval(double mu, double chi, double gamma, double R, double t,
                         double out_entries[4]);
/* out = {R, alpha, beta, D, sqrtD, decay_slow, decay_fast}. */
mp_status mp_symbol_intermediates(double mu, double chi, double gamma, double R, double out[7]);
/* Matrix exponential oracle; out_entries as the 2x2 row-major matrix. */
mp_status mp_expm_oracle(double mu, double chi, double gamma, double R, double t,
                         double out_entries[4]);

/* Fourier-splitting damping rate delta(mu, chi). */
mp_status mp_delta_fs(double mu, double chi, double* out);
/* Enstrophy-identity coefficient a(mu, chi, gamma). */
mp_status mp_a_coeff(double mu, double chi, double gamma, double* out);
/* zeta_Gamma(t) decay envelope. */
mp_status mp_zeta(double t, double Gamma, double* out);

/* Continuum radial-quadrature squared L2 norms.
 * which: "u_L" | "h_L" | "profile-error-u" | "profile-error-h" | "heat-u"
 * data_kind: "velocity_only" | "micro_only" | "enhanced_pair"
 * phi: "algebraic" | "gaussian"
 */
mp_status mp_radial_norm_sq(double mu, double chi, double gamma, double Gamma, const char* phi,
                            const char* data_kind, double amplitude, const char* which, double t,
                            double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MPFLOW_H */
