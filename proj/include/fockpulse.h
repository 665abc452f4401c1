/*
 * fockpulse -- simulator for deterministic multi-photon Fock-state generation
 * from a single Zeeman-structured atom in a driven optical cavity.
 *
 * C API over the C++ core: opaque handles, integer status codes, and a
 * thread-local message for the last failing call. Run configurations are
 * JSON documents (see README.md for the schema).
 */
#ifndef FOCKPULSE_H
#define FOCKPULSE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
    FP_OK = 0,
    FP_ERR_CONFIG = 2,   /* bad configuration / malformed request */
    FP_ERR_NUMERIC = 3,  /* integrator or quadrature failure */
    FP_ERR_IO = 4,       /* unreadable input or unwritable output path */
    FP_ERR_DOMAIN = 5,   /* malformed quantum numbers */
    FP_ERR_ARG = 6       /* null pointer or out-of-range argument */
} fp_status;

const char* fp_version(void);

/* Message for the most recent failing call on this thread. */
const char* fp_last_error(void);

/*
 * Wigner symbols. Angular momenta are passed as twice their value so
 * half-integers stay exact (j = 3/2 -> two_j = 3). is_exact_zero is set
 * when a selection rule forces the symbol to vanish.
 */
fp_status fp_wigner_3j(int two_j1, int two_j2, int two_j3,
                       int two_m1, int two_m2, int two_m3,
                       double* value, int* is_exact_zero);
fp_status fp_wigner_6j(int two_j1, int two_j2, int two_j3,
                       int two_j4, int two_j5, int two_j6,
                       double* value, int* is_exact_zero);

/* An executed run (simulate, train or analytic). */
typedef struct fp_run fp_run;

fp_status fp_run_simulate(const char* config_json, fp_run** out_run);
fp_status fp_run_train(const char* config_json, int n_cycles, fp_run** out_run);
/* Accepts a full run config or {"F":..., "theta_max":..., "points":...}. */
fp_status fp_run_analytic(const char* request_json, fp_run** out_run);
void fp_run_free(fp_run* run);

size_t fp_run_sample_count(const fp_run* run);
size_t fp_run_level_count(const fp_run* run);   /* 2F + 1 */
size_t fp_run_pulse_count(const fp_run* run);

/* Array accessors copy sample_count values into caller storage. */
fp_status fp_run_times(const fp_run* run, double* out, size_t capacity);
fp_status fp_run_flux(const fp_run* run, double* out, size_t capacity);
fp_status fp_run_photon_number(const fp_run* run, double* out, size_t capacity);
/* Population of the ground sublevel with projection m (as 2m). */
fp_status fp_run_population(const fp_run* run, int two_m_f, double* out, size_t capacity);
/* Photons attributed to each pulse window (pulse_count values). */
fp_status fp_run_per_pulse_counts(const fp_run* run, double* out, size_t capacity);

/* Owned by the handle; valid until fp_run_free. */
const char* fp_run_summary_json(const fp_run* run);

/* Writers; the CSV schema depends on the run kind. */
fp_status fp_run_write_csv(const fp_run* run, const char* path);
fp_status fp_run_write_per_cycle_csv(const fp_run* run, const char* path);
fp_status fp_run_write_summary_json(const fp_run* run, const char* path);
fp_status fp_run_write_svg(const fp_run* run, const char* path);

/*
 * Coupling-coefficient table (pump, cavity, decay, effective rates) for the
 * configured atom; polarization is "sigma_plus" or "sigma_minus".
 */
fp_status fp_write_coeffs_csv(const char* config_json, const char* polarization,
                              const char* path);

/*
 * One simulation per value of a swept parameter (dot path into the config,
 * e.g. "params.omega1"). Rows are written in grid order. threads = 0 picks
 * hardware concurrency; the FOCKPULSE_THREADS environment variable caps it.
 */
fp_status fp_run_sweep_csv(const char* config_json, const char* param_path,
                           const double* values, size_t n_values, int threads,
                           const char* out_csv_path);

#ifdef __cplusplus
}
#endif

#endif /* FOCKPULSE_H */
