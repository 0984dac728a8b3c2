/* C interface to the sorption-coagulation solver.
 *
 * All functions return an sc_status. On failure the message, error kind and
 * (for numerical failures) the step index are available from the
 * sc_last_error* accessors of the calling thread until the next call.
 */
#ifndef SORPCOAG_SORPCOAG_H
#define SORPCOAG_SORPCOAG_H

#include <stddef.h>
#include <stdint.h>

#if defined(SORPCOAG_BUILDING_LIBRARY)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_CONFIG_ERROR = 1,    /* invalid configuration, model or input data */
  SC_NUMERICAL_ERROR = 2, /* non-finite values or negativity during a step */
  SC_IO_ERROR = 3,
  SC_INVALID_ARGUMENT = 4, /* null pointer, short buffer */
  SC_INTERNAL_ERROR = 5
} sc_status;

typedef struct sc_simulation sc_simulation;

typedef struct sc_stability {
  double M_in;
  double U_T;
  double K_rate;
  double K_kernel;
  double V_sup;
  double speed_sup;
  double dt;
  double dt_max_transport; /* +inf when unconstrained */
  double dt_max_coag;      /* +inf when unconstrained */
  double dt_max;
  int transport_ok;
  int coag_ok;
} sc_stability;

typedef struct sc_record {
  int64_t n;
  double t;
  double u;
  double M0;
  double M1;
  double Mrp;
  double rho;
  double drift;
  int64_t clamp_count;
} sc_record;

typedef struct sc_run_options {
  int deterministic;       /* nonzero: single-threaded coagulation sums */
  int64_t snapshot_stride; /* < 0: use the config */
} sc_run_options;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);

SC_API const char* sc_last_error(void);
/* "config", "cfl", "numerical", "io", ... or "" when the last call succeeded. */
SC_API const char* sc_last_error_kind(void);
/* Step of the last numerical failure, -1 when not applicable. */
SC_API int64_t sc_last_error_step(void);

SC_API sc_status sc_simulation_load(const char* config_path, sc_simulation** out);
/* base_dir resolves relative paths inside the text; may be NULL. */
SC_API sc_status sc_simulation_load_string(const char* config_text, const char* base_dir,
                                           sc_simulation** out);
SC_API void sc_simulation_free(sc_simulation* sim);

SC_API sc_status sc_simulation_stability(const sc_simulation* sim, sc_stability* out);
/* Human-readable report. Writes at most cap bytes including the terminator;
 * *needed receives the full length plus one. */
SC_API sc_status sc_simulation_format_stability(const sc_simulation* sim, char* buf, size_t cap,
                                                size_t* needed);
/* SC_CONFIG_ERROR with both bounds in the message when the gate fails. */
SC_API sc_status sc_simulation_check_stable(const sc_simulation* sim);

SC_API sc_status sc_simulation_grid(const sc_simulation* sim, int* J, int* I, double* dp,
                                    double* dr);
SC_API sc_status sc_simulation_time(const sc_simulation* sim, double* T, int64_t* N, double* dt);
SC_API const char* sc_simulation_output_dir(const sc_simulation* sim);

/* Full run from the initial state, writing outputs into out_dir
 * (NULL: the directory named in the config). */
SC_API sc_status sc_simulation_run(sc_simulation* sim, const char* out_dir,
                                   const sc_run_options* options);
/* Advances up to n steps of the configured run without writing files. */
SC_API sc_status sc_simulation_step(sc_simulation* sim, int64_t n);
SC_API sc_status sc_simulation_diagnostics(const sc_simulation* sim, sc_record* out);
/* Copies f_{j,i} in j-major order; count must be (J+1)(I+1). */
SC_API sc_status sc_simulation_copy_field(const sc_simulation* sim, double* buf, size_t count);

/* Nullcline r(p_j) at ion concentration u; path NULL writes to stdout. */
SC_API sc_status sc_simulation_write_curve(const sc_simulation* sim, double u, const char* path);
SC_API sc_status sc_simulation_write_effective_config(const sc_simulation* sim, const char* path);

#ifdef __cplusplus
}
#endif

#endif
