/*
 * C interface to the conservative shallow-water wave solver.
 *
 * The simulator is driven through an opaque handle: create it from a
 * parameter block, advance it one output interval at a time, and read the
 * current snapshot (label-space arrays, transported fields on the output
 * grid, measure atoms, diagnostics) through the accessors.  All functions
 * returning m2ch_status report failure through the code; a human-readable
 * message for the most recent failure on a handle is kept in the handle.
 */

#ifndef M2CH_H
#define M2CH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum m2ch_status {
  M2CH_OK = 0,
  M2CH_ERR_INVALID_ARGUMENT = 1,
  M2CH_ERR_DOMAIN = 2,
  M2CH_ERR_NUMERICAL = 3,
  M2CH_ERR_IO = 4,
  M2CH_ERR_UNKNOWN = 5
} m2ch_status;

typedef enum m2ch_scenario_kind {
  M2CH_SCENARIO_ZERO = 0,
  M2CH_SCENARIO_PEAKON = 1,
  M2CH_SCENARIO_PEAKON_ANTIPEAKON = 2,
  M2CH_SCENARIO_GAUSSIAN = 3,
  M2CH_SCENARIO_ATOM = 4,
  M2CH_SCENARIO_CUSTOM = 5
} m2ch_scenario_kind;

/* Custom initial data: sampled fields on a uniform x-grid plus optional
 * point masses.  gamma_x and u_x may be NULL (centered differences are used
 * where a derivative is needed).  Arrays are copied at creation time. */
typedef struct m2ch_custom_data {
  double x_min, x_max;
  size_t m;
  const double* u;
  const double* gamma;
  const double* gamma_x;  /* optional */
  const double* u_x;      /* optional */
  const double* density;  /* optional; rebuilt from the fields when NULL */
  const double* atom_locations;
  const double* atom_masses;
  size_t atom_count;
} m2ch_custom_data;

typedef struct m2ch_params {
  m2ch_scenario_kind scenario;
  /* peakon / peakon pair */
  double c;
  double a;
  double center;
  /* gaussian */
  double amp_u;
  double amp_gamma;
  double width;
  /* atom */
  double mass;
  double location;
  /* custom data; only read when scenario == M2CH_SCENARIO_CUSTOM */
  const m2ch_custom_data* custom;

  /* label grid; n == 0 selects the defaults (domain sized from the data) */
  double xi_min, xi_max;
  size_t n;
  /* time stepping */
  double dt, t_end;
  size_t output_every;
  /* output grid */
  double x_min, x_max;
  size_t m;
  /* tolerances */
  double constraint_tol;
  double energy_tol;
  /* nonzero: continue each output interval from the canonical
   * representative (the projected semigroup); keeps long peaked runs
   * resolved, leaves interpolation-level constraint residuals */
  int reparametrize;
} m2ch_params;

/* Fills a parameter block with the documented defaults (single peakon,
 * n = 4096, dt = 1e-3, output grid [-20, 20] with 2001 samples). */
m2ch_status m2ch_params_init(m2ch_params* p);

typedef struct m2ch_sim m2ch_sim;

/* Creates a simulator positioned at t = 0.  On failure returns NULL and
 * writes a message into errbuf (when provided). */
m2ch_sim* m2ch_sim_create(const m2ch_params* p, char* errbuf, size_t errbuf_len);
void m2ch_sim_destroy(m2ch_sim* sim);

const char* m2ch_sim_last_error(const m2ch_sim* sim);

double m2ch_sim_time(const m2ch_sim* sim);
int m2ch_sim_done(const m2ch_sim* sim);
size_t m2ch_sim_label_count(const m2ch_sim* sim);   /* label-grid samples  */
size_t m2ch_sim_output_count(const m2ch_sim* sim);  /* output-grid samples */

/* Advances by one output interval (output_every steps, clipped to t_end). */
m2ch_status m2ch_sim_advance(m2ch_sim* sim);

typedef enum m2ch_label_field {
  M2CH_LABEL_XI = 0,
  M2CH_LABEL_Y = 1,
  M2CH_LABEL_U = 2,
  M2CH_LABEL_GAMMA = 3,
  M2CH_LABEL_R = 4,
  M2CH_LABEL_H = 5,
  M2CH_LABEL_NU = 6,
  M2CH_LABEL_BETA = 7,
  M2CH_LABEL_KAPPA = 8,
  M2CH_LABEL_DELTA = 9
} m2ch_label_field;

typedef enum m2ch_output_field {
  M2CH_OUTPUT_X = 0,
  M2CH_OUTPUT_U = 1,
  M2CH_OUTPUT_GAMMA = 2,
  M2CH_OUTPUT_MU_DENSITY = 3
} m2ch_output_field;

/* Copies the requested field of the current snapshot into out (capacity
 * in elements). */
m2ch_status m2ch_sim_label_data(const m2ch_sim* sim, m2ch_label_field f,
                                double* out, size_t capacity);
m2ch_status m2ch_sim_output_data(const m2ch_sim* sim, m2ch_output_field f,
                                 double* out, size_t capacity);

m2ch_status m2ch_sim_atom_count(const m2ch_sim* sim, size_t* count);
m2ch_status m2ch_sim_atoms(const m2ch_sim* sim, double* locations, double* masses,
                           size_t capacity);

typedef struct m2ch_diagnostics {
  double t;
  double total_energy;   /* H at the right end of the label grid */
  double mu_total;       /* output measure of the line, atoms included */
  double min_nu;
  double res_slope;      /* max |R nu - kappa| */
  double res_energy;     /* max |nu delta - nu^2 (U^2+G^2+R^2) - beta^2| */
  int breaking;          /* breaking event since the previous snapshot */
} m2ch_diagnostics;

m2ch_status m2ch_sim_diagnostics(const m2ch_sim* sim, m2ch_diagnostics* out);

typedef struct m2ch_constraint_report {
  double min_nu;
  double min_delta;
  double res_slope;
  double res_energy;
  double h_at_left;
  int h_nondecreasing;
  int pass;
} m2ch_constraint_report;

/* Invariant-set membership check on raw state arrays (all length n). */
m2ch_status m2ch_check_state(const double* xi, const double* y, const double* u,
                             const double* gamma, const double* r, const double* h,
                             const double* nu, const double* beta, const double* kappa,
                             const double* delta, size_t n, double tol,
                             m2ch_constraint_report* out);

typedef struct m2ch_metric_row {
  double t;
  double distance;   /* certified upper bound */
  double ratio;      /* distance / initial distance; 0 when start is 0 */
  int zero_start;
} m2ch_metric_row;

/* Evolves the two parameter blocks' initial data side by side (grid and
 * time settings from `a`) and reports the relabeling-invariant distance
 * upper bound at every output time.  rows_capacity elements are available
 * at rows; the number written is stored in rows_written. */
m2ch_status m2ch_metric_experiment(const m2ch_params* a, const m2ch_params* b,
                                   double energy_bound, m2ch_metric_row* rows,
                                   size_t rows_capacity, size_t* rows_written,
                                   char* errbuf, size_t errbuf_len);

const char* m2ch_version(void);
const char* m2ch_status_name(m2ch_status s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* M2CH_H */
